"""Two-sample statistics: independent t-tests (pooled and Welch), the classic
variance-equality test with group-mean centering, five-number summaries, and
per-class score averages.

The distribution kernels are built here from the regularized incomplete beta
function (continued-fraction evaluation) rather than taken from a library, so
the test suite can check them against an independent reference
implementation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DataError

_BETA_EPS = 1e-15
_BETA_MAX_ITER = 500
_TINY = 1e-300


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta function (modified Lentz)."""
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _BETA_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _BETA_EPS:
            return h
    return h


def reg_inc_beta(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b), accurate to ~1e-14."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_bt = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    bt = math.exp(ln_bt)
    # Use the continued fraction on the side where it converges fast.
    if x < (a + 1.0) / (a + b + 2.0):
        return bt * _betacf(a, b, x) / a
    return 1.0 - bt * _betacf(b, a, 1.0 - x) / b


def student_t_cdf(x: float, df: float) -> float:
    if df <= 0:
        raise DataError("degrees of freedom must be positive")
    if math.isinf(x):
        return 1.0 if x > 0 else 0.0
    if x == 0.0:
        return 0.5
    tail = 0.5 * reg_inc_beta(df / 2.0, 0.5, df / (df + x * x))
    return 1.0 - tail if x > 0 else tail


def student_t_two_tailed_p(t: float, df: float) -> float:
    if math.isinf(t):
        return 0.0
    if t == 0.0:
        return 1.0
    return reg_inc_beta(df / 2.0, 0.5, df / (df + t * t))


def student_t_ppf(q: float, df: float) -> float:
    """Quantile of the t distribution by bisection on the CDF."""
    if not 0.0 < q < 1.0:
        raise DataError("quantile must be in (0, 1)")
    if q == 0.5:
        return 0.0
    if q < 0.5:
        return -student_t_ppf(1.0 - q, df)
    lo, hi = 0.0, 1.0
    while student_t_cdf(hi, df) < q:
        hi *= 2.0
        if hi > 1e12:
            break
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if student_t_cdf(mid, df) < q:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def f_sf(f_stat: float, d1: float, d2: float) -> float:
    """Upper tail of the F distribution."""
    if math.isinf(f_stat):
        return 0.0
    if f_stat <= 0.0:
        return 1.0
    return reg_inc_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f_stat))


def _mean(xs) -> float:
    return sum(xs) / len(xs)


def _sample_var(xs, mean: float) -> float:
    return sum((x - mean) ** 2 for x in xs) / (len(xs) - 1)


EQUAL_VAR = "equal_var"
WELCH = "welch"


@dataclass(frozen=True)
class TTestResult:
    t: float
    df: float
    p_two_tailed: float
    mean_diff: float
    se_diff: float
    ci95: tuple[float, float]
    variant: str

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "df": self.df,
            "p_two_tailed": self.p_two_tailed,
            "mean_diff": self.mean_diff,
            "se_diff": self.se_diff,
            "ci95": list(self.ci95),
            "variant": self.variant,
        }


def ttest(a, b, variant: str = EQUAL_VAR) -> TTestResult:
    """Independent two-sample t-test, pooled-variance or Welch."""
    a, b = list(map(float, a)), list(map(float, b))
    if len(a) < 2 or len(b) < 2:
        raise DataError("both samples need at least two observations")
    if any(not math.isfinite(x) for x in a + b):
        raise DataError("samples must be finite")
    if variant not in (EQUAL_VAR, WELCH):
        raise DataError(f"unknown t-test variant {variant!r}")
    na, nb = len(a), len(b)
    ma, mb = _mean(a), _mean(b)
    va, vb = _sample_var(a, ma), _sample_var(b, mb)
    mean_diff = ma - mb
    if variant == EQUAL_VAR:
        df = float(na + nb - 2)
        pooled = ((na - 1) * va + (nb - 1) * vb) / df
        se = math.sqrt(pooled * (1.0 / na + 1.0 / nb))
    else:
        se = math.sqrt(va / na + vb / nb)
        if va == 0.0 and vb == 0.0:
            df = float(na + nb - 2)
        else:
            df = (va / na + vb / nb) ** 2 / (
                (va / na) ** 2 / (na - 1) + (vb / nb) ** 2 / (nb - 1)
            )
    if se == 0.0:
        # Both samples constant: equal means give the defined (t=0, p=1)
        # result; unequal means are an infinitely significant difference.
        if mean_diff == 0.0:
            return TTestResult(0.0, df, 1.0, 0.0, 0.0, (0.0, 0.0), variant)
        t_stat = math.inf if mean_diff > 0 else -math.inf
        return TTestResult(t_stat, df, 0.0, mean_diff, 0.0, (mean_diff, mean_diff), variant)
    t_stat = mean_diff / se
    p = student_t_two_tailed_p(t_stat, df)
    t_crit = student_t_ppf(0.975, df)
    ci = (mean_diff - t_crit * se, mean_diff + t_crit * se)
    return TTestResult(t_stat, df, p, mean_diff, se, ci, variant)


def levene(a, b) -> tuple[float, float]:
    """Variance-equality statistic with group-mean centering, and its
    p-value from the F distribution.
    """
    a, b = list(map(float, a)), list(map(float, b))
    if len(a) < 2 or len(b) < 2:
        raise DataError("both samples need at least two observations")
    if any(not math.isfinite(x) for x in a + b):
        raise DataError("samples must be finite")
    za = [abs(x - _mean(a)) for x in a]
    zb = [abs(x - _mean(b)) for x in b]
    n, k = len(a) + len(b), 2
    mza, mzb = _mean(za), _mean(zb)
    mz = (sum(za) + sum(zb)) / n
    numerator = len(a) * (mza - mz) ** 2 + len(b) * (mzb - mz) ** 2
    denominator = sum((z - mza) ** 2 for z in za) + sum((z - mzb) ** 2 for z in zb)
    if denominator == 0.0:
        if numerator == 0.0:
            return 0.0, 1.0
        return math.inf, 0.0
    w = (n - k) / (k - 1) * numerator / denominator
    return w, f_sf(w, k - 1, n - k)


@dataclass(frozen=True)
class FiveNumber:
    min: float
    q1: float
    median: float
    q3: float
    max: float

    def as_dict(self) -> dict[str, float]:
        return {"min": self.min, "q1": self.q1, "median": self.median, "q3": self.q3, "max": self.max}


def _quantile(sorted_values, q: float) -> float:
    # Inclusive linear interpolation on order statistics.
    position = (len(sorted_values) - 1) * q
    lo = math.floor(position)
    hi = math.ceil(position)
    if lo == hi:
        return sorted_values[lo]
    frac = position - lo
    return sorted_values[lo] * (1.0 - frac) + sorted_values[hi] * frac


def five_number(values) -> FiveNumber:
    values = sorted(map(float, values))
    if not values:
        raise DataError("five-number summary of an empty sample")
    return FiveNumber(
        min=values[0],
        q1=_quantile(values, 0.25),
        median=_quantile(values, 0.5),
        q3=_quantile(values, 0.75),
        max=values[-1],
    )


def class_averages(scores) -> dict[str, dict[str, float]]:
    """Per-class means of importance, ambiguity, and spread power.

    `scores` is an iterable of (ClassLabel, SPRBreakdown). Note the mean of
    products differs from the product of means, so avg spr need not equal
    avg imp times avg amb.
    """
    buckets: dict[str, list] = {}
    for label, breakdown in scores:
        buckets.setdefault(label.name, []).append(breakdown)
    for name in ("FR", "TR"):
        if name not in buckets:
            raise DataError(f"class {name} has no scored documents")
    table = {}
    for name in ("FR", "TR"):
        group = buckets[name]
        table[name] = {
            "imp": _mean([b.imp for b in group]),
            "amb": _mean([b.amb for b in group]),
            "spr": _mean([b.spr for b in group]),
            "n": len(group),
        }
    return table
