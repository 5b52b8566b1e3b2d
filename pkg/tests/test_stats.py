import math

import numpy as np
import pytest
import scipy.stats
from hypothesis import given, settings
from hypothesis import strategies as st

from spr.corpus import ClassLabel
from spr.errors import DataError
from spr.scoring import SPRBreakdown
from spr.stats import (
    EQUAL_VAR,
    WELCH,
    FiveNumber,
    class_averages,
    f_sf,
    five_number,
    levene,
    reg_inc_beta,
    student_t_cdf,
    student_t_ppf,
    student_t_two_tailed_p,
    ttest,
)

samples = st.lists(st.floats(-100, 100), min_size=2, max_size=30)


class TestBetaKernel:
    def test_boundaries(self):
        assert reg_inc_beta(2.0, 3.0, 0.0) == 0.0
        assert reg_inc_beta(2.0, 3.0, 1.0) == 1.0

    def test_against_reference(self):
        rng = np.random.default_rng(8)
        for _ in range(200):
            a = float(rng.uniform(0.3, 50))
            b = float(rng.uniform(0.3, 50))
            x = float(rng.uniform(0, 1))
            assert reg_inc_beta(a, b, x) == pytest.approx(
                scipy.stats.beta.cdf(x, a, b), abs=1e-12
            )

    def test_t_cdf_symmetry(self):
        for df in (1, 2.5, 10, 100, 1233):
            for x in (0.0, 0.3, 1.7, 4.835, 25.0):
                total = student_t_cdf(x, df) + student_t_cdf(-x, df)
                assert total == pytest.approx(1.0, abs=1e-12)

    def test_t_cdf_at_zero(self):
        assert student_t_cdf(0.0, 7) == 0.5

    def test_reference_table_point(self):
        # two-sided p at the df=10 critical value 2.228 is 0.05
        assert student_t_two_tailed_p(2.228, 10) == pytest.approx(0.05, abs=5e-4)

    def test_t_cdf_against_reference(self):
        rng = np.random.default_rng(9)
        for _ in range(200):
            df = float(rng.uniform(1, 200))
            x = float(rng.normal(0, 3))
            assert student_t_cdf(x, df) == pytest.approx(
                scipy.stats.t.cdf(x, df), abs=1e-12
            )

    def test_ppf_inverts_cdf(self):
        for df in (3, 10, 47):
            for q in (0.6, 0.9, 0.975, 0.999):
                x = student_t_ppf(q, df)
                assert student_t_cdf(x, df) == pytest.approx(q, abs=1e-10)

    def test_f_sf_against_reference(self):
        rng = np.random.default_rng(10)
        for _ in range(200):
            d1 = float(rng.uniform(1, 30))
            d2 = float(rng.uniform(1, 300))
            f = float(rng.uniform(0, 20))
            assert f_sf(f, d1, d2) == pytest.approx(scipy.stats.f.sf(f, d1, d2), abs=1e-12)


class TestTTest:
    def test_identical_samples(self):
        result = ttest([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
        assert result.t == 0.0
        assert result.p_two_tailed == 1.0

    def test_constant_equal_samples(self):
        result = ttest([5.0, 5.0], [5.0, 5.0])
        assert (result.t, result.p_two_tailed) == (0.0, 1.0)

    def test_constant_unequal_samples(self):
        result = ttest([5.0, 5.0], [1.0, 1.0])
        assert math.isinf(result.t) and result.t > 0
        assert result.p_two_tailed == 0.0

    def test_equal_var_against_reference(self):
        a = [1.0, 2.0, 3.0, 4.0, 5.0]
        b = [2.0, 4.0, 6.0, 8.0, 10.0]
        mine = ttest(a, b, EQUAL_VAR)
        ref = scipy.stats.ttest_ind(a, b, equal_var=True)
        assert mine.t == pytest.approx(ref.statistic, abs=1e-9)
        assert mine.p_two_tailed == pytest.approx(ref.pvalue, abs=1e-9)
        assert mine.df == len(a) + len(b) - 2

    def test_welch_against_reference(self):
        rng = np.random.default_rng(11)
        a = rng.normal(0, 1, 12).tolist()
        b = rng.normal(0.5, 3, 25).tolist()
        mine = ttest(a, b, WELCH)
        ref = scipy.stats.ttest_ind(a, b, equal_var=False)
        assert mine.t == pytest.approx(ref.statistic, abs=1e-9)
        assert mine.p_two_tailed == pytest.approx(ref.pvalue, abs=1e-9)

    def test_random_pairs_against_reference(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            na, nb = rng.integers(2, 40, size=2)
            a = rng.normal(rng.uniform(-2, 2), rng.uniform(0.1, 4), na).tolist()
            b = rng.normal(rng.uniform(-2, 2), rng.uniform(0.1, 4), nb).tolist()
            for variant, equal_var in ((EQUAL_VAR, True), (WELCH, False)):
                mine = ttest(a, b, variant)
                ref = scipy.stats.ttest_ind(a, b, equal_var=equal_var)
                assert mine.t == pytest.approx(ref.statistic, abs=1e-9)
                assert mine.p_two_tailed == pytest.approx(ref.pvalue, abs=1e-9)

    def test_ci_contains_mean_diff(self):
        result = ttest([1.0, 2.0, 3.0], [4.0, 6.0, 8.0])
        lo, hi = result.ci95
        assert lo <= result.mean_diff <= hi

    def test_ci_against_reference(self):
        a = [1.2, 2.4, 3.1, 4.8, 5.5]
        b = [2.2, 3.9, 6.1, 8.4]
        mine = ttest(a, b, EQUAL_VAR)
        ref = scipy.stats.ttest_ind(a, b, equal_var=True).confidence_interval(0.95)
        assert mine.ci95[0] == pytest.approx(ref.low, abs=1e-9)
        assert mine.ci95[1] == pytest.approx(ref.high, abs=1e-9)

    def test_small_sample_rejected(self):
        with pytest.raises(DataError):
            ttest([1.0], [1.0, 2.0])

    @settings(max_examples=150, deadline=None)
    @given(samples, samples)
    def test_antisymmetry(self, a, b):
        ab = ttest(a, b)
        ba = ttest(b, a)
        assert ab.t == pytest.approx(-ba.t, abs=1e-10) or (math.isinf(ab.t) and math.isinf(ba.t))
        assert ab.p_two_tailed == pytest.approx(ba.p_two_tailed, abs=1e-10)
        assert ab.mean_diff == pytest.approx(-ba.mean_diff, abs=1e-10)

    @settings(max_examples=150, deadline=None)
    @given(samples, samples, st.floats(-50, 50), st.floats(0.1, 20))
    def test_shift_and_scale_invariance(self, a, b, shift, scale):
        base = ttest(a, b)
        moved = ttest([scale * x + shift for x in a], [scale * x + shift for x in b])
        if math.isfinite(base.t):
            assert moved.t == pytest.approx(base.t, abs=1e-6)
            assert moved.p_two_tailed == pytest.approx(base.p_two_tailed, abs=1e-6)


class TestLevene:
    def test_identical_samples(self):
        assert levene([1.0, 2.0, 3.0], [1.0, 2.0, 3.0]) == (0.0, 1.0)

    def test_heteroscedastic_pair_is_significant(self):
        rng = np.random.default_rng(13)
        a = (rng.normal(0, 0.5, 40)).tolist()
        b = (rng.normal(0, 5.0, 40)).tolist()
        w, p = levene(a, b)
        assert p < 0.05
        ref_w, ref_p = scipy.stats.levene(a, b, center="mean")
        assert w == pytest.approx(ref_w, abs=1e-9)
        assert p == pytest.approx(ref_p, abs=1e-9)

    def test_random_pairs_against_reference(self):
        rng = np.random.default_rng(14)
        for _ in range(50):
            na, nb = rng.integers(3, 30, size=2)
            a = rng.normal(0, rng.uniform(0.2, 3), na).tolist()
            b = rng.normal(1, rng.uniform(0.2, 3), nb).tolist()
            w, p = levene(a, b)
            ref_w, ref_p = scipy.stats.levene(a, b, center="mean")
            assert w == pytest.approx(ref_w, abs=1e-9)
            assert p == pytest.approx(ref_p, abs=1e-9)


class TestFiveNumber:
    def test_symmetric_case(self):
        assert five_number([1, 2, 3, 4, 5]) == FiveNumber(1, 2, 3, 4, 5)

    def test_singleton(self):
        assert five_number([7]) == FiveNumber(7, 7, 7, 7, 7)

    def test_inclusive_interpolation(self):
        f = five_number([1, 2, 3, 4])
        assert f.q1 == pytest.approx(1.75)
        assert f.q3 == pytest.approx(3.25)

    def test_empty_rejected(self):
        with pytest.raises(DataError):
            five_number([])

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=60), st.randoms())
    def test_permutation_invariant_and_sorted(self, values, rnd):
        f1 = five_number(values)
        shuffled = list(values)
        rnd.shuffle(shuffled)
        assert five_number(shuffled) == f1
        assert f1.min <= f1.q1 <= f1.median <= f1.q3 <= f1.max

    def test_against_reference_quantiles(self):
        rng = np.random.default_rng(15)
        values = rng.normal(0, 10, 37)
        f = five_number(values)
        assert f.q1 == pytest.approx(np.quantile(values, 0.25), abs=1e-12)
        assert f.median == pytest.approx(np.quantile(values, 0.5), abs=1e-12)
        assert f.q3 == pytest.approx(np.quantile(values, 0.75), abs=1e-12)


class TestClassAverages:
    @staticmethod
    def _bd(imp, amb):
        return SPRBreakdown(emo=imp / 2, nws=imp / 2, imp=imp, amb=amb, spr=imp * amb)

    def test_arithmetic_means(self):
        scores = [
            (ClassLabel.FR, self._bd(0.4, 0.2)),
            (ClassLabel.FR, self._bd(0.6, 0.4)),
            (ClassLabel.TR, self._bd(0.2, 0.1)),
            (ClassLabel.TR, self._bd(0.4, 0.3)),
        ]
        table = class_averages(scores)
        assert table["FR"]["imp"] == pytest.approx(0.5)
        assert table["FR"]["amb"] == pytest.approx(0.3)
        assert table["TR"]["spr"] == pytest.approx((0.02 + 0.12) / 2)

    def test_mean_of_products_differs_from_product_of_means(self):
        scores = [
            (ClassLabel.FR, self._bd(0.2, 0.8)),
            (ClassLabel.FR, self._bd(0.8, 0.2)),
            (ClassLabel.TR, self._bd(0.5, 0.5)),
            (ClassLabel.TR, self._bd(0.5, 0.5)),
        ]
        table = class_averages(scores)
        assert table["FR"]["spr"] != pytest.approx(table["FR"]["imp"] * table["FR"]["amb"])

    def test_missing_class_rejected(self):
        with pytest.raises(DataError, match="TR"):
            class_averages([(ClassLabel.FR, self._bd(0.1, 0.1))])
