"""Particle-swarm feature weighting.

Each particle is a candidate weight vector in [0, 1]^41. Its fitness is the
mean inner k-fold accuracy of the max-margin linear classifier trained on the
feature matrix with standardized columns scaled by the particle. (Scaling
must happen after standardization: z-scoring is scale-invariant per column,
so scaling first would erase the particle from the classifier's view.)

Velocity update: v <- w*v + c1*r1*(pbest - x) + c2*r2*(gbest - x), velocities
clamped, positions clipped to the unit box. Defaults are the canonical
constricted-swarm constants. Everything is driven by one seeded generator, so
a run is bit-reproducible; the inner folds are drawn from a stream
independent of the outer evaluation folds.

The fitness of the whole swarm is evaluated in one batch: training the
classifier on column-scaled features is algebraically a GEMM against the
unscaled standardized matrix, which keeps the inner loop in BLAS.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DataError
from ..features import N_FEATURES
from ..scoring import WeightVector
from .evaluate import stratified_folds
from .linear import zscore_apply, zscore_fit

_INNER_FOLD_STREAM = 0x1F01D
_SWARM_STREAM = 0x95A7


@dataclass(frozen=True)
class PSOConfig:
    swarm_size: int = 30
    max_iter: int = 100
    inertia: float = 0.729
    cognitive: float = 1.494
    social: float = 1.494
    velocity_clamp: float = 0.5
    inner_k: int = 5
    fitness_lambda: float = 0.01
    fitness_epochs: int = 30
    seed: int = 42

    def __post_init__(self):
        if self.swarm_size < 2:
            raise DataError("swarm_size must be at least 2")
        if self.max_iter < 1:
            raise DataError("max_iter must be at least 1")


@dataclass(frozen=True)
class PSOResult:
    weights: WeightVector
    fitness: float
    trace: tuple[float, ...]  # best fitness after init and after each iteration


class _FitnessFolds:
    """Pre-standardized inner folds shared by every fitness evaluation."""

    def __init__(self, X, y, k, lam, epochs, seed):
        rng = np.random.default_rng(np.random.SeedSequence([int(seed), _INNER_FOLD_STREAM]))
        folds = stratified_folds(y, k, rng)
        self.lam = lam
        self.epochs = epochs
        self.parts = []
        for fold in range(int(folds.max()) + 1):
            test = folds == fold
            train = ~test
            mean, std = zscore_fit(X[train])
            signed = np.where(y[train] == 0, -1.0, 1.0)
            self.parts.append(
                (
                    zscore_apply(X[train], mean, std),
                    signed,
                    zscore_apply(X[test], mean, std),
                    y[test].astype(int),
                )
            )

    def evaluate(self, positions: np.ndarray) -> np.ndarray:
        """Mean held-out accuracy per particle.

        Matches `train_linear` on the column-scaled matrix: zero init,
        full-batch hinge subgradient steps at 1/(lambda*t), keeping the
        iterate with the lowest regularized objective.
        """
        swarm = positions.shape[0]
        lam, epochs = self.lam, self.epochs
        accuracy = np.zeros(swarm)
        for X_train, signed, X_test, y_test in self.parts:
            n = X_train.shape[0]
            W = np.zeros_like(positions)
            B = np.zeros(swarm)
            best_W, best_B = W.copy(), B.copy()
            best_obj = np.ones(swarm)  # objective at the zero model is exactly 1
            for t in range(1, epochs + 1):
                scores = (positions * W) @ X_train.T + B[:, None]
                coef = (signed[None, :] * scores < 1.0) * signed[None, :]
                grad_W = lam * W - positions * (coef @ X_train) / n
                grad_B = -coef.sum(axis=1) / n
                eta = 1.0 / (lam * t)
                W = W - eta * grad_W
                B = B - eta * grad_B
                scores = (positions * W) @ X_train.T + B[:, None]
                hinge = np.maximum(0.0, 1.0 - signed[None, :] * scores)
                obj = 0.5 * lam * (W * W).sum(axis=1) + hinge.mean(axis=1)
                improved = obj < best_obj
                best_W[improved] = W[improved]
                best_B[improved] = B[improved]
                best_obj[improved] = obj[improved]
            test_scores = (positions * best_W) @ X_test.T + best_B[:, None]
            predictions = (test_scores > 0.0).astype(int)
            accuracy += (predictions == y_test[None, :]).mean(axis=1)
        return accuracy / len(self.parts)


def pso_weight_features(X: np.ndarray, y: np.ndarray, cfg: PSOConfig = PSOConfig()) -> PSOResult:
    """Learn per-feature weights; returns the best particle after max_iter
    iterations. Deterministic given the config seed.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    if X.ndim != 2 or X.shape[0] != y.shape[0]:
        raise DataError("feature matrix and labels disagree on the number of rows")
    if X.shape[1] != N_FEATURES:
        raise DataError(f"expected {N_FEATURES} feature columns, got {X.shape[1]}")
    if X.shape[0] < 10:
        raise DataError("feature weighting needs at least 10 rows")
    if np.unique(y).size < 2:
        raise DataError("feature weighting needs both classes present")

    fitness = _FitnessFolds(X, y, cfg.inner_k, cfg.fitness_lambda, cfg.fitness_epochs, cfg.seed)
    rng = np.random.default_rng(np.random.SeedSequence([int(cfg.seed), _SWARM_STREAM]))
    dim = X.shape[1]
    positions = rng.random((cfg.swarm_size, dim))
    velocities = rng.uniform(-cfg.velocity_clamp, cfg.velocity_clamp, (cfg.swarm_size, dim))

    fit = fitness.evaluate(positions)
    pbest = positions.copy()
    pbest_fit = fit.copy()
    best_idx = int(np.argmax(pbest_fit))
    gbest = pbest[best_idx].copy()
    gbest_fit = float(pbest_fit[best_idx])
    trace = [gbest_fit]

    for _ in range(cfg.max_iter):
        r1 = rng.random((cfg.swarm_size, dim))
        r2 = rng.random((cfg.swarm_size, dim))
        velocities = (
            cfg.inertia * velocities
            + cfg.cognitive * r1 * (pbest - positions)
            + cfg.social * r2 * (gbest[None, :] - positions)
        )
        np.clip(velocities, -cfg.velocity_clamp, cfg.velocity_clamp, out=velocities)
        positions = np.clip(positions + velocities, 0.0, 1.0)
        fit = fitness.evaluate(positions)
        improved = fit > pbest_fit
        pbest[improved] = positions[improved]
        pbest_fit[improved] = fit[improved]
        best_idx = int(np.argmax(pbest_fit))
        if float(pbest_fit[best_idx]) > gbest_fit:
            gbest_fit = float(pbest_fit[best_idx])
            gbest = pbest[best_idx].copy()
        trace.append(gbest_fit)

    return PSOResult(weights=WeightVector(gbest), fitness=gbest_fit, trace=tuple(trace))
