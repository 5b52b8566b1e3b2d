"""Stratified k-fold evaluation, classification metrics, and the add-a-score
ablation used by the classification experiments.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ..errors import DataError
from ..scoring import WeightVector, spr
from .forest import RFConfig, rf_predict_many, rf_train
from .linear import predict_linear, train_linear, zscore_apply, zscore_fit

LABEL_NAMES = ("FR", "TR")


@dataclass(frozen=True)
class ClassScores:
    tp_rate: float
    fp_rate: float
    precision: float
    recall: float
    f1: float

    def as_dict(self) -> dict[str, float]:
        return {
            "tp_rate": self.tp_rate,
            "fp_rate": self.fp_rate,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
        }


@dataclass(frozen=True)
class Metrics:
    per_class: dict[str, ClassScores]
    macro: ClassScores
    confusion: tuple[tuple[int, ...], ...]  # confusion[true][predicted]
    n: int

    def as_dict(self) -> dict:
        return {
            "per_class": {name: scores.as_dict() for name, scores in self.per_class.items()},
            "macro": self.macro.as_dict(),
            "confusion": [list(row) for row in self.confusion],
            "n": self.n,
        }


def confusion_matrix(y_true: np.ndarray, y_pred: np.ndarray, n_classes: int = 2) -> np.ndarray:
    conf = np.zeros((n_classes, n_classes), dtype=int)
    for t, p in zip(y_true, y_pred):
        conf[int(t), int(p)] += 1
    return conf


def _safe_div(num: float, den: float) -> float:
    return num / den if den else 0.0


def metrics_from_confusion(conf: np.ndarray) -> Metrics:
    total = int(conf.sum())
    per_class = {}
    for code, name in enumerate(LABEL_NAMES):
        tp = int(conf[code, code])
        fn = int(conf[code].sum()) - tp
        fp = int(conf[:, code].sum()) - tp
        tn = total - tp - fn - fp
        precision = _safe_div(tp, tp + fp)
        recall = _safe_div(tp, tp + fn)
        per_class[name] = ClassScores(
            tp_rate=recall,
            fp_rate=_safe_div(fp, fp + tn),
            precision=precision,
            recall=recall,
            f1=_safe_div(2 * precision * recall, precision + recall),
        )
    macro = ClassScores(
        tp_rate=float(np.mean([c.tp_rate for c in per_class.values()])),
        fp_rate=float(np.mean([c.fp_rate for c in per_class.values()])),
        precision=float(np.mean([c.precision for c in per_class.values()])),
        recall=float(np.mean([c.recall for c in per_class.values()])),
        f1=float(np.mean([c.f1 for c in per_class.values()])),
    )
    return Metrics(
        per_class=per_class,
        macro=macro,
        confusion=tuple(tuple(int(v) for v in row) for row in conf),
        n=total,
    )


def stratified_folds(y: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Deal each class's shuffled indices round-robin into k folds; every row
    lands in exactly one fold and every fold sees both classes.
    """
    y = np.asarray(y, dtype=int)
    classes, counts = np.unique(y, return_counts=True)
    if classes.size < 2:
        raise DataError("cross-validation needs both classes present")
    feasible = int(counts.min())
    if feasible < 2:
        raise DataError("cross-validation needs at least two rows per class")
    if k > feasible:
        warnings.warn(f"reducing folds from {k} to {feasible}, the smallest class count", stacklevel=2)
        k = feasible
    if k < 2:
        raise DataError("cross-validation needs at least two folds")
    folds = np.empty(y.shape[0], dtype=int)
    for cls in classes:
        idx = np.flatnonzero(y == cls)
        rng.shuffle(idx)
        folds[idx] = np.arange(idx.size) % k
    return folds


def _fit_predict(X_train, y_train, X_test, model, fold_seed, rf_config, linear_lambda, linear_epochs):
    if model == "rf":
        cfg = rf_config or RFConfig()
        cfg = RFConfig(
            n_trees=cfg.n_trees,
            max_depth=cfg.max_depth,
            min_leaf=cfg.min_leaf,
            features_per_split=cfg.features_per_split,
            seed=int(fold_seed),
        )
        forest = rf_train(X_train, y_train, cfg)
        return rf_predict_many(forest, X_test)
    if model == "linear":
        mean, std = zscore_fit(X_train)
        trained = train_linear(zscore_apply(X_train, mean, std), y_train, lam=linear_lambda, epochs=linear_epochs)
        return predict_linear(trained, zscore_apply(X_test, mean, std))
    raise DataError(f"unknown model {model!r}")


def evaluation_folds(y: np.ndarray, k: int, seed: int) -> np.ndarray:
    """The canonical outer fold assignment for a given seed; shared by every
    experiment arm so ablations compare like with like.
    """
    return stratified_folds(y, k, np.random.default_rng(np.random.SeedSequence([int(seed), 0xF01D])))


def run_folds(
    X: np.ndarray,
    y: np.ndarray,
    folds: np.ndarray,
    model: str = "rf",
    seed: int = 42,
    rf_config: RFConfig | None = None,
    linear_lambda: float = 0.01,
    linear_epochs: int = 200,
) -> Metrics:
    """Evaluate one model over a fixed fold assignment; metrics are pooled
    over the union of held-out predictions.
    """
    k = int(folds.max()) + 1
    fold_seeds = np.random.default_rng(np.random.SeedSequence([int(seed), 0x5EED]))\
        .integers(0, 2**63 - 1, size=k)
    predictions = np.empty(y.shape[0], dtype=int)
    for fold in range(k):
        test = folds == fold
        train = ~test
        predictions[test] = _fit_predict(
            X[train], y[train], X[test], model, fold_seeds[fold], rf_config, linear_lambda, linear_epochs
        )
    return metrics_from_confusion(confusion_matrix(y, predictions))


def cross_validate(
    X: np.ndarray,
    y: np.ndarray,
    k: int = 10,
    model: str = "rf",
    seed: int = 42,
    rf_config: RFConfig | None = None,
    linear_lambda: float = 0.01,
    linear_epochs: int = 200,
) -> Metrics:
    """Stratified k-fold; metrics are pooled over the union of held-out
    predictions, deterministic per seed.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    if X.shape[0] != y.shape[0]:
        raise DataError("feature matrix and labels disagree on the number of rows")
    folds = evaluation_folds(y, k, seed)
    return run_folds(X, y, folds, model, seed, rf_config, linear_lambda, linear_epochs)


@dataclass(frozen=True)
class AblationResult:
    without_spr: Metrics
    with_spr: Metrics
    folds: np.ndarray  # shared fold assignment, one id per row


def ablation_spr(
    X: np.ndarray,
    y: np.ndarray,
    weights: WeightVector | None = None,
    k: int = 10,
    seed: int = 42,
    model: str = "rf",
    rf_config: RFConfig | None = None,
    linear_lambda: float = 0.01,
    linear_epochs: int = 200,
) -> AblationResult:
    """Evaluate the plain feature matrix against the matrix with an appended
    spread-power column, on identical folds and seeds for both arms.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    w = weights if weights is not None else WeightVector.unit()
    spr_column = np.array([spr(row, w).spr for row in X])
    X_aug = np.column_stack([X, spr_column])
    folds = evaluation_folds(y, k, seed)
    plain = run_folds(X, y, folds, model, seed, rf_config, linear_lambda, linear_epochs)
    augmented = run_folds(X_aug, y, folds, model, seed, rf_config, linear_lambda, linear_epochs)
    return AblationResult(without_spr=plain, with_spr=augmented, folds=folds)
