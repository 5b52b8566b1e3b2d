"""Primal max-margin linear classifier trained by full-batch subgradient
descent on hinge loss plus L2 regularization.

The step schedule is the classic 1/(lambda * t). Full-batch descent with that
schedule is not monotone step to step, so training keeps the iterate with the
lowest regularized objective seen so far and returns it; the reported loss
trace is therefore non-increasing. With zero initialization and full batches
the whole procedure is deterministic, independent of the seed argument.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DataError


@dataclass(frozen=True)
class LinearModel:
    weights: np.ndarray
    bias: float
    lam: float
    loss_trace: tuple[float, ...] = ()


def zscore_fit(X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Column means and stds from training data; constant columns get std 1
    so they standardize to zero instead of dividing by zero.
    """
    mean = X.mean(axis=0)
    std = X.std(axis=0)
    std = np.where(std == 0.0, 1.0, std)
    return mean, std


def zscore_apply(X: np.ndarray, mean: np.ndarray, std: np.ndarray) -> np.ndarray:
    return (X - mean) / std


def _signed(y: np.ndarray) -> np.ndarray:
    classes = np.unique(y)
    if classes.size < 2:
        raise DataError("training data contains a single class")
    return np.where(y == 0, -1.0, 1.0)


def _objective(X, ys, w, b, lam):
    margins = ys * (X @ w + b)
    hinge = np.maximum(0.0, 1.0 - margins)
    return 0.5 * lam * float(w @ w) + float(hinge.mean())


def train_linear(
    X: np.ndarray,
    y: np.ndarray,
    lam: float = 0.01,
    epochs: int = 200,
    seed: int = 0,
) -> LinearModel:
    """Train on standardized features; callers standardize with the training
    fold's statistics. Labels are the 0/1 class codes.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y)
    if X.ndim != 2 or X.shape[0] != y.shape[0]:
        raise DataError("feature matrix and labels disagree on the number of rows")
    ys = _signed(y)
    n, d = X.shape
    w = np.zeros(d)
    b = 0.0
    best_w, best_b = w.copy(), b
    best_obj = _objective(X, ys, w, b, lam)
    trace = [best_obj]
    for t in range(1, epochs + 1):
        margins = ys * (X @ w + b)
        violated = margins < 1.0
        grad_w = lam * w - (X[violated].T @ ys[violated]) / n
        grad_b = -float(ys[violated].sum()) / n
        eta = 1.0 / (lam * t)
        w = w - eta * grad_w
        b = b - eta * grad_b
        obj = _objective(X, ys, w, b, lam)
        if obj < best_obj:
            best_obj = obj
            best_w, best_b = w.copy(), b
        trace.append(best_obj)
    return LinearModel(weights=best_w, bias=best_b, lam=lam, loss_trace=tuple(trace))


def predict_linear(model: LinearModel, X: np.ndarray) -> np.ndarray:
    """0/1 class codes; a zero score breaks toward class 0."""
    scores = np.asarray(X, dtype=float) @ model.weights + model.bias
    return (scores > 0.0).astype(int)
