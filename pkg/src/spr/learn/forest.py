"""Random forest built from scratch: axis-aligned splits chosen by Gini
impurity, bootstrap sampling per tree, and a random feature subset at every
node. Prediction is a majority vote over trees with ties broken toward class
code 0 (FR).

Per-tree random streams are spawned from the master seed, so training is
reproducible and order-independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, sqrt

import numpy as np

from ..errors import DataError


@dataclass(frozen=True)
class RFConfig:
    n_trees: int = 100
    max_depth: int | None = None
    min_leaf: int = 1
    features_per_split: int | None = None  # default: ceil(sqrt(n_features))
    seed: int = 42


@dataclass
class _Node:
    feature: int = -1
    threshold: float = 0.0
    left: "_Node | None" = None
    right: "_Node | None" = None
    counts: np.ndarray | None = None  # class counts at a leaf

    @property
    def is_leaf(self) -> bool:
        return self.counts is not None


@dataclass(frozen=True)
class Forest:
    trees: tuple[_Node, ...]
    n_classes: int
    config: RFConfig
    single_class: int | None = None  # set when training data had one class


def _class_counts(y: np.ndarray, n_classes: int) -> np.ndarray:
    return np.bincount(y, minlength=n_classes)


def _best_split(X, y, feature_ids, min_leaf, n_classes):
    """Scan candidate thresholds per feature with cumulative class counts;
    returns (gini, feature, threshold) or None when no valid split exists.
    """
    n = y.shape[0]
    best = None
    total = _class_counts(y, n_classes).astype(float)
    for feature in feature_ids:
        order = np.argsort(X[:, feature], kind="stable")
        xs = X[order, feature]
        ys = y[order]
        if xs[0] == xs[-1]:
            continue
        # one-hot cumulative counts: left side of a cut after position i
        cum = np.cumsum(np.eye(n_classes)[ys], axis=0)
        n_left = np.arange(1, n + 1, dtype=float)
        valid = (xs[:-1] < xs[1:]) & (n_left[:-1] >= min_leaf) & ((n - n_left[:-1]) >= min_leaf)
        if not np.any(valid):
            continue
        left = cum[:-1][valid]
        n_l = n_left[:-1][valid]
        n_r = n - n_l
        right = total - left
        gini_l = 1.0 - ((left / n_l[:, None]) ** 2).sum(axis=1)
        gini_r = 1.0 - ((right / n_r[:, None]) ** 2).sum(axis=1)
        weighted = (n_l * gini_l + n_r * gini_r) / n
        idx = int(np.argmin(weighted))
        gini = float(weighted[idx])
        if best is None or gini < best[0]:
            cut_positions = np.nonzero(valid)[0]
            cut = cut_positions[idx]
            threshold = 0.5 * (xs[cut] + xs[cut + 1])
            best = (gini, feature, float(threshold))
    return best


def _grow_tree(X, y, cfg: RFConfig, n_classes: int, rng: np.random.Generator) -> _Node:
    d = X.shape[1]
    m = cfg.features_per_split or ceil(sqrt(d))
    m = min(m, d)
    root = _Node()
    stack = [(root, np.arange(X.shape[0]), 0)]
    while stack:
        node, idx, depth = stack.pop()
        ysub = y[idx]
        counts = _class_counts(ysub, n_classes)
        pure = np.count_nonzero(counts) <= 1
        too_deep = cfg.max_depth is not None and depth >= cfg.max_depth
        too_small = idx.shape[0] < 2 * cfg.min_leaf
        split = None
        if not (pure or too_deep or too_small):
            feature_ids = rng.choice(d, size=m, replace=False)
            split = _best_split(X[idx], ysub, feature_ids, cfg.min_leaf, n_classes)
        if split is None:
            node.counts = counts
            continue
        _, feature, threshold = split
        node.feature = feature
        node.threshold = threshold
        mask = X[idx, feature] <= threshold
        node.left = _Node()
        node.right = _Node()
        stack.append((node.left, idx[mask], depth + 1))
        stack.append((node.right, idx[~mask], depth + 1))
    return root


def _tree_predict(node: _Node, x: np.ndarray) -> int:
    while not node.is_leaf:
        node = node.left if x[node.feature] <= node.threshold else node.right
    return int(np.argmax(node.counts))  # argmax tie breaks toward class 0


def rf_train(X: np.ndarray, y: np.ndarray, cfg: RFConfig = RFConfig()) -> Forest:
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    if X.ndim != 2 or X.shape[0] != y.shape[0]:
        raise DataError("feature matrix and labels disagree on the number of rows")
    if X.shape[0] == 0:
        raise DataError("cannot train a forest on an empty matrix")
    n_classes = 2
    classes = np.unique(y)
    single = int(classes[0]) if classes.size == 1 else None
    streams = np.random.SeedSequence(cfg.seed).spawn(cfg.n_trees)
    trees = []
    n = X.shape[0]
    for stream in streams:
        rng = np.random.default_rng(stream)
        sample = rng.integers(0, n, size=n)
        trees.append(_grow_tree(X[sample], y[sample], cfg, n_classes, rng))
    return Forest(trees=tuple(trees), n_classes=n_classes, config=cfg, single_class=single)


def rf_predict(forest: Forest, x: np.ndarray) -> int:
    votes = np.zeros(forest.n_classes, dtype=int)
    for tree in forest.trees:
        votes[_tree_predict(tree, np.asarray(x, dtype=float))] += 1
    return int(np.argmax(votes))  # ties toward class code 0


def rf_predict_many(forest: Forest, X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    return np.array([rf_predict(forest, row) for row in X], dtype=int)
