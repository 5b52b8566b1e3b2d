"""Aggregate a feature vector into emotional, newsworthy, importance,
ambiguity, and spread-power scores under a per-feature weight vector.

The law: importance = emotional + newsworthy (weighted means over the fixed
group sizes 18 and 9), ambiguity is the weighted mean over its 14 features,
and spread power is importance times ambiguity. The divisors are the fixed
group sizes, not the count of enabled features, so disabling a lexicon
shrinks scores instead of silently reweighting the rest.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .features import (
    ALL_FEATURES,
    AMBIGUITY_FEATURES,
    EMOTIONAL_FEATURES,
    FEATURE_INDEX,
    FeatureVector,
    N_FEATURES,
    NEWSWORTHY_FEATURES,
)

_EMO_IDX = np.array([FEATURE_INDEX[name] for name in EMOTIONAL_FEATURES])
_NWS_IDX = np.array([FEATURE_INDEX[name] for name in NEWSWORTHY_FEATURES])
_AMB_IDX = np.array([FEATURE_INDEX[name] for name in AMBIGUITY_FEATURES])


@dataclass(frozen=True)
class WeightVector:
    """Per-feature weights in [0, 1], canonical order."""

    weights: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.weights, dtype=float)
        if arr.shape != (N_FEATURES,):
            raise ValueError(f"expected {N_FEATURES} weights, got shape {arr.shape}")
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise ValueError("weights must lie in [0, 1]")
        object.__setattr__(self, "weights", arr)

    def __getitem__(self, name: str) -> float:
        return float(self.weights[FEATURE_INDEX[name]])

    def as_dict(self) -> dict[str, float]:
        return {name: float(self.weights[i]) for i, name in enumerate(ALL_FEATURES)}

    @classmethod
    def from_dict(cls, mapping: dict[str, float]) -> "WeightVector":
        missing = [name for name in ALL_FEATURES if name not in mapping]
        if missing:
            raise ValueError(f"weight vector missing keys: {', '.join(missing)}")
        return cls(np.array([float(mapping[name]) for name in ALL_FEATURES]))

    @classmethod
    def unit(cls) -> "WeightVector":
        return cls(np.ones(N_FEATURES))


@dataclass(frozen=True)
class SPRBreakdown:
    emo: float
    nws: float
    imp: float
    amb: float
    spr: float

    def as_dict(self) -> dict[str, float]:
        return {"emo": self.emo, "nws": self.nws, "imp": self.imp, "amb": self.amb, "spr": self.spr}


def _values(fv) -> np.ndarray:
    if isinstance(fv, FeatureVector):
        return fv.values
    return np.asarray(fv, dtype=float)


def _weights(w) -> np.ndarray:
    if w is None:
        return np.ones(N_FEATURES)
    if isinstance(w, WeightVector):
        return w.weights
    return np.asarray(w, dtype=float)


def emotional_score(fv, w=None) -> float:
    values, weights = _values(fv), _weights(w)
    return float(np.dot(weights[_EMO_IDX], values[_EMO_IDX]) / len(_EMO_IDX))


def newsworthy_score(fv, w=None) -> float:
    values, weights = _values(fv), _weights(w)
    return float(np.dot(weights[_NWS_IDX], values[_NWS_IDX]) / len(_NWS_IDX))


def importance(fv, w=None) -> float:
    return emotional_score(fv, w) + newsworthy_score(fv, w)


def ambiguity(fv, w=None) -> float:
    values, weights = _values(fv), _weights(w)
    return float(np.dot(weights[_AMB_IDX], values[_AMB_IDX]) / len(_AMB_IDX))


def spr(fv, w=None) -> SPRBreakdown:
    """Full score breakdown; spread power is zero whenever either factor is."""
    emo = emotional_score(fv, w)
    nws = newsworthy_score(fv, w)
    amb = ambiguity(fv, w)
    imp = emo + nws
    return SPRBreakdown(emo=emo, nws=nws, imp=imp, amb=amb, spr=imp * amb)
