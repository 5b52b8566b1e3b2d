"""Learning stack: swarm-based feature weighting, a max-margin linear
classifier for the weighting fitness, a from-scratch random forest, and the
stratified cross-validation harness used by the experiments.
"""

from .evaluate import (
    AblationResult,
    ClassScores,
    Metrics,
    ablation_spr,
    cross_validate,
    evaluation_folds,
    run_folds,
    stratified_folds,
)
from .forest import Forest, RFConfig, rf_predict, rf_predict_many, rf_train
from .linear import LinearModel, predict_linear, train_linear, zscore_apply, zscore_fit
from .pso import PSOConfig, PSOResult, pso_weight_features

__all__ = [
    "AblationResult",
    "ClassScores",
    "Metrics",
    "ablation_spr",
    "cross_validate",
    "evaluation_folds",
    "run_folds",
    "stratified_folds",
    "Forest",
    "RFConfig",
    "rf_predict",
    "rf_predict_many",
    "rf_train",
    "LinearModel",
    "predict_linear",
    "train_linear",
    "zscore_apply",
    "zscore_fit",
    "PSOConfig",
    "PSOResult",
    "pso_weight_features",
]
