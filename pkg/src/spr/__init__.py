"""Spread-power scoring for text documents.

Computes 41 content features per document, aggregates them into emotional,
newsworthy, importance, and ambiguity scores whose product is the document's
spread power, learns per-feature weights by particle swarm, and drives the
FR/TR classification and significance experiments.
"""

from .annotate import DocumentAnnotations, EntitySpan, SAFlags
from .corpus import ClassLabel, Corpus, RawRecord
from .features import ALL_FEATURES, FeatureVector, extract_all
from .scoring import SPRBreakdown, WeightVector, spr
from .textprep import ProcessedDocument, Sentence, Token

__version__ = "0.1.0"

__all__ = [
    "ALL_FEATURES",
    "ClassLabel",
    "Corpus",
    "DocumentAnnotations",
    "EntitySpan",
    "FeatureVector",
    "ProcessedDocument",
    "RawRecord",
    "SAFlags",
    "SPRBreakdown",
    "Sentence",
    "Token",
    "WeightVector",
    "extract_all",
    "spr",
    "__version__",
]
