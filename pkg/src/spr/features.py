"""The 41 content features, organized as Emotional (18), Newsworthy (9), and
Ambiguity (14) groups in one canonical order.

That order is the single source of truth for every matrix, weight file, and
report in the toolkit. Most features are sentence ratios: the fraction of
sentences satisfying a predicate. The rest are document-level counts or
booleans. Every value lies in [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .annotate import DocumentAnnotations, EntitySpan
from .errors import ConfigError, DegenerateDocumentError
from .lexicon import LexiconSet
from .textprep import ProcessedDocument, Sentence, is_misspelled

EMOTIONAL_FEATURES = (
    "ETag", "Fr", "Su", "Dsg", "Sad", "An", "Aff", "MV", "CW", "CC",
    "PS", "NS", "SA_Thrt", "SA_Req", "Adj_Sup", "Adj_Cmp", "Strt", "End",
)
NEWSWORTHY_FEATURES = ("RT", "SI", "NE", "LD", "Cer", "SA_Dec", "SA_Quot", "Adj_Ord", "SM")
AMBIGUITY_FEATURES = (
    "Ucer", "SV", "QW", "QM", "EM", "SA_Ques", "Pro", "Tntv", "Neg",
    "Antcpnt", "Adv_Exm", "If", "GT", "UT",
)
ALL_FEATURES = EMOTIONAL_FEATURES + NEWSWORTHY_FEATURES + AMBIGUITY_FEATURES
FEATURE_INDEX = {name: i for i, name in enumerate(ALL_FEATURES)}
N_FEATURES = len(ALL_FEATURES)

FEATURE_GROUPS = {
    "Emotional": EMOTIONAL_FEATURES,
    "Newsworthy": NEWSWORTHY_FEATURES,
    "Ambiguity": AMBIGUITY_FEATURES,
}

# The six word-emotion lists backing the Strt/End boundary flags.
EMOTION_LEXICONS = ("Fear", "Surprise", "Disgust", "Sadness", "Anger", "Affective")

# Ratio features answered by a single lexicon lookup.
LEXICON_RATIO_FEATURES = {
    "Fr": "Fear",
    "Su": "Surprise",
    "Dsg": "Disgust",
    "Sad": "Sadness",
    "An": "Anger",
    "Aff": "Affective",
    "MV": "MotionVerb",
    "SV": "SensoryVerb",
    "QW": "QuestionWord",
    "Tntv": "Tentative",
    "Antcpnt": "Anticipation",
    "Adv_Exm": "ExampleWord",
    "If": "Conditional",
    "GT": "GeneralTerm",
    "UT": "UnTrust",
    "Neg": "NegationPrefix",
}

RATIO_FEATURES = tuple(LEXICON_RATIO_FEATURES) + (
    "CW", "CC", "Adj_Sup", "Adj_Cmp", "Adj_Ord", "RT", "SI", "NE", "QM", "EM", "Pro",
)

# A word repeats a character this many times before it counts as stretched
# spelling; doubled letters are ordinary orthography.
CC_RUN_LENGTH = 3


@dataclass(frozen=True)
class DegreeSuffixes:
    """Suffix lists for superlative / comparative / ordinal detection.

    A token counts for a class when its normalized form ends with one of the
    class suffixes and either the leftover prefix is a number or the token's
    stem is dictionary-tagged as an adjective. Defaults cover the Persian
    degree suffixes plus a small English demo set.
    """

    superlative: tuple[str, ...] = ("ترین", "مین", "امین", "est")
    comparative: tuple[str, ...] = ("تر", "er")
    ordinal: tuple[str, ...] = ("ام", "م", "st", "nd", "rd", "th")


DEFAULT_DEGREE_SUFFIXES = DegreeSuffixes()


@dataclass(frozen=True)
class FeatureVector:
    """The 41 feature values in canonical order."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        if arr.shape != (N_FEATURES,):
            raise ValueError(f"expected {N_FEATURES} feature values, got shape {arr.shape}")
        object.__setattr__(self, "values", arr)

    def __getitem__(self, name: str) -> float:
        return float(self.values[FEATURE_INDEX[name]])

    def as_dict(self) -> dict[str, float]:
        return {name: float(self.values[i]) for i, name in enumerate(ALL_FEATURES)}

    @classmethod
    def from_dict(cls, mapping: dict[str, float]) -> "FeatureVector":
        missing = [name for name in ALL_FEATURES if name not in mapping]
        if missing:
            raise ValueError(f"feature vector missing keys: {', '.join(missing)}")
        return cls(np.array([float(mapping[name]) for name in ALL_FEATURES]))


def _degree_hit(token, suffixes: tuple[str, ...]) -> bool:
    """The word splits as residue + degree suffix, where the residue is a
    number ("5" + "th") or exactly the token's adjective stem ("strong" +
    "est"); for the latter the stemming suffix list must carry the degree
    suffixes so the stemmer strips them.
    """
    if token.pos == "Punct":
        return False
    word = token.normalized
    for suffix in suffixes:
        if len(word) > len(suffix) and word.endswith(suffix):
            residue = word[: -len(suffix)]
            if residue.isdigit():
                return True
            if residue == token.stem and token.pos == "Adj":
                return True
    return False


def _has_char_run(word: str, run: int) -> bool:
    if run <= 1:
        return bool(word)
    count = 1
    for prev, cur in zip(word, word[1:]):
        count = count + 1 if cur == prev else 1
        if count >= run:
            return True
    return False


def _sentence_predicate(
    sentence: Sentence,
    feature_id: str,
    lex: LexiconSet,
    entities: tuple[EntitySpan, ...],
    degrees: DegreeSuffixes,
) -> bool:
    lexicon_id = LEXICON_RATIO_FEATURES.get(feature_id)
    if lexicon_id is not None:
        return lex.hits(sentence, lexicon_id)
    if feature_id == "CW":
        toks = sentence.tokens
        return any(
            a.is_term and b.is_term and a.stem == b.stem
            for a, b in zip(toks, toks[1:])
        )
    if feature_id == "CC":
        # Stretched spelling is a word phenomenon: digit runs ("5000") and
        # punctuation runs ("!!!") are ordinary orthography, not emphasis.
        return any(
            tok.pos not in ("Punct", "Number") and _has_char_run(tok.normalized, CC_RUN_LENGTH)
            for tok in sentence.tokens
        )
    if feature_id == "Adj_Sup":
        return any(_degree_hit(tok, degrees.superlative) for tok in sentence.tokens)
    if feature_id == "Adj_Cmp":
        return any(_degree_hit(tok, degrees.comparative) for tok in sentence.tokens)
    if feature_id == "Adj_Ord":
        return any(_degree_hit(tok, degrees.ordinal) for tok in sentence.tokens)
    if feature_id == "RT":
        return any(tok.pos == "AdvTime" for tok in sentence.tokens) or lex.hits(sentence, "RelativeTime")
    if feature_id == "SI":
        return any(tok.pos == "Number" for tok in sentence.tokens) or lex.hits(sentence, "StatWord")
    if feature_id == "NE":
        return any(span.sentence_index == sentence.index for span in entities)
    if feature_id == "QM":
        return "?" in sentence.text or "؟" in sentence.text
    if feature_id == "EM":
        return "!" in sentence.text
    if feature_id == "Pro":
        return any(
            tok.pos == "Pronoun" and lex.contains("PronounTarget", tok.stem)
            for tok in sentence.tokens
        )
    raise ConfigError(f"{feature_id!r} is not a sentence-ratio feature")


def sentence_ratio(
    doc: ProcessedDocument,
    feature_id: str,
    lex: LexiconSet,
    entities: tuple[EntitySpan, ...] = (),
    degrees: DegreeSuffixes = DEFAULT_DEGREE_SUFFIXES,
) -> float:
    """Fraction of sentences satisfying the feature's predicate."""
    if not doc.sentences:
        raise DegenerateDocumentError(f"document {doc.id!r} has no sentences")
    hits = sum(
        1 for s in doc.sentences if _sentence_predicate(s, feature_id, lex, entities, degrees)
    )
    return hits / len(doc.sentences)


def emotiveness(doc: ProcessedDocument) -> float:
    """(adjectives + adverbs) / (nouns + verbs), clamped to [0, 1].

    Time adverbs count as adverbs. A document with no nouns or verbs scores 0.
    """
    adj = adv = noun = verb = 0
    for tok in doc.tokens():
        if tok.pos == "Adj":
            adj += 1
        elif tok.pos in ("Adv", "AdvTime"):
            adv += 1
        elif tok.pos == "Noun":
            noun += 1
        elif tok.pos == "Verb":
            verb += 1
    if noun + verb == 0:
        return 0.0
    return min(1.0, (adj + adv) / (noun + verb))


def sentiment_scores(doc: ProcessedDocument, lex: LexiconSet) -> tuple[float, float]:
    """Positive and negative shares over all polarity-bearing tokens; both
    zero when the document carries no sentiment words at all.
    """
    pos = sum(1 for tok in doc.tokens() if lex.contains("PositiveSent", tok.stem))
    neg = sum(1 for tok in doc.tokens() if lex.contains("NegativeSent", tok.stem))
    if pos + neg == 0:
        return 0.0, 0.0
    return pos / (pos + neg), neg / (pos + neg)


def certainty_scores(doc: ProcessedDocument, lex: LexiconSet) -> tuple[float, float]:
    """Certainty and uncertainty shares, zero/zero when neither occurs."""
    cer = sum(1 for tok in doc.tokens() if lex.contains("Certainty", tok.stem))
    ucer = sum(1 for tok in doc.tokens() if lex.contains("Uncertainty", tok.stem))
    if cer + ucer == 0:
        return 0.0, 0.0
    return cer / (cer + ucer), ucer / (cer + ucer)


def lexical_diversity(doc: ProcessedDocument) -> float:
    if doc.term_count < 1:
        raise DegenerateDocumentError(f"document {doc.id!r} has no countable terms")
    return len(doc.vocab) / doc.term_count


def spelling_mistake_ratio(doc: ProcessedDocument, dictionary: frozenset[str]) -> float:
    if not dictionary:
        raise ConfigError("spell dictionary is empty")
    if doc.term_count < 1:
        raise DegenerateDocumentError(f"document {doc.id!r} has no countable terms")
    mistakes = sum(1 for tok in doc.tokens() if is_misspelled(tok, dictionary))
    return mistakes / doc.term_count


def boundary_flags(doc: ProcessedDocument, lex: LexiconSet) -> tuple[int, int]:
    """Strt: the first sentence carries an emotion word. End: the last
    sentence carries an emotion word or a request cue.
    """
    if not doc.sentences:
        raise DegenerateDocumentError(f"document {doc.id!r} has no sentences")
    first, last = doc.sentences[0], doc.sentences[-1]
    strt = int(any(lex.hits(first, lid) for lid in EMOTION_LEXICONS))
    end = int(
        any(lex.hits(last, lid) for lid in EMOTION_LEXICONS) or lex.hits(last, "RequestCue")
    )
    return strt, end


def extract_all(
    doc: ProcessedDocument,
    lex: LexiconSet,
    annotations: DocumentAnnotations,
    dictionary: frozenset[str],
    degrees: DegreeSuffixes = DEFAULT_DEGREE_SUFFIXES,
) -> FeatureVector:
    """Populate all 41 features for one preprocessed, annotated document."""
    values = np.zeros(N_FEATURES)

    def put(name, value):
        values[FEATURE_INDEX[name]] = value

    for feature_id in RATIO_FEATURES:
        put(feature_id, sentence_ratio(doc, feature_id, lex, annotations.entities, degrees))

    put("ETag", emotiveness(doc))
    ps, ns = sentiment_scores(doc, lex)
    put("PS", ps)
    put("NS", ns)
    cer, ucer = certainty_scores(doc, lex)
    put("Cer", cer)
    put("Ucer", ucer)
    put("LD", lexical_diversity(doc))
    put("SM", spelling_mistake_ratio(doc, dictionary))
    strt, end = boundary_flags(doc, lex)
    put("Strt", strt)
    put("End", end)

    sa = annotations.speech_acts
    put("SA_Thrt", int(sa.threat))
    put("SA_Req", int(sa.request))
    put("SA_Dec", int(sa.declarative))
    put("SA_Quot", int(sa.quotation))
    put("SA_Ques", int(sa.question))

    return FeatureVector(values)
