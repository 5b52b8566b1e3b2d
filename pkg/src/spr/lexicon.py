"""Named word lists driving the lexicon-based features.

Each list lives in `<snake_name>.txt` (one entry per line) inside a lexicon
directory; alternatively any `*.tsv` file in the directory is read as a
combined emotion-lexicon table (`word<TAB>class<TAB>0|1`). Entries are
normalized and stemmed at load so lookups run on stems; multi-word entries
match consecutive token stems. `NegationPrefix` entries are affixes matched
against the start of each token's normalized form.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field

from .errors import ConfigError
from .textprep import NormRules, Sentence, Stemmer, normalize

LEXICON_IDS = (
    "Fear",
    "Surprise",
    "Disgust",
    "Sadness",
    "Anger",
    "Affective",
    "MotionVerb",
    "PositiveSent",
    "NegativeSent",
    "Certainty",
    "Uncertainty",
    "SensoryVerb",
    "QuestionWord",
    "Tentative",
    "Anticipation",
    "ExampleWord",
    "Conditional",
    "GeneralTerm",
    "UnTrust",
    "RelativeTime",
    "StatWord",
    "RequestCue",
    "ThreatCue",
    "QuoteCue",
    "NegationPrefix",
    "PronounTarget",
)

# These pairs must not share a stem; token_sentiment and the certainty scores
# rely on the partition.
DISJOINT_PAIRS = (("Certainty", "Uncertainty"), ("PositiveSent", "NegativeSent"))

# Combined-TSV class names mapped onto lexicon ids. Classes outside the
# feature inventory (joy, trust) are skipped.
TSV_CLASS_MAP = {
    "fear": "Fear",
    "surprise": "Surprise",
    "disgust": "Disgust",
    "sadness": "Sadness",
    "anger": "Anger",
    "anticipation": "Anticipation",
    "positive": "PositiveSent",
    "negative": "NegativeSent",
}


def _snake(name: str) -> str:
    return re.sub(r"(?<!^)(?=[A-Z])", "_", name).lower()


FILE_NAMES = {lid: _snake(lid) + ".txt" for lid in LEXICON_IDS}


@dataclass(frozen=True)
class LexiconSet:
    """Immutable stem sets per lexicon id, plus multi-word phrase entries."""

    words: dict[str, frozenset[str]]
    phrases: dict[str, tuple[tuple[str, ...], ...]] = field(default_factory=dict)

    def _check(self, lexicon_id: str) -> None:
        if lexicon_id not in LEXICON_IDS:
            raise KeyError(f"unknown lexicon id {lexicon_id!r}")

    def size(self, lexicon_id: str) -> int:
        self._check(lexicon_id)
        return len(self.words.get(lexicon_id, ())) + len(self.phrases.get(lexicon_id, ()))

    def contains(self, lexicon_id: str, stem: str) -> bool:
        self._check(lexicon_id)
        return stem in self.words.get(lexicon_id, frozenset())

    def hits(self, sentence: Sentence, lexicon_id: str) -> bool:
        """True when the sentence contains an entry of the given list.

        Single-word entries match any token stem; phrase entries match
        consecutive tokens; negation affixes match token prefixes.
        """
        self._check(lexicon_id)
        if lexicon_id == "NegationPrefix":
            prefixes = self.words.get(lexicon_id, frozenset())
            return any(
                tok.is_term and tok.normalized.startswith(prefix)
                for tok in sentence.tokens
                for prefix in prefixes
            )
        stems = self.words.get(lexicon_id, frozenset())
        if any(tok.stem in stems for tok in sentence.tokens):
            return True
        token_stems = [tok.stem for tok in sentence.tokens]
        for phrase in self.phrases.get(lexicon_id, ()):
            width = len(phrase)
            for start in range(len(token_stems) - width + 1):
                if tuple(token_stems[start : start + width]) == phrase:
                    return True
        return False

    @classmethod
    def empty(cls) -> "LexiconSet":
        return cls(words={}, phrases={})


def _store_entry(words, phrases, lexicon_id, entry, rules, stemmer):
    entry = normalize(entry, rules).casefold()
    if not entry:
        return
    if lexicon_id == "NegationPrefix":
        words.setdefault(lexicon_id, set()).add(entry)
        return
    parts = [stemmer.stem(word) for word in entry.split()]
    if len(parts) == 1:
        words.setdefault(lexicon_id, set()).add(parts[0])
    else:
        phrases.setdefault(lexicon_id, set()).add(tuple(parts))


def load_lexicons(
    directory: str,
    rules: NormRules,
    stemmer: Stemmer,
    required: tuple[str, ...] = (),
) -> LexiconSet:
    """Load every recognized list file in `directory`.

    Missing lists simply disable their features (the affected scores compute
    to zero); `required` names lists that must be present and non-empty.
    """
    if not os.path.isdir(directory):
        raise ConfigError(f"lexicon directory not found: {directory}")
    words: dict[str, set[str]] = {}
    phrases: dict[str, set[tuple[str, ...]]] = {}
    by_file = {fname: lid for lid, fname in FILE_NAMES.items()}
    for fname in sorted(os.listdir(directory)):
        path = os.path.join(directory, fname)
        if fname in by_file:
            lexicon_id = by_file[fname]
            with open(path, encoding="utf-8") as handle:
                for line in handle:
                    entry = line.strip()
                    if entry and not entry.startswith("#"):
                        _store_entry(words, phrases, lexicon_id, entry, rules, stemmer)
        elif fname.endswith(".tsv"):
            _load_combined_tsv(path, words, phrases, rules, stemmer)
    for lexicon_id in required:
        if lexicon_id not in LEXICON_IDS:
            raise ConfigError(f"unknown required lexicon id {lexicon_id!r}")
        if not words.get(lexicon_id) and not phrases.get(lexicon_id):
            raise ConfigError(f"required lexicon {lexicon_id!r} is missing or empty in {directory}")
    for left, right in DISJOINT_PAIRS:
        overlap = sorted(words.get(left, set()) & words.get(right, set()))
        if overlap:
            raise ConfigError(f"lexicons {left} and {right} must be disjoint; shared stems: {', '.join(overlap)}")
    return LexiconSet(
        words={lid: frozenset(stems) for lid, stems in words.items()},
        phrases={lid: tuple(sorted(entries)) for lid, entries in phrases.items()},
    )


def _load_combined_tsv(path, words, phrases, rules, stemmer):
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 3:
                raise ConfigError(f"{path}:{lineno}: expected `word<TAB>class<TAB>0|1`")
            word, cls, flag = parts
            if flag.strip() not in ("0", "1"):
                raise ConfigError(f"{path}:{lineno}: association flag must be 0 or 1")
            if flag.strip() == "0":
                continue
            cls = cls.strip().lower()
            lexicon_id = TSV_CLASS_MAP.get(cls)
            if lexicon_id is None:
                # Also accept canonical snake names so one TSV can carry
                # every list, not just the emotion classes.
                camel = {_snake(lid): lid for lid in LEXICON_IDS}.get(cls)
                if camel is None:
                    continue
                lexicon_id = camel
            _store_entry(words, phrases, lexicon_id, word.strip(), rules, stemmer)
