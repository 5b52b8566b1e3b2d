"""Pluggable document annotators: speech acts, named entities, sentiment.

The defaults are deliberately simple rule/gazetteer implementations so every
feature is computable out of the box; a stronger model can replace either one
behind the same interface (see ExternalSpeechActAnnotator).
"""

from __future__ import annotations

import json
import subprocess
from dataclasses import dataclass, field

from .errors import ConfigError, DataError
from .lexicon import LexiconSet
from .textprep import NormRules, ProcessedDocument, Stemmer, Token, normalize

ENTITY_KINDS = ("Person", "Organization", "Location")

QUOTE_CHARS = frozenset('"\'«»“”‘’')


@dataclass(frozen=True)
class SAFlags:
    """Document-level speech-act booleans; declarative is the fallback."""

    threat: bool = False
    request: bool = False
    declarative: bool = True
    quotation: bool = False
    question: bool = False

    def as_dict(self) -> dict[str, bool]:
        return {
            "threat": self.threat,
            "request": self.request,
            "declarative": self.declarative,
            "quotation": self.quotation,
            "question": self.question,
        }


@dataclass(frozen=True)
class EntitySpan:
    sentence_index: int
    token_range: tuple[int, int]  # [start, end) over the sentence's tokens
    kind: str


@dataclass(frozen=True)
class DocumentAnnotations:
    speech_acts: SAFlags
    entities: tuple[EntitySpan, ...] = ()


def _sentence_cues(sentence, lex: LexiconSet) -> dict[str, bool]:
    text = sentence.text.rstrip()
    ends_question = bool(text) and text[-1] in ("?", "؟")
    first_question_word = bool(sentence.tokens) and lex.contains("QuestionWord", sentence.tokens[0].stem)
    quote_count = sum(1 for ch in sentence.text if ch in QUOTE_CHARS)
    return {
        "question": ends_question or first_question_word,
        "threat": lex.hits(sentence, "ThreatCue"),
        "request": lex.hits(sentence, "RequestCue"),
        "quotation": quote_count >= 2 or lex.hits(sentence, "QuoteCue"),
    }


def classify_speech_acts(doc: ProcessedDocument, lex: LexiconSet) -> SAFlags:
    """Rule-based speech-act flags.

    question: a sentence ends in a question mark or opens with a question
    word; threat/request: any cue-list hit; quotation: a sentence carries a
    pair of quote marks or a quote cue. Declarative holds when nothing else
    fired, or when some sentence shows no cue at all.
    """
    per_sentence = [_sentence_cues(s, lex) for s in doc.sentences]
    threat = any(c["threat"] for c in per_sentence)
    request = any(c["request"] for c in per_sentence)
    question = any(c["question"] for c in per_sentence)
    quotation = any(c["quotation"] for c in per_sentence)
    cueless = any(not any(c.values()) for c in per_sentence)
    declarative = cueless or not (threat or request or question or quotation)
    return SAFlags(
        threat=threat,
        request=request,
        declarative=declarative,
        quotation=quotation,
        question=question,
    )


def load_gazetteers(path: str, rules: NormRules, stemmer: Stemmer) -> dict[str, tuple[tuple[str, ...], ...]]:
    """TSV `name<TAB>kind`; names are normalized and stemmed per word."""
    table: dict[str, set[tuple[str, ...]]] = {kind: set() for kind in ENTITY_KINDS}
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read gazetteer file {path}: {exc}") from exc
    for lineno, line in enumerate(lines, start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ConfigError(f"{path}:{lineno}: expected `name<TAB>kind`")
        name, kind = parts[0].strip(), parts[1].strip()
        if kind not in ENTITY_KINDS:
            raise ConfigError(f"{path}:{lineno}: unknown entity kind {kind!r}")
        stems = tuple(stemmer.stem(w) for w in normalize(name, rules).casefold().split())
        if stems:
            table[kind].add(stems)
    return {kind: tuple(sorted(entries)) for kind, entries in table.items()}


def recognize_entities(
    doc: ProcessedDocument,
    gazetteers: dict[str, tuple[tuple[str, ...], ...]],
) -> list[EntitySpan]:
    """Gazetteer matching over token stems, longest candidate first, then
    leftmost; accepted spans never overlap.
    """
    candidates: list[tuple[int, int, int, int, str]] = []
    kind_order = {kind: i for i, kind in enumerate(ENTITY_KINDS)}
    for sentence in doc.sentences:
        stems = [tok.stem for tok in sentence.tokens]
        for kind, entries in gazetteers.items():
            if kind not in kind_order:
                raise ConfigError(f"unknown entity kind {kind!r}")
            for phrase in entries:
                width = len(phrase)
                for start in range(len(stems) - width + 1):
                    if tuple(stems[start : start + width]) == phrase:
                        candidates.append((-width, sentence.index, start, kind_order[kind], kind))
    spans: list[EntitySpan] = []
    taken: dict[int, list[tuple[int, int]]] = {}
    for neg_width, sent_idx, start, _, kind in sorted(candidates):
        end = start - neg_width
        if any(start < b and a < end for a, b in taken.get(sent_idx, [])):
            continue
        taken.setdefault(sent_idx, []).append((start, end))
        spans.append(EntitySpan(sentence_index=sent_idx, token_range=(start, end), kind=kind))
    spans.sort(key=lambda s: (s.sentence_index, s.token_range))
    return spans


def token_sentiment(token: Token, lex: LexiconSet) -> str:
    """'Positive', 'Negative', or 'Neutral'; the polarity lists are disjoint
    by the lexicon loader's invariant, so the order of checks is immaterial.
    """
    if lex.contains("PositiveSent", token.stem):
        return "Positive"
    if lex.contains("NegativeSent", token.stem):
        return "Negative"
    return "Neutral"


class RuleBasedSpeechActAnnotator:
    """Default annotator: wraps classify_speech_acts for a batch of docs."""

    def __init__(self, lex: LexiconSet):
        self.lex = lex

    def annotate(self, docs: list[ProcessedDocument]) -> list[SAFlags]:
        return [classify_speech_acts(doc, self.lex) for doc in docs]


class ExternalSpeechActAnnotator:
    """Pipe documents through a user-supplied executable.

    Protocol: one JSON object per line on stdin, `{"id": ..., "sentences":
    [...]}`; the command must answer with one JSON object per line carrying
    the five boolean flags, in the same order.
    """

    def __init__(self, command: str):
        self.command = command

    def annotate(self, docs: list[ProcessedDocument]) -> list[SAFlags]:
        payload = "".join(
            json.dumps({"id": doc.id, "sentences": [s.text for s in doc.sentences]}) + "\n"
            for doc in docs
        )
        try:
            proc = subprocess.run(
                [self.command],
                input=payload.encode("utf-8"),
                stdout=subprocess.PIPE,
                check=True,
            )
        except OSError as exc:
            raise ConfigError(f"cannot run speech-act command {self.command!r}: {exc}") from exc
        except subprocess.CalledProcessError as exc:
            raise DataError(f"speech-act command failed with status {exc.returncode}") from exc
        lines = proc.stdout.decode("utf-8").splitlines()
        if len(lines) != len(docs):
            raise DataError(
                f"speech-act command answered {len(lines)} lines for {len(docs)} documents"
            )
        flags = []
        for doc, line in zip(docs, lines):
            record = json.loads(line)
            if record.get("id") != doc.id:
                raise DataError(f"speech-act reply out of order: expected {doc.id!r}, got {record.get('id')!r}")
            parsed = SAFlags(
                threat=bool(record.get("threat", False)),
                request=bool(record.get("request", False)),
                declarative=bool(record.get("declarative", False)),
                quotation=bool(record.get("quotation", False)),
                question=bool(record.get("question", False)),
            )
            if not any(parsed.as_dict().values()):
                # Declarative is the fallback class; never let an external
                # model produce an all-false document.
                parsed = SAFlags(declarative=True)
            flags.append(parsed)
        return flags
