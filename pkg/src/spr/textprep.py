"""Text preprocessing: normalization, sentence splitting, tokenization,
dictionary POS tagging, suffix stemming, and typo detection.

All language-specific behaviour lives in rule files (normalization rules, a
stem->POS dictionary, a suffix list, a spell dictionary), so the pipeline code
itself stays language-neutral.  The shipped demo rules are English plus a few
Persian entries; real deployments drop in their own files.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass, replace

from .errors import ConfigError, DegenerateDocumentError, EmptyDocumentError

POS_TAGS = ("Noun", "Verb", "Adj", "Adv", "AdvTime", "Pronoun", "Number", "Punct", "Other")

# Sentence terminators. The Arabic question mark is included because the
# target corpora are Persian; it costs nothing for other languages.
SENTENCE_TERMINALS = frozenset({".", "!", "?", "؟", "\n"})

# A stripped stem must keep at least this many characters, so short function
# words ("is", "us") survive suffix stripping intact.
MIN_STEM_LEN = 2


def _is_punct_char(ch: str) -> bool:
    return unicodedata.category(ch)[0] in ("P", "S")


@dataclass(frozen=True)
class Token:
    surface: str
    normalized: str
    stem: str
    pos: str
    span: tuple[int, int]

    @property
    def is_term(self) -> bool:
        return self.pos != "Punct"


@dataclass(frozen=True)
class Sentence:
    index: int
    text: str
    tokens: tuple[Token, ...]


@dataclass(frozen=True)
class ProcessedDocument:
    id: str
    sentences: tuple[Sentence, ...]
    vocab: frozenset[str]
    term_count: int

    def tokens(self):
        for sentence in self.sentences:
            yield from sentence.tokens


class NormRules:
    """Normalization rule table: codepoint map, phrase map, spacing rules.

    Applied in that fixed order. Loading verifies the closure is idempotent:
    every mapped-to codepoint must be a fixed point, every phrase replacement
    must survive the phrase pass unchanged, and the full pipeline is probed
    against its own rule material.
    """

    def __init__(self, char_map=None, phrase_map=None, spacing_rules=None):
        self.char_map = dict(char_map or {})
        self.phrase_map = dict(phrase_map or {})
        self.spacing_rules = [tuple(rule) for rule in (spacing_rules or [])]
        self._validate()
        self._table = {ord(src): dst for src, dst in self.char_map.items()}
        if self.phrase_map:
            keys = sorted(self.phrase_map, key=len, reverse=True)
            self._phrase_re = re.compile("|".join(re.escape(k) for k in keys))
        else:
            self._phrase_re = None
        self._spacing = [(re.compile(pat), repl) for pat, repl in self.spacing_rules]
        self._check_idempotent()

    def _validate(self):
        for src, dst in self.char_map.items():
            if len(src) != 1 or len(dst) != 1:
                raise ConfigError(f"char_map entries must be single codepoints: {src!r} -> {dst!r}")
            if self.char_map.get(dst, dst) != dst:
                raise ConfigError(f"char_map chains through {dst!r}; mapped-to codepoints must be fixed points")
        for phrase, repl in self.phrase_map.items():
            if not phrase:
                raise ConfigError("phrase_map keys must be non-empty")
            if self._phrase_apply_raw(repl) != repl:
                raise ConfigError(f"phrase_map replacement {repl!r} is itself rewritten; rules must be idempotent")

    def _phrase_apply_raw(self, text):
        if not self.phrase_map:
            return text
        keys = sorted(self.phrase_map, key=len, reverse=True)
        pattern = re.compile("|".join(re.escape(k) for k in keys))
        return pattern.sub(lambda m: self.phrase_map[m.group(0)], text)

    def _check_idempotent(self):
        probe_parts = list(self.char_map) + list(self.char_map.values())
        probe_parts += list(self.phrase_map) + list(self.phrase_map.values())
        probe_parts += [repl for _, repl in self.spacing_rules]
        probe = " \t ".join(probe_parts) + " a  b\tc "
        once = self.apply(probe)
        if self.apply(once) != once:
            raise ConfigError("normalization rules are not idempotent on their own rule material")

    def apply(self, text: str) -> str:
        out = text.translate(self._table)
        if self._phrase_re is not None:
            out = self._phrase_re.sub(lambda m: self.phrase_map[m.group(0)], out)
        for pattern, repl in self._spacing:
            out = pattern.sub(repl, out)
        return out

    @classmethod
    def identity(cls) -> "NormRules":
        return cls()

    @classmethod
    def from_file(cls, path: str) -> "NormRules":
        try:
            with open(path, encoding="utf-8") as handle:
                raw = json.load(handle)
        except OSError as exc:
            raise ConfigError(f"cannot read normalization rules {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed normalization rules {path}: {exc}") from exc
        char_map = {chr(int(k, 16)): chr(int(v, 16)) for k, v in raw.get("char_map", {}).items()}
        return cls(char_map, raw.get("phrase_map", {}), raw.get("spacing_rules", []))


def normalize(raw: str, rules: NormRules) -> str:
    """Apply the rule table; idempotent for any rules that passed loading."""
    return rules.apply(raw)


def segment_sentences(text: str) -> list[str]:
    """Split normalized text on terminal punctuation.

    Runs of terminals stay attached to the preceding sentence, empty segments
    are dropped, and text without any terminal is one sentence.
    """
    if not text.strip():
        raise EmptyDocumentError("document is empty after normalization")
    sentences = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        if text[i] in SENTENCE_TERMINALS:
            j = i
            while j < n and text[j] in SENTENCE_TERMINALS:
                j += 1
            segment = text[start:j].strip()
            if segment:
                sentences.append(segment)
            start = j
            i = j
        else:
            i += 1
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    if not sentences:
        raise EmptyDocumentError("document contains only sentence terminators")
    return sentences


def tokenize(sentence: str) -> list[Token]:
    """Split a sentence into word and punctuation tokens (stem/pos unset).

    Whitespace separates chunks; leading and trailing punctuation peels off as
    separate tokens, with a run of one repeated punctuation character kept as
    a single token ("?????" stays whole). Punctuation inside a word is
    preserved, as are repeated letters ("helllllloooo").
    """
    tokens: list[Token] = []
    for match in re.finditer(r"\S+", sentence):
        chunk = match.group(0)
        offset = match.start()
        i, j = 0, len(chunk)
        leading: list[tuple[int, int]] = []
        while i < j and _is_punct_char(chunk[i]):
            run_start, ch = i, chunk[i]
            while i < j and chunk[i] == ch:
                i += 1
            leading.append((run_start, i))
        trailing: list[tuple[int, int]] = []
        while j > i and _is_punct_char(chunk[j - 1]):
            run_end, ch = j, chunk[j - 1]
            while j > i and chunk[j - 1] == ch:
                j -= 1
            trailing.append((j, run_end))
        spans = leading + ([(i, j)] if j > i else []) + list(reversed(trailing))
        for a, b in spans:
            surface = chunk[a:b]
            tokens.append(
                Token(
                    surface=surface,
                    normalized=surface.casefold(),
                    stem="",
                    pos="",
                    span=(offset + a, offset + b),
                )
            )
    return tokens


class Stemmer:
    """Single-pass longest-suffix stripper over a configurable suffix list."""

    def __init__(self, suffixes):
        self.suffixes = tuple(sorted(set(suffixes), key=lambda s: (-len(s), s)))

    def stem(self, word: str) -> str:
        for suffix in self.suffixes:
            if word.endswith(suffix) and len(word) - len(suffix) >= MIN_STEM_LEN:
                return word[: -len(suffix)]
        return word

    @classmethod
    def from_file(cls, path: str) -> "Stemmer":
        return cls(load_wordlist(path))

    @classmethod
    def identity(cls) -> "Stemmer":
        return cls(())


def stem_tokens(tokens: list[Token], stemmer: Stemmer) -> list[Token]:
    out = []
    for tok in tokens:
        if tok.normalized and all(_is_punct_char(c) for c in tok.normalized):
            out.append(replace(tok, stem=tok.normalized))
        else:
            out.append(replace(tok, stem=stemmer.stem(tok.normalized)))
    return out


def pos_tag(tokens: list[Token], pos_dict: dict[str, str]) -> list[Token]:
    """Assign one POS tag per token: punctuation and digit runs are detected
    structurally, everything else is a dictionary lookup on the stem with
    Noun as the default.
    """
    out = []
    for tok in tokens:
        if tok.normalized and all(_is_punct_char(c) for c in tok.normalized):
            pos = "Punct"
        elif tok.normalized.isdigit():
            pos = "Number"
        else:
            pos = pos_dict.get(tok.stem, "Noun")
        out.append(replace(tok, pos=pos))
    return out


def preprocess(
    doc_id: str,
    text: str,
    rules: NormRules,
    stemmer: Stemmer,
    pos_dict: dict[str, str],
) -> ProcessedDocument:
    """Run the full pipeline on one document.

    Raises EmptyDocumentError / DegenerateDocumentError for documents the
    feature extractor cannot score (no sentences, or no countable terms).
    """
    normalized = normalize(text, rules)
    sentences = []
    for index, sentence_text in enumerate(segment_sentences(normalized)):
        tokens = pos_tag(stem_tokens(tokenize(sentence_text), stemmer), pos_dict)
        sentences.append(Sentence(index=index, text=sentence_text, tokens=tuple(tokens)))
    terms = [tok for sentence in sentences for tok in sentence.tokens if tok.is_term]
    if not terms:
        raise DegenerateDocumentError(f"document {doc_id!r} has no countable terms")
    return ProcessedDocument(
        id=doc_id,
        sentences=tuple(sentences),
        vocab=frozenset(tok.stem for tok in terms),
        term_count=len(terms),
    )


def damerau_levenshtein(a: str, b: str, cap: int = 2) -> int:
    """Optimal-string-alignment distance, early-exited once it exceeds `cap`.

    Returns cap + 1 when the true distance is larger than cap.
    """
    if abs(len(a) - len(b)) > cap:
        return cap + 1
    if a == b:
        return 0
    rows = len(a) + 1
    cols = len(b) + 1
    prev2: list[int] = []
    prev = list(range(cols))
    for i in range(1, rows):
        cur = [i] + [0] * (len(b))
        for j in range(1, cols):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            best = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
            if i > 1 and j > 1 and a[i - 1] == b[j - 2] and a[i - 2] == b[j - 1]:
                best = min(best, prev2[j - 2] + 1)
            cur[j] = best
        if min(cur) > cap:
            return cap + 1
        prev2, prev = prev, cur
    return min(prev[-1], cap + 1)


def is_misspelled(token: Token, dictionary: frozenset[str] | set[str]) -> bool:
    """A token is a typo when it is a lexical word missing from the dictionary
    but within edit distance 2 of some dictionary word. Far-from-everything
    words are treated as out-of-vocabulary, not typos.
    """
    if not dictionary:
        raise ConfigError("spell dictionary is empty")
    if token.pos in ("Number", "Punct"):
        return False
    word = token.normalized
    if word in dictionary:
        return False
    for candidate in dictionary:
        if abs(len(candidate) - len(word)) <= 2 and damerau_levenshtein(word, candidate, 2) <= 2:
            return True
    return False


def load_wordlist(path: str, rules: NormRules | None = None) -> list[str]:
    """One entry per line, UTF-8; blank lines and `#` comments skipped."""
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read word list {path}: {exc}") from exc
    entries = []
    for line in lines:
        entry = line.strip()
        if not entry or entry.startswith("#"):
            continue
        if rules is not None:
            entry = normalize(entry, rules).casefold()
        entries.append(entry)
    return entries


def load_spell_dictionary(path: str, rules: NormRules) -> frozenset[str]:
    return frozenset(load_wordlist(path, rules))


def load_pos_dict(path: str, rules: NormRules) -> dict[str, str]:
    """TSV `stem<TAB>pos`; stems are normalized and casefolded on load."""
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read POS dictionary {path}: {exc}") from exc
    table: dict[str, str] = {}
    for lineno, line in enumerate(lines, start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ConfigError(f"{path}:{lineno}: expected `stem<TAB>pos`, got {line!r}")
        stem, pos = parts[0].strip(), parts[1].strip()
        if pos not in POS_TAGS:
            raise ConfigError(f"{path}:{lineno}: unknown POS tag {pos!r}")
        table[normalize(stem, rules).casefold()] = pos
    return table
