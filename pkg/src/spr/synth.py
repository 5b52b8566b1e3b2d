"""Synthetic labeled corpora with class-conditional lexicon-hit densities.

Documents are built sentence by sentence: each token slot either draws a word
from one of the active lexicons (with the class's density) or a neutral
filler word. FR documents generated with a higher density than TR therefore
carry more emotion/ambiguity material, which the scoring law turns into a
higher spread power on average. The generator emits its ground-truth
parameters alongside so tests can check direction-level claims against them.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .corpus import ClassLabel, Corpus, RawRecord
from .errors import ConfigError

# Lexicons sampled by the generator; a mix of importance- and ambiguity-side
# lists so density moves both factors of the spread power.
DEFAULT_ACTIVE_LEXICONS = (
    "fear",
    "surprise",
    "sadness",
    "anger",
    "affective",
    "motion_verb",
    "sensory_verb",
    "uncertainty",
    "tentative",
    "anticipation",
    "example_word",
    "conditional",
    "general_term",
    "un_trust",
    "relative_time",
    "stat_word",
)

# Neutral vocabulary: never appears in a shipped lexicon and never starts
# with a negation affix.
FILLER_WORDS = (
    "table", "chair", "water", "road", "house", "tree", "car", "book",
    "window", "door", "river", "mountain", "city", "street", "garden",
    "school", "paper", "stone", "field", "lamp", "cloud", "bread", "glass",
    "wheel", "wall", "floor", "roof", "yard", "farm", "walk", "sit",
    "stand", "look", "open", "build", "carry", "draw", "paint", "cook",
    "small", "tall", "wide", "flat",
)

_SYNTH_STREAM = 0x5A17


@dataclass(frozen=True)
class SynthConfig:
    n_per_class: int = 200
    min_sentences: int = 2
    max_sentences: int = 5
    min_tokens: int = 4
    max_tokens: int = 9
    fr_density: float = 0.35
    tr_density: float = 0.15
    seed: int = 42
    lexicons: tuple[str, ...] = DEFAULT_ACTIVE_LEXICONS

    def truth(self) -> dict:
        return {
            "n_per_class": self.n_per_class,
            "fr_density": self.fr_density,
            "tr_density": self.tr_density,
            "seed": self.seed,
            "lexicons": list(self.lexicons),
        }


def load_surface_lists(lexicon_dir: str, names: tuple[str, ...]) -> dict[str, list[str]]:
    """Raw (unstemmed) lexicon entries, for generating natural-looking text."""
    lists: dict[str, list[str]] = {}
    for name in names:
        path = os.path.join(lexicon_dir, name + ".txt")
        if not os.path.isfile(path):
            raise ConfigError(f"generator lexicon not found: {path}")
        with open(path, encoding="utf-8") as handle:
            entries = [line.strip() for line in handle if line.strip() and not line.startswith("#")]
        if not entries:
            raise ConfigError(f"generator lexicon is empty: {path}")
        lists[name] = entries
    return lists


def _sentence(rng, density, lexicon_lists, names, n_tokens):
    words = []
    while len(words) < n_tokens:
        if rng.random() < density:
            name = names[rng.integers(0, len(names))]
            entries = lexicon_lists[name]
            entry = entries[rng.integers(0, len(entries))]
            words.extend(entry.split())
        else:
            words.append(FILLER_WORDS[rng.integers(0, len(FILLER_WORDS))])
    return " ".join(words[:n_tokens]) + "."


def generate_corpus(cfg: SynthConfig, lexicon_dir: str) -> Corpus:
    """Deterministic per seed; record ids encode class and index."""
    lexicon_lists = load_surface_lists(lexicon_dir, cfg.lexicons)
    rng = np.random.default_rng(np.random.SeedSequence([int(cfg.seed), _SYNTH_STREAM]))
    records = []
    for label, density in ((ClassLabel.FR, cfg.fr_density), (ClassLabel.TR, cfg.tr_density)):
        for i in range(cfg.n_per_class):
            n_sentences = int(rng.integers(cfg.min_sentences, cfg.max_sentences + 1))
            sentences = [
                _sentence(
                    rng,
                    density,
                    lexicon_lists,
                    cfg.lexicons,
                    int(rng.integers(cfg.min_tokens, cfg.max_tokens + 1)),
                )
                for _ in range(n_sentences)
            ]
            records.append(
                RawRecord(
                    id=f"{label.name.lower()}{i:05d}",
                    text=" ".join(sentences),
                    label=label,
                    source="synth",
                )
            )
    return Corpus(records=tuple(records))
