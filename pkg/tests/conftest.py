import os
import sys

import pytest

REPO = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(REPO, "src"))

from spr import annotate, lexicon, textprep  # noqa: E402

DEMO = os.path.join(REPO, "data", "demo")
FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


@pytest.fixture(scope="session")
def demo_dir():
    return DEMO


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def rules():
    return textprep.NormRules.from_file(os.path.join(DEMO, "rules.json"))


@pytest.fixture(scope="session")
def stemmer():
    return textprep.Stemmer.from_file(os.path.join(DEMO, "suffixes.txt"))


@pytest.fixture(scope="session")
def pos_dict(rules):
    return textprep.load_pos_dict(os.path.join(DEMO, "pos_dict.tsv"), rules)


@pytest.fixture(scope="session")
def spell_dict(rules):
    return textprep.load_spell_dictionary(os.path.join(DEMO, "spell_dict.txt"), rules)


@pytest.fixture(scope="session")
def lexicons(rules, stemmer):
    return lexicon.load_lexicons(os.path.join(DEMO, "lexicons"), rules, stemmer)


@pytest.fixture(scope="session")
def gazetteers(rules, stemmer):
    return annotate.load_gazetteers(os.path.join(DEMO, "gazetteers.tsv"), rules, stemmer)


@pytest.fixture(scope="session")
def make_doc(rules, stemmer, pos_dict):
    """Run the real preprocessing pipeline on a text snippet."""

    def _make(text, doc_id="doc"):
        return textprep.preprocess(doc_id, text, rules, stemmer, pos_dict)

    return _make


@pytest.fixture(scope="session")
def annotate_doc(lexicons, gazetteers):
    def _annotate(doc):
        sa = annotate.classify_speech_acts(doc, lexicons)
        entities = tuple(annotate.recognize_entities(doc, gazetteers))
        return annotate.DocumentAnnotations(speech_acts=sa, entities=entities)

    return _annotate
