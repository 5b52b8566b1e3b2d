import json
import os

import numpy as np
import pytest

from spr.corpus import (
    ClassLabel,
    Corpus,
    RawRecord,
    load_corpus,
    load_matrix,
    load_weights,
    matrix_arrays,
    save_corpus,
    save_matrix,
    save_weights,
)
from spr.errors import DataError
from spr.features import ALL_FEATURES, FeatureVector, N_FEATURES
from spr.scoring import WeightVector


def _write_jsonl(path, rows):
    with open(path, "w", encoding="utf-8") as handle:
        for row in rows:
            handle.write(json.dumps(row, ensure_ascii=False) + "\n")


class TestLoadCorpus:
    def test_two_labeled_lines(self, tmp_path):
        path = tmp_path / "c.jsonl"
        _write_jsonl(path, [
            {"id": "a", "text": "first", "label": "FR"},
            {"id": "b", "text": "second", "label": "TR"},
        ])
        corp = load_corpus(str(path))
        assert corp.label_counts == {ClassLabel.FR: 1, ClassLabel.TR: 1}
        assert [r.id for r in corp.records] == ["a", "b"]

    def test_unknown_label_names_line(self, tmp_path):
        path = tmp_path / "c.jsonl"
        _write_jsonl(path, [{"id": "a", "text": "x", "label": "MAYBE"}])
        with pytest.raises(DataError, match=":1"):
            load_corpus(str(path))

    def test_duplicate_id(self, tmp_path):
        path = tmp_path / "c.jsonl"
        _write_jsonl(path, [
            {"id": "a1", "text": "x"},
            {"id": "a1", "text": "y"},
        ])
        with pytest.raises(DataError, match="a1"):
            load_corpus(str(path))

    def test_empty_text_rejected(self, tmp_path):
        path = tmp_path / "c.jsonl"
        _write_jsonl(path, [{"id": "a", "text": ""}])
        with pytest.raises(DataError):
            load_corpus(str(path))

    def test_empty_corpus_rejected(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text("")
        with pytest.raises(DataError, match="empty"):
            load_corpus(str(path))

    def test_malformed_line_number_reported(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text('{"id": "a", "text": "x"}\nnot json\n')
        with pytest.raises(DataError, match=":2"):
            load_corpus(str(path))

    def test_csv_round_trip(self, tmp_path):
        corp = Corpus(records=(
            RawRecord(id="a", text="first, with comma", label=ClassLabel.FR),
            RawRecord(id="b", text='second "quoted"', label=None, source="s"),
        ))
        path = tmp_path / "c.csv"
        save_corpus(corp, str(path), format="csv")
        again = load_corpus(str(path), format="csv")
        assert again.records[0].text == "first, with comma"
        assert again.records[1].source == "s"

    def test_jsonl_round_trip_preserves_order(self, tmp_path):
        corp = Corpus(records=tuple(
            RawRecord(id=f"r{i}", text=f"text {i}", label=ClassLabel(i % 2)) for i in range(7)
        ))
        path = tmp_path / "c.jsonl"
        save_corpus(corp, str(path))
        assert load_corpus(str(path)) == corp


class TestMatrix:
    def test_header_only_for_empty_rows(self, tmp_path):
        path = tmp_path / "m.csv"
        save_matrix([], str(path))
        content = path.read_text().splitlines()
        assert content == ["id,label," + ",".join(ALL_FEATURES)]

    def test_zero_row(self, tmp_path):
        path = tmp_path / "m.csv"
        save_matrix([("d", FeatureVector(np.zeros(N_FEATURES)), None)], str(path))
        line = path.read_text().splitlines()[1]
        assert line == "d,," + ",".join(["0"] * N_FEATURES)

    def test_round_trip_is_byte_identical(self, tmp_path):
        rng = np.random.default_rng(3)
        rows = [
            (f"d{i}", FeatureVector(rng.random(N_FEATURES)), ClassLabel(i % 2))
            for i in range(3)
        ]
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        save_matrix(rows, str(first))
        save_matrix(load_matrix(str(first)), str(second))
        assert first.read_bytes() == second.read_bytes()

    def test_header_mismatch_rejected(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("id,label,bogus\nx,,0\n")
        with pytest.raises(DataError, match="header"):
            load_matrix(str(path))

    def test_matrix_arrays_require_complete_labels(self, tmp_path):
        rows = [
            ("a", FeatureVector(np.zeros(N_FEATURES)), ClassLabel.FR),
            ("b", FeatureVector(np.zeros(N_FEATURES)), None),
        ]
        with pytest.raises(DataError, match="b"):
            matrix_arrays(rows)

    def test_matrix_arrays_unlabeled(self):
        rows = [("a", FeatureVector(np.zeros(N_FEATURES)), None)]
        ids, X, y = matrix_arrays(rows)
        assert ids == ["a"] and X.shape == (1, N_FEATURES) and y is None


class TestWeights:
    def test_round_trip(self, tmp_path):
        w = WeightVector(np.linspace(0, 1, N_FEATURES))
        path = tmp_path / "w.json"
        save_weights(w, str(path))
        again = load_weights(str(path))
        assert again.weights == pytest.approx(w.weights, abs=1e-11)

    def test_all_keys_required(self, tmp_path):
        payload = WeightVector.unit().as_dict()
        payload.pop("UT")
        path = tmp_path / "w.json"
        path.write_text(json.dumps(payload))
        with pytest.raises(DataError, match="UT"):
            load_weights(str(path))

    def test_range_validated(self, tmp_path):
        payload = WeightVector.unit().as_dict()
        payload["Fr"] = 2.0
        path = tmp_path / "w.json"
        path.write_text(json.dumps(payload))
        with pytest.raises(DataError):
            load_weights(str(path))
