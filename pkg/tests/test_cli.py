import json
import os

import numpy as np
import pytest

from spr import cli
from spr.corpus import ClassLabel, load_matrix, load_weights, matrix_arrays, save_matrix
from spr.features import ALL_FEATURES, FEATURE_INDEX, N_FEATURES, FeatureVector
from spr.scoring import spr as spr_score

CONFIG = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data", "demo", "config.json")


def run(*argv):
    return cli.main(list(argv))


@pytest.fixture()
def golden_corpus(fixtures_dir):
    return os.path.join(fixtures_dir, "golden_corpus.jsonl")


@pytest.fixture()
def labeled_matrix(tmp_path):
    """A small labeled matrix with an informative first feature."""
    rng = np.random.default_rng(40)
    rows = []
    for i in range(60):
        label = ClassLabel(i % 2)
        values = rng.random(N_FEATURES)
        values[FEATURE_INDEX["Fr"]] = 0.9 if label == ClassLabel.TR else 0.1
        rows.append((f"d{i}", FeatureVector(values), label))
    path = tmp_path / "matrix.csv"
    save_matrix(rows, str(path))
    return str(path)


class TestExtract:
    def test_golden_corpus_reproduces_fixture_bytes(self, tmp_path, golden_corpus, fixtures_dir):
        out = tmp_path / "m.csv"
        assert run("extract", "--config", CONFIG, "--corpus", golden_corpus, "--out", str(out)) == 0
        golden = open(os.path.join(fixtures_dir, "golden_features.csv"), "rb").read()
        assert out.read_bytes() == golden

    def test_degenerate_document_rejected_with_warning(self, tmp_path, capsys):
        corpus_path = tmp_path / "c.jsonl"
        corpus_path.write_text(
            '{"id": "ok", "text": "A calm road."}\n{"id": "bad", "text": "?!."}\n'
        )
        out = tmp_path / "m.csv"
        assert run("extract", "--config", CONFIG, "--corpus", str(corpus_path), "--out", str(out)) == 0
        rows = load_matrix(str(out))
        assert [rid for rid, _, _ in rows] == ["ok"]
        err = capsys.readouterr().err
        assert any(line.startswith("W\tREJECT\tbad") for line in err.splitlines())

    def test_missing_config_path_is_exit_1(self, tmp_path, golden_corpus, capsys):
        bad_config = tmp_path / "cfg.json"
        bad_config.write_text(json.dumps({"paths": {"lexicons": "nowhere"}}))
        out = tmp_path / "m.csv"
        code = run("extract", "--config", str(bad_config), "--corpus", golden_corpus, "--out", str(out))
        assert code == 1
        assert "nowhere" in capsys.readouterr().err

    def test_missing_corpus_is_exit_1(self, tmp_path, capsys):
        out = tmp_path / "m.csv"
        assert run("extract", "--config", CONFIG, "--corpus", str(tmp_path / "nope.jsonl"), "--out", str(out)) == 1

    def test_no_partial_output_on_failure(self, tmp_path):
        corpus_path = tmp_path / "c.jsonl"
        corpus_path.write_text('{"id": "a", "text": "x", "label": "BAD"}\n')
        out = tmp_path / "m.csv"
        assert run("extract", "--config", CONFIG, "--corpus", str(corpus_path), "--out", str(out)) == 2
        assert not out.exists()


class TestWeigh:
    def test_seeded_rerun_is_byte_identical(self, tmp_path, labeled_matrix):
        out1, out2 = tmp_path / "w1.json", tmp_path / "w2.json"
        args = ["weigh", "--matrix", labeled_matrix, "--seed", "7",
                "--swarm", "6", "--iters", "3", "--inner-k", "3"]
        assert run(*args, "--out", str(out1)) == 0
        assert run(*args, "--out", str(out2)) == 0
        assert out1.read_bytes() == out2.read_bytes()
        t1 = (tmp_path / "w1.json.trace.csv").read_bytes()
        t2 = (tmp_path / "w2.json.trace.csv").read_bytes()
        assert t1 == t2

    def test_trace_is_non_decreasing(self, tmp_path, labeled_matrix):
        out = tmp_path / "w.json"
        assert run("weigh", "--matrix", labeled_matrix, "--seed", "3",
                   "--swarm", "6", "--iters", "4", "--inner-k", "3", "--out", str(out)) == 0
        lines = (tmp_path / "w.json.trace.csv").read_text().splitlines()
        assert lines[0] == "iteration,gbest_fitness"
        fitness = [float(line.split(",")[1]) for line in lines[1:]]
        assert fitness == sorted(fitness)
        weights = load_weights(str(out))
        assert np.all((weights.weights >= 0) & (weights.weights <= 1))

    def test_unlabeled_matrix_is_exit_2(self, tmp_path):
        rows = [(f"d{i}", FeatureVector(np.zeros(N_FEATURES)), None) for i in range(12)]
        path = tmp_path / "m.csv"
        save_matrix(rows, str(path))
        assert run("weigh", "--matrix", str(path), "--out", str(tmp_path / "w.json")) == 2


class TestScore:
    def test_zero_matrix_scores_zero(self, tmp_path):
        rows = [("a", FeatureVector(np.zeros(N_FEATURES)), None)]
        matrix = tmp_path / "m.csv"
        save_matrix(rows, str(matrix))
        out = tmp_path / "s.jsonl"
        assert run("score", "--matrix", str(matrix), "--out", str(out)) == 0
        record = json.loads(out.read_text().splitlines()[0])
        assert record == {"id": "a", "emo": 0, "nws": 0, "imp": 0, "amb": 0, "spr": 0}

    def test_breakdown_matches_library(self, tmp_path):
        rng = np.random.default_rng(41)
        fv = FeatureVector(rng.random(N_FEATURES))
        matrix = tmp_path / "m.csv"
        save_matrix([("doc", fv, None)], str(matrix))
        out = tmp_path / "s.jsonl"
        assert run("score", "--matrix", str(matrix), "--out", str(out)) == 0
        record = json.loads(out.read_text().splitlines()[0])
        expected = spr_score(fv)
        assert record["spr"] == pytest.approx(expected.spr, rel=1e-11)
        assert record["spr"] == pytest.approx(record["imp"] * record["amb"], rel=1e-9)


class TestClassify:
    def test_separable_matrix_scores_high(self, tmp_path, labeled_matrix):
        out = tmp_path / "metrics.json"
        assert run("classify", "--matrix", labeled_matrix, "--arm", "without_spr",
                   "--k", "5", "--trees", "25", "--seed", "2", "--out", str(out)) == 0
        payload = json.loads(out.read_text())
        assert payload["arms"]["without_spr"]["macro"]["f1"] >= 0.95

    def test_both_arms_share_folds(self, tmp_path, labeled_matrix):
        out = tmp_path / "metrics.json"
        assert run("classify", "--matrix", labeled_matrix, "--arm", "both",
                   "--k", "4", "--trees", "10", "--seed", "5", "--out", str(out)) == 0
        payload = json.loads(out.read_text())
        assert payload["folds_identical"] is True
        assert set(payload["arms"]) == {"without_spr", "with_spr"}
        assert len(payload["fold_assignment"]) == 60

    def test_single_class_is_exit_2(self, tmp_path):
        rows = [(f"d{i}", FeatureVector(np.zeros(N_FEATURES)), ClassLabel.FR) for i in range(10)]
        path = tmp_path / "m.csv"
        save_matrix(rows, str(path))
        assert run("classify", "--matrix", str(path), "--out", str(tmp_path / "x.json")) == 2


class TestStats:
    def test_identical_classes_have_p_one(self, tmp_path):
        rng = np.random.default_rng(42)
        base = [FeatureVector(rng.random(N_FEATURES)) for _ in range(4)]
        rows = [(f"fr{i}", fv, ClassLabel.FR) for i, fv in enumerate(base)]
        rows += [(f"tr{i}", fv, ClassLabel.TR) for i, fv in enumerate(base)]
        matrix = tmp_path / "m.csv"
        save_matrix(rows, str(matrix))
        out = tmp_path / "report.json"
        assert run("stats", "--matrix", str(matrix), "--out", str(out)) == 0
        payload = json.loads(out.read_text())
        assert len(payload["rows"]) == 44
        assert all(row["p"] == 1.0 for row in payload["rows"])
        assert all(not row["significant"] for row in payload["rows"])

    def test_report_carries_all_blocks(self, tmp_path, labeled_matrix):
        out = tmp_path / "report.json"
        boxplot = tmp_path / "box.csv"
        assert run("stats", "--matrix", labeled_matrix, "--out", str(out),
                   "--boxplot-csv", str(boxplot)) == 0
        payload = json.loads(out.read_text())
        names = [row["name"] for row in payload["rows"]]
        assert names == list(ALL_FEATURES) + ["Amb", "Imp", "SPR"]
        fr_row = payload["rows"][FEATURE_INDEX["Fr"]]
        assert fr_row["significant"] is True  # the planted informative feature
        assert {"FR", "TR"} == set(payload["class_averages"])
        box_lines = boxplot.read_text().splitlines()
        assert box_lines[0] == "feature,class,min,q1,median,q3,max"
        assert len(box_lines) == 1 + 44 * 2


class TestSynth:
    def test_determinism(self, tmp_path, demo_dir):
        lex_dir = os.path.join(demo_dir, "lexicons")
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        for out in (a, b):
            assert run("synth", "--lexicons", lex_dir, "--out", str(out),
                       "--n", "10", "--seed", "9") == 0
        assert a.read_bytes() == b.read_bytes()

    def test_zero_density_extracts_to_zero_lexicon_features(self, tmp_path, demo_dir):
        lex_dir = os.path.join(demo_dir, "lexicons")
        corpus_path = tmp_path / "c.jsonl"
        truth_path = tmp_path / "t.json"
        assert run("synth", "--lexicons", lex_dir, "--out", str(corpus_path),
                   "--truth", str(truth_path), "--n", "8",
                   "--fr-density", "0", "--tr-density", "0", "--seed", "3") == 0
        truth = json.loads(truth_path.read_text())
        assert truth["fr_density"] == 0.0
        out = tmp_path / "m.csv"
        assert run("extract", "--config", CONFIG, "--corpus", str(corpus_path), "--out", str(out)) == 0
        _, X, y = matrix_arrays(load_matrix(str(out)))
        for name in ("Fr", "Su", "Dsg", "Sad", "An", "Aff", "MV", "SV", "QW",
                     "Tntv", "Antcpnt", "Adv_Exm", "If", "GT", "UT", "Neg"):
            assert np.all(X[:, FEATURE_INDEX[name]] == 0.0), name

    def test_direction_fr_exceeds_tr(self, tmp_path, demo_dir):
        lex_dir = os.path.join(demo_dir, "lexicons")
        corpus_path = tmp_path / "c.jsonl"
        assert run("synth", "--lexicons", lex_dir, "--out", str(corpus_path),
                   "--n", "60", "--fr-density", "0.4", "--tr-density", "0.1",
                   "--seed", "4") == 0
        matrix = tmp_path / "m.csv"
        assert run("extract", "--config", CONFIG, "--corpus", str(corpus_path), "--out", str(matrix)) == 0
        _, X, y = matrix_arrays(load_matrix(str(matrix)))
        sprs = np.array([spr_score(row).spr for row in X])
        assert sprs[y == 0].mean() > sprs[y == 1].mean()
