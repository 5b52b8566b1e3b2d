"""Command-line front end: `spr extract|weigh|score|classify|stats|synth`.

One JSON config file names the rule/lexicon/dictionary paths; flags override
config values. All randomness flows from a single --seed through named
sub-streams, outputs are written atomically, and reruns with identical inputs
produce byte-identical files. Exit codes: 0 success, 1 configuration error,
2 data error, 3 internal error. Diagnostics go to stderr as
`LEVEL<TAB>code<TAB>message` lines.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import annotate, corpus, features, lexicon, scoring, stats, synth, textprep
from .errors import ConfigError, DataError, SPRError
from .ioutil import atomic_write_text, fmt_float
from .learn import (
    PSOConfig,
    RFConfig,
    ablation_spr,
    evaluation_folds,
    pso_weight_features,
    run_folds,
)

DEFAULT_SEED = 42


def diag(level: str, code: str, message: str) -> None:
    print(f"{level}\t{code}\t{message}", file=sys.stderr)


@dataclass
class RunConfig:
    """Validated experiment configuration; every referenced path must exist."""

    lexicons: str | None = None
    rules: str | None = None
    pos_dict: str | None = None
    suffixes: str | None = None
    spell_dict: str | None = None
    gazetteers: str | None = None
    weights: str | None = None
    corpus_path: str | None = None
    corpus_format: str = "jsonl"
    seed: int = DEFAULT_SEED
    pso: dict = field(default_factory=dict)
    rf: dict = field(default_factory=dict)
    cv_k: int = 10
    speech_acts: str = "rulebased"
    speech_acts_cmd: str | None = None
    degree_suffixes: features.DegreeSuffixes = features.DEFAULT_DEGREE_SUFFIXES

    @classmethod
    def from_file(cls, path: str | None) -> "RunConfig":
        if path is None:
            return cls()
        try:
            with open(path, encoding="utf-8") as handle:
                raw = json.load(handle)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed config {path}: {exc}") from exc
        paths = raw.get("paths", {})
        base = os.path.dirname(os.path.abspath(path))

        def resolve(key):
            value = paths.get(key)
            if value is None:
                return None
            return value if os.path.isabs(value) else os.path.join(base, value)

        annotators = raw.get("annotators", {})
        degree_cfg = raw.get("degree_suffixes")
        degrees = features.DEFAULT_DEGREE_SUFFIXES
        if degree_cfg:
            degrees = features.DegreeSuffixes(
                superlative=tuple(degree_cfg.get("superlative", degrees.superlative)),
                comparative=tuple(degree_cfg.get("comparative", degrees.comparative)),
                ordinal=tuple(degree_cfg.get("ordinal", degrees.ordinal)),
            )
        cfg = cls(
            lexicons=resolve("lexicons"),
            rules=resolve("rules"),
            pos_dict=resolve("pos_dict"),
            suffixes=resolve("suffixes"),
            spell_dict=resolve("spell_dict"),
            gazetteers=resolve("gazetteers"),
            weights=resolve("weights"),
            corpus_path=resolve("corpus"),
            corpus_format=raw.get("corpus_format", "jsonl"),
            seed=int(raw.get("seed", DEFAULT_SEED)),
            pso=raw.get("pso", {}),
            rf=raw.get("rf", {}),
            cv_k=int(raw.get("cv", {}).get("k", 10)),
            speech_acts=annotators.get("speech_acts", "rulebased"),
            speech_acts_cmd=annotators.get("speech_acts_cmd"),
            degree_suffixes=degrees,
        )
        cfg.validate_paths()
        return cfg

    def validate_paths(self) -> None:
        for name in ("rules", "pos_dict", "suffixes", "spell_dict", "gazetteers", "weights", "corpus_path"):
            value = getattr(self, name)
            if value is not None and not os.path.isfile(value):
                raise ConfigError(f"configured path does not exist: {name} = {value}")
        if self.lexicons is not None and not os.path.isdir(self.lexicons):
            raise ConfigError(f"configured path does not exist: lexicons = {self.lexicons}")
        if self.speech_acts not in ("rulebased", "external-cmd"):
            raise ConfigError(f"unknown speech-act annotator {self.speech_acts!r}")
        if self.speech_acts == "external-cmd" and not self.speech_acts_cmd:
            raise ConfigError("annotators.speech_acts_cmd is required for external-cmd")


@dataclass
class Pipeline:
    rules: textprep.NormRules
    stemmer: textprep.Stemmer
    pos_dict: dict[str, str]
    spell_dict: frozenset[str]
    lexicons: lexicon.LexiconSet
    gazetteers: dict
    degrees: features.DegreeSuffixes
    annotator: object


def build_pipeline(cfg: RunConfig) -> Pipeline:
    for name in ("lexicons", "pos_dict", "spell_dict"):
        if getattr(cfg, name) is None:
            raise ConfigError(f"config is missing required path {name!r}")
    rules = textprep.NormRules.from_file(cfg.rules) if cfg.rules else textprep.NormRules.identity()
    stemmer = textprep.Stemmer.from_file(cfg.suffixes) if cfg.suffixes else textprep.Stemmer.identity()
    lex = lexicon.load_lexicons(cfg.lexicons, rules, stemmer)
    gazetteers = (
        annotate.load_gazetteers(cfg.gazetteers, rules, stemmer) if cfg.gazetteers else {}
    )
    if cfg.speech_acts == "external-cmd":
        annotator = annotate.ExternalSpeechActAnnotator(cfg.speech_acts_cmd)
    else:
        annotator = annotate.RuleBasedSpeechActAnnotator(lex)
    return Pipeline(
        rules=rules,
        stemmer=stemmer,
        pos_dict=textprep.load_pos_dict(cfg.pos_dict, rules),
        spell_dict=textprep.load_spell_dictionary(cfg.spell_dict, rules),
        lexicons=lex,
        gazetteers=gazetteers,
        degrees=cfg.degree_suffixes,
        annotator=annotator,
    )


def extract_corpus(corp: corpus.Corpus, pipe: Pipeline):
    """Run the full pipeline over a corpus.

    Returns (matrix rows, rejects); a reject is (id, reason) for documents
    that cannot be scored (nothing left after preprocessing).
    """
    docs, labels, rejects = [], [], []
    for record in corp.records:
        try:
            doc = textprep.preprocess(record.id, record.text, pipe.rules, pipe.stemmer, pipe.pos_dict)
        except DataError as exc:
            rejects.append((record.id, str(exc)))
            continue
        docs.append(doc)
        labels.append(record.label)
    flags = pipe.annotator.annotate(docs)
    rows = []
    for doc, label, sa in zip(docs, labels, flags):
        entities = tuple(annotate.recognize_entities(doc, pipe.gazetteers))
        annotations = annotate.DocumentAnnotations(speech_acts=sa, entities=entities)
        fv = features.extract_all(doc, pipe.lexicons, annotations, pipe.spell_dict, pipe.degrees)
        rows.append((doc.id, fv, label))
    return rows, rejects


def _load_labeled_matrix(path: str):
    ids, X, y = corpus.matrix_arrays(corpus.load_matrix(path))
    if y is None:
        raise DataError(f"matrix {path} has no labels; this command needs labeled rows")
    if np.unique(y).size < 2:
        raise DataError(f"matrix {path} contains a single class")
    return ids, X, y


def _load_weights_arg(path: str | None) -> scoring.WeightVector:
    if path is None:
        return scoring.WeightVector.unit()
    return corpus.load_weights(path)


def _json_dump(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------- commands


def cmd_extract(args) -> int:
    cfg = RunConfig.from_file(args.config)
    if args.corpus:
        cfg.corpus_path = args.corpus
    if args.format:
        cfg.corpus_format = args.format
    if cfg.corpus_path is None:
        raise ConfigError("no corpus given: pass --corpus or set paths.corpus in the config")
    if not os.path.isfile(cfg.corpus_path):
        raise ConfigError(f"corpus file does not exist: {cfg.corpus_path}")
    pipe = build_pipeline(cfg)
    corp = corpus.load_corpus(cfg.corpus_path, cfg.corpus_format)
    rows, rejects = extract_corpus(corp, pipe)
    for rid, reason in rejects:
        diag("W", "REJECT", f"{rid}: {reason}")
    corpus.save_matrix(rows, args.out)
    diag("I", "EXTRACT", f"wrote {len(rows)} rows to {args.out} ({len(rejects)} rejected)")
    return 0


def cmd_weigh(args) -> int:
    cfg = RunConfig.from_file(args.config)
    _, X, y = _load_labeled_matrix(args.matrix)
    pso_kwargs = dict(cfg.pso)
    for key, flag in (
        ("swarm_size", args.swarm),
        ("max_iter", args.iters),
        ("inertia", args.inertia),
        ("cognitive", args.c1),
        ("social", args.c2),
        ("velocity_clamp", args.vclamp),
        ("inner_k", args.inner_k),
    ):
        if flag is not None:
            pso_kwargs[key] = flag
    pso_kwargs["seed"] = args.seed if args.seed is not None else cfg.seed
    result = pso_weight_features(X, y, PSOConfig(**pso_kwargs))
    corpus.save_weights(result.weights, args.out)
    trace_path = args.trace or args.out + ".trace.csv"
    trace_lines = ["iteration,gbest_fitness"]
    trace_lines += [f"{i},{fmt_float(v)}" for i, v in enumerate(result.trace)]
    atomic_write_text(trace_path, "\n".join(trace_lines) + "\n")
    diag("I", "WEIGH", f"best fitness {fmt_float(result.fitness)}; weights in {args.out}")
    return 0


def cmd_score(args) -> int:
    rows = corpus.load_matrix(args.matrix)
    weights = _load_weights_arg(args.weights)
    lines = []
    for rid, fv, _ in rows:
        breakdown = scoring.spr(fv, weights)
        fieldstr = ", ".join(
            f'"{name}": {fmt_float(value)}' for name, value in breakdown.as_dict().items()
        )
        lines.append(f'{{"id": {json.dumps(rid, ensure_ascii=False)}, {fieldstr}}}')
    atomic_write_text(args.out, "\n".join(lines) + "\n")
    diag("I", "SCORE", f"wrote {len(lines)} score lines to {args.out}")
    return 0


def _rf_config(cfg: RunConfig, args) -> RFConfig:
    rf_kwargs = dict(cfg.rf)
    if args.trees is not None:
        rf_kwargs["n_trees"] = args.trees
    return RFConfig(**rf_kwargs)


def cmd_classify(args) -> int:
    cfg = RunConfig.from_file(args.config)
    _, X, y = _load_labeled_matrix(args.matrix)
    weights = _load_weights_arg(args.weights)
    seed = args.seed if args.seed is not None else cfg.seed
    k = args.k if args.k is not None else cfg.cv_k
    rf_config = _rf_config(cfg, args)
    payload = {"model": args.model, "k": k, "seed": seed, "arm": args.arm}
    if args.arm == "both":
        result = ablation_spr(X, y, weights, k=k, seed=seed, model=args.model, rf_config=rf_config)
        payload["arms"] = {
            "without_spr": result.without_spr.as_dict(),
            "with_spr": result.with_spr.as_dict(),
        }
        payload["fold_assignment"] = [int(f) for f in result.folds]
        payload["folds_identical"] = True
    else:
        folds = evaluation_folds(y, k, seed)
        matrix = X
        if args.arm == "with_spr":
            spr_column = np.array([scoring.spr(row, weights).spr for row in X])
            matrix = np.column_stack([X, spr_column])
        metrics = run_folds(matrix, y, folds, model=args.model, seed=seed, rf_config=rf_config)
        payload["arms"] = {args.arm: metrics.as_dict()}
        payload["fold_assignment"] = [int(f) for f in folds]
    atomic_write_text(args.out, _json_dump(payload))
    diag("I", "CLASSIFY", f"wrote metrics to {args.out}")
    return 0


def _stats_series(X, y, weights):
    """The 44 analysed series: every feature column plus Amb, Imp, SPR."""
    series = [(name, X[:, i]) for i, name in enumerate(features.ALL_FEATURES)]
    breakdowns = [scoring.spr(row, weights) for row in X]
    series.append(("Amb", np.array([b.amb for b in breakdowns])))
    series.append(("Imp", np.array([b.imp for b in breakdowns])))
    series.append(("SPR", np.array([b.spr for b in breakdowns])))
    return series, breakdowns


def cmd_stats(args) -> int:
    _, X, y = _load_labeled_matrix(args.matrix)
    weights = _load_weights_arg(args.weights)
    series, breakdowns = _stats_series(X, y, weights)
    fr = y == int(corpus.ClassLabel.FR)
    tr = y == int(corpus.ClassLabel.TR)
    report_rows = []
    boxplot_lines = ["feature,class,min,q1,median,q3,max"]
    for name, values in series:
        a, b = values[fr], values[tr]
        equal = stats.ttest(a, b, stats.EQUAL_VAR)
        welch = stats.ttest(a, b, stats.WELCH)
        levene_w, levene_p = stats.levene(a, b)
        five = {"FR": stats.five_number(a), "TR": stats.five_number(b)}
        report_rows.append(
            {
                "name": name,
                "mean_FR": float(np.mean(a)),
                "mean_TR": float(np.mean(b)),
                "t": equal.t,
                "df": equal.df,
                "p": equal.p_two_tailed,
                "significant": equal.p_two_tailed < 0.05,
                "levene_W": levene_w,
                "levene_p": levene_p,
                "equal_var": equal.as_dict(),
                "welch": welch.as_dict(),
                "fivenum_FR": five["FR"].as_dict(),
                "fivenum_TR": five["TR"].as_dict(),
            }
        )
        for cls in ("FR", "TR"):
            f = five[cls]
            boxplot_lines.append(
                f"{name},{cls},{fmt_float(f.min)},{fmt_float(f.q1)},{fmt_float(f.median)},"
                f"{fmt_float(f.q3)},{fmt_float(f.max)}"
            )
    averages = stats.class_averages(
        [(corpus.ClassLabel(int(label)), bd) for label, bd in zip(y, breakdowns)]
    )
    payload = {"rows": report_rows, "class_averages": averages}
    atomic_write_text(args.out, _json_dump(payload))
    if args.boxplot_csv:
        atomic_write_text(args.boxplot_csv, "\n".join(boxplot_lines) + "\n")
    diag("I", "STATS", f"wrote {len(report_rows)} rows to {args.out}")
    return 0


def cmd_synth(args) -> int:
    cfg = synth.SynthConfig(
        n_per_class=args.n,
        min_sentences=args.sentences[0],
        max_sentences=args.sentences[1],
        min_tokens=args.tokens[0],
        max_tokens=args.tokens[1],
        fr_density=args.fr_density,
        tr_density=args.tr_density,
        seed=args.seed if args.seed is not None else DEFAULT_SEED,
    )
    if not os.path.isdir(args.lexicons):
        raise ConfigError(f"lexicon directory does not exist: {args.lexicons}")
    corp = synth.generate_corpus(cfg, args.lexicons)
    corpus.save_corpus(corp, args.out)
    if args.truth:
        atomic_write_text(args.truth, _json_dump(cfg.truth()))
    diag("I", "SYNTH", f"wrote {len(corp)} documents to {args.out}")
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spr", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="compute the 41-feature matrix for a corpus")
    p.add_argument("--config", required=True)
    p.add_argument("--corpus", help="corpus path (overrides config)")
    p.add_argument("--format", choices=["jsonl", "csv"])
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("weigh", help="learn per-feature weights by particle swarm")
    p.add_argument("--config")
    p.add_argument("--matrix", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--trace", help="fitness trace CSV (default: <out>.trace.csv)")
    p.add_argument("--seed", type=int)
    p.add_argument("--swarm", type=int)
    p.add_argument("--iters", type=int)
    p.add_argument("--inertia", type=float)
    p.add_argument("--c1", type=float)
    p.add_argument("--c2", type=float)
    p.add_argument("--vclamp", type=float)
    p.add_argument("--inner-k", type=int, dest="inner_k")
    p.set_defaults(func=cmd_weigh)

    p = sub.add_parser("score", help="score documents from a feature matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--weights")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("classify", help="FR/TR cross-validated classification")
    p.add_argument("--config")
    p.add_argument("--matrix", required=True)
    p.add_argument("--weights")
    p.add_argument("--arm", choices=["without_spr", "with_spr", "both"], default="both")
    p.add_argument("--model", choices=["rf", "linear"], default="rf")
    p.add_argument("--k", type=int)
    p.add_argument("--trees", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("stats", help="per-feature significance tests and class averages")
    p.add_argument("--matrix", required=True)
    p.add_argument("--weights")
    p.add_argument("--out", required=True)
    p.add_argument("--boxplot-csv", dest="boxplot_csv")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("synth", help="generate a synthetic labeled corpus")
    p.add_argument("--lexicons", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--truth", help="write the generator's ground-truth parameters here")
    p.add_argument("--n", type=int, default=200, help="documents per class")
    p.add_argument("--fr-density", type=float, default=0.35, dest="fr_density")
    p.add_argument("--tr-density", type=float, default=0.15, dest="tr_density")
    p.add_argument("--sentences", type=int, nargs=2, default=[2, 5], metavar=("MIN", "MAX"))
    p.add_argument("--tokens", type=int, nargs=2, default=[4, 9], metavar=("MIN", "MAX"))
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        diag("E", "CONFIG", str(exc))
        return 1
    except DataError as exc:
        diag("E", "DATA", str(exc))
        return 2
    except SPRError as exc:
        diag("E", "INTERNAL", str(exc))
        return 3
    except Exception as exc:  # noqa: BLE001 - the CLI boundary reports, not raises
        diag("E", "INTERNAL", f"{type(exc).__name__}: {exc}")
        return 3


if __name__ == "__main__":
    sys.exit(main())
