"""Labeled corpora, feature matrices, and weight files on disk.

Formats:
  corpus   JSONL, one object per line with keys id, text, optional label
           ("FR"|"TR"), optional source; or CSV with the same columns.
  matrix   CSV `id,label,<41 feature names>`, floats at 12 significant
           digits; round-trips losslessly as decimal text.
  weights  JSON object mapping every feature name to a weight in [0, 1].
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DataError
from .features import ALL_FEATURES, FeatureVector, N_FEATURES
from .ioutil import atomic_write_text, fmt_float
from .scoring import WeightVector


class ClassLabel(enum.IntEnum):
    FR = 0
    TR = 1

    @classmethod
    def parse(cls, text: str) -> "ClassLabel":
        try:
            return cls[text]
        except KeyError:
            raise DataError(f"unknown label {text!r}; expected FR or TR") from None


@dataclass(frozen=True)
class RawRecord:
    id: str
    text: str
    label: ClassLabel | None = None
    source: str | None = None


@dataclass(frozen=True)
class Corpus:
    records: tuple[RawRecord, ...]

    @property
    def label_counts(self) -> dict[ClassLabel, int]:
        counts = {ClassLabel.FR: 0, ClassLabel.TR: 0}
        for record in self.records:
            if record.label is not None:
                counts[record.label] += 1
        return counts

    def __len__(self) -> int:
        return len(self.records)


def _validate_records(records: list[RawRecord]) -> Corpus:
    if not records:
        raise DataError("corpus is empty")
    seen: set[str] = set()
    for record in records:
        if record.id in seen:
            raise DataError(f"duplicate record id {record.id!r}")
        seen.add(record.id)
    return Corpus(records=tuple(records))


def _record_from_mapping(mapping: dict, where: str) -> RawRecord:
    rid = str(mapping.get("id") or "").strip()
    text = mapping.get("text") or ""
    if not rid:
        raise DataError(f"{where}: record id is missing or empty")
    if not text:
        raise DataError(f"{where}: record {rid!r} has empty text")
    label_text = mapping.get("label")
    label = None
    if label_text not in (None, ""):
        try:
            label = ClassLabel.parse(str(label_text))
        except DataError as exc:
            raise DataError(f"{where}: {exc}") from None
    source = mapping.get("source")
    return RawRecord(id=rid, text=str(text), label=label, source=str(source) if source else None)


def load_corpus(path: str, format: str = "jsonl") -> Corpus:
    """Load and validate a labeled corpus. Order is preserved from the file."""
    if format not in ("jsonl", "csv"):
        raise DataError(f"unknown corpus format {format!r}")
    records: list[RawRecord] = []
    try:
        with open(path, encoding="utf-8", newline="") as handle:
            if format == "jsonl":
                for lineno, line in enumerate(handle, start=1):
                    if not line.strip():
                        continue
                    try:
                        obj = json.loads(line)
                    except json.JSONDecodeError as exc:
                        raise DataError(f"{path}:{lineno}: malformed JSON: {exc}") from None
                    records.append(_record_from_mapping(obj, f"{path}:{lineno}"))
            else:
                reader = csv.DictReader(handle)
                for lineno, row in enumerate(reader, start=2):
                    records.append(_record_from_mapping(row, f"{path}:{lineno}"))
    except OSError as exc:
        raise DataError(f"cannot read corpus {path}: {exc}") from exc
    return _validate_records(records)


def save_corpus(corpus: Corpus, path: str, format: str = "jsonl") -> None:
    if format not in ("jsonl", "csv"):
        raise DataError(f"unknown corpus format {format!r}")
    if format == "jsonl":
        lines = []
        for record in corpus.records:
            obj = {"id": record.id, "text": record.text}
            if record.label is not None:
                obj["label"] = record.label.name
            if record.source is not None:
                obj["source"] = record.source
            lines.append(json.dumps(obj, ensure_ascii=False))
        atomic_write_text(path, "\n".join(lines) + "\n")
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["id", "text", "label", "source"])
        for record in corpus.records:
            writer.writerow(
                [record.id, record.text, record.label.name if record.label else "", record.source or ""]
            )
        atomic_write_text(path, buffer.getvalue())


MatrixRow = tuple[str, FeatureVector, "ClassLabel | None"]


def save_matrix(rows: list[MatrixRow], path: str) -> None:
    """Write the feature matrix CSV; an empty row list yields a header-only
    file. Atomic: readers never see a partial matrix.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["id", "label", *ALL_FEATURES])
    for rid, fv, label in rows:
        if fv.values.shape != (N_FEATURES,):
            raise DataError(f"row {rid!r} has {fv.values.shape} features, expected {N_FEATURES}")
        writer.writerow(
            [rid, label.name if label is not None else ""]
            + [fmt_float(v) for v in fv.values]
        )
    atomic_write_text(path, buffer.getvalue())


def load_matrix(path: str) -> list[MatrixRow]:
    expected = ["id", "label", *ALL_FEATURES]
    rows: list[MatrixRow] = []
    try:
        with open(path, encoding="utf-8", newline="") as handle:
            reader = csv.reader(handle)
            header = next(reader, None)
            if header != expected:
                raise DataError(f"{path}: matrix header does not match the canonical feature order")
            for lineno, row in enumerate(reader, start=2):
                if len(row) != len(expected):
                    raise DataError(f"{path}:{lineno}: expected {len(expected)} columns, got {len(row)}")
                rid, label_text = row[0], row[1]
                label = ClassLabel.parse(label_text) if label_text else None
                try:
                    values = np.array([float(v) for v in row[2:]])
                except ValueError as exc:
                    raise DataError(f"{path}:{lineno}: {exc}") from None
                rows.append((rid, FeatureVector(values), label))
    except OSError as exc:
        raise DataError(f"cannot read matrix {path}: {exc}") from exc
    return rows


def matrix_arrays(rows: list[MatrixRow]) -> tuple[list[str], np.ndarray, np.ndarray | None]:
    """Split matrix rows into ids, an (n, 41) array, and a label array.

    The label array is None when no row is labeled; partially labeled
    matrices are rejected because every experiment needs complete labels.
    """
    ids = [rid for rid, _, _ in rows]
    X = np.array([fv.values for _, fv, _ in rows]) if rows else np.zeros((0, N_FEATURES))
    labels = [label for _, _, label in rows]
    if all(label is None for label in labels):
        return ids, X, None
    if any(label is None for label in labels):
        missing = [rid for (rid, _, label) in rows if label is None]
        raise DataError(f"matrix rows missing labels: {', '.join(missing[:5])}")
    return ids, X, np.array([int(label) for label in labels])


def save_weights(weights: WeightVector, path: str) -> None:
    payload = {name: float(weights.weights[i]) for i, name in enumerate(ALL_FEATURES)}
    text = json.dumps({k: json.loads(fmt_float(v)) for k, v in payload.items()}, indent=2)
    atomic_write_text(path, text + "\n")


def load_weights(path: str) -> WeightVector:
    try:
        with open(path, encoding="utf-8") as handle:
            payload = json.load(handle)
    except OSError as exc:
        raise DataError(f"cannot read weight file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"malformed weight file {path}: {exc}") from exc
    if not isinstance(payload, dict):
        raise DataError(f"{path}: weight file must be a JSON object")
    try:
        return WeightVector.from_dict(payload)
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from None
