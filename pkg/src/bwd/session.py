"""Session document: one portable JSON artifact shared by the CLI, the HTTP
service, and tests.

The document is canonically serialized (sorted keys, fixed indentation), so
load/save round-trips are byte-identical. Derived results are cached under
input-hash stamps and silently dropped when any upstream field changes.
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any

from .consistency import ThresholdTable
from .model import (
    ComparisonSet,
    Criterion,
    PerformanceMatrix,
    ValidationError,
)

SCHEMA_VERSION = 1


class WorkflowError(ValidationError):
    """A command ran before the session fields it needs exist."""


def canonical_json(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n"


def stamp(doc: Any) -> str:
    return hashlib.sha256(canonical_json(doc).encode()).hexdigest()


def ingest_matrix(path: str | Path) -> PerformanceMatrix:
    """Parse the matrix CSV: header ``id,<crit>,...``, optional ``#direction``
    and ``#range`` metadata rows, then one row per alternative. Ranges default
    to the observed min/max per column."""
    path = Path(path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValidationError(f"{path}: empty file")
    header = rows[0]
    if len(header) < 2 or header[0].strip().lower() != "id":
        raise ValidationError(f"{path}: line 1: header must be 'id,<criteria...>'")
    names = [h.strip() for h in header[1:]]
    n = len(names)
    directions: list[str] | None = None
    ranges: list[tuple[float, float] | None] = [None] * n
    ids: list[str] = []
    levels: list[list[float]] = []
    lines: list[int] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        first = row[0].strip()
        if first.startswith("#"):
            if len(row) != n + 1:
                raise ValidationError(
                    f"{path}: line {lineno}: metadata row has {len(row) - 1} "
                    f"cells for {n} criteria"
                )
            kind = first.lower()
            if kind == "#direction":
                directions = []
                for cell in row[1:]:
                    d = cell.strip().lower()
                    if d not in ("benefit", "cost"):
                        raise ValidationError(
                            f"{path}: line {lineno}: direction must be "
                            f"benefit or cost, got {cell!r}"
                        )
                    directions.append(d)
            elif kind == "#range":
                parsed = []
                for cell in row[1:]:
                    try:
                        lo, hi = cell.strip().split(":")
                        parsed.append((float(lo), float(hi)))
                    except ValueError:
                        raise ValidationError(
                            f"{path}: line {lineno}: range cells are 'lo:hi', "
                            f"got {cell!r}"
                        ) from None
                ranges = list(parsed)
            else:
                raise ValidationError(
                    f"{path}: line {lineno}: unknown metadata row {first!r}"
                )
            continue
        if len(row) != n + 1:
            raise ValidationError(
                f"{path}: line {lineno}: {len(row) - 1} cells for {n} criteria"
            )
        if first in ids:
            raise ValidationError(f"{path}: line {lineno}: duplicate id {first!r}")
        vals = []
        for col, cell in enumerate(row[1:], start=1):
            try:
                vals.append(float(cell))
            except ValueError:
                raise ValidationError(
                    f"{path}: line {lineno}: non-numeric cell {cell!r} "
                    f"in column {header[col]!r}"
                ) from None
        ids.append(first)
        levels.append(vals)
        lines.append(lineno)
    if not ids:
        raise ValidationError(f"{path}: no alternative rows")
    return PerformanceMatrix.from_levels(ids, levels, names, directions, ranges)


def _atomic_write(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class Session:
    """Thin wrapper over the session JSON document."""

    def __init__(self, doc: dict[str, Any] | None = None):
        self.doc: dict[str, Any] = doc or {"schema": SCHEMA_VERSION, "revision": 0}
        if self.doc.get("schema") != SCHEMA_VERSION:
            raise ValidationError(
                f"unsupported session schema {self.doc.get('schema')!r}"
            )
        self.doc.setdefault("revision", 0)
        self.doc.setdefault("cache", {})

    # -- persistence --------------------------------------------------------

    @classmethod
    def load(cls, path: str | Path) -> "Session":
        with open(path) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"{path}: invalid JSON: {exc}") from None
        from .schemas import validate_payload

        validate_payload("session", doc)
        return cls(doc)

    def save(self, path: str | Path) -> None:
        _atomic_write(Path(path), canonical_json(self.doc))

    # -- fields -------------------------------------------------------------

    @property
    def revision(self) -> int:
        return int(self.doc["revision"])

    def bump(self) -> int:
        self.doc["revision"] = self.revision + 1
        return self.revision

    def set_matrix(
        self, matrix: PerformanceMatrix, source: str | None = None
    ) -> None:
        self.doc["matrix"] = {
            "ids": list(matrix.ids),
            "criteria": [
                {
                    "name": c.name,
                    "direction": c.direction,
                    "lower": c.lower,
                    "upper": c.upper,
                }
                for c in matrix.criteria
            ],
            "levels": [[float(v) for v in row] for row in matrix.levels],
        }
        if source is not None:
            self.doc["matrix_path"] = str(source)

    def matrix(self) -> PerformanceMatrix:
        block = self.doc.get("matrix")
        if block is None:
            raise WorkflowError("session has no matrix; run refset first")
        criteria = tuple(
            Criterion(c["name"], c["lower"], c["upper"], c["direction"])
            for c in block["criteria"]
        )
        import numpy as np

        return PerformanceMatrix(
            tuple(block["ids"]), np.array(block["levels"], dtype=float), criteria
        )

    def set_segments(self, segments: int | list[int]) -> None:
        self.doc["segments"] = segments

    def segments(self) -> int | list[int]:
        if "segments" not in self.doc:
            raise WorkflowError("session has no segment counts; run refset first")
        return self.doc["segments"]

    def set_reference(self, ids: list[str]) -> None:
        self.doc["reference"] = {"ids": list(ids)}

    def reference_ids(self) -> list[str]:
        block = self.doc.get("reference")
        if block is None:
            raise WorkflowError("session has no reference set; run refset first")
        return list(block["ids"])

    def set_comparisons(
        self,
        best: str,
        worst: str,
        bo: dict[str, Any],
        ow: dict[str, Any],
    ) -> None:
        self.doc["comparisons"] = {
            "best": best,
            "worst": worst,
            "bo": dict(bo),
            "ow": dict(ow),
        }

    def has_comparisons(self) -> bool:
        return "comparisons" in self.doc

    def comparison_set(self, matrix: PerformanceMatrix) -> ComparisonSet:
        block = self.doc.get("comparisons")
        if block is None:
            raise WorkflowError(
                "session has no comparisons; submit judgments before solving"
            )
        ref = self.reference_ids()

        def judgment(v: Any) -> float | tuple[float, float]:
            if isinstance(v, (int, float)):
                return float(v)
            if isinstance(v, (list, tuple)) and len(v) == 2:
                return (float(v[0]), float(v[1]))
            raise ValidationError(f"judgment must be a number or [lo, hi], got {v!r}")

        indices = tuple(matrix.index_of(a) for a in ref)
        for name in ("bo", "ow"):
            missing = [a for a in ref if a not in block[name]]
            if missing:
                raise ValidationError(f"{name} missing judgments for {missing}")
        return ComparisonSet(
            indices,
            matrix.index_of(block["best"]),
            matrix.index_of(block["worst"]),
            {matrix.index_of(a): judgment(block["bo"][a]) for a in ref},
            {matrix.index_of(a): judgment(block["ow"][a]) for a in ref},
        )

    def set_thresholds(self, table: ThresholdTable, source: str | None = None) -> None:
        self.doc["thresholds"] = [
            [size, abw, thr] for (size, abw), thr in sorted(table.entries.items())
        ]
        if source is not None:
            self.doc["thresholds_path"] = str(source)

    def thresholds(self) -> ThresholdTable:
        block = self.doc.get("thresholds")
        if block is None:
            return ThresholdTable.default()
        return ThresholdTable({(row[0], row[1]): row[2] for row in block})

    # -- caching ------------------------------------------------------------

    def inputs_stamp(self, *fields: str) -> str:
        return stamp({f: self.doc.get(f) for f in fields})

    def cache_put(self, key: str, inputs: str, data: Any) -> None:
        self.doc["cache"][key] = {"inputs": inputs, "data": data}

    def cache_get(self, key: str, inputs: str) -> Any | None:
        entry = self.doc.get("cache", {}).get(key)
        if entry is None or entry.get("inputs") != inputs:
            return None
        return entry["data"]

    def cache_drop_stale(self) -> None:
        """Drop every cached block whose recomputed stamp no longer matches."""
        fields = {
            "refset": ("matrix", "segments", "refset_options"),
            "consistency": ("comparisons", "reference", "thresholds"),
            "solve": ("matrix", "segments", "reference", "comparisons"),
            "robust": ("matrix", "segments", "reference", "comparisons"),
        }
        cache = self.doc.get("cache", {})
        for key in list(cache):
            expected = self.inputs_stamp(*fields.get(key, ()))
            if cache[key].get("inputs") != expected:
                del cache[key]
