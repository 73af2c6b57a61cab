"""Core domain types: alternatives, weighted criteria, and the dense
alternatives-by-criteria evaluation matrix, plus CSV/JSON ingestion.

All types are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigError, ParseError, ValidationError

# Weights are human-entered two-decimal values; any drift beyond this is a
# data error, not floating-point noise.
WEIGHT_SUM_TOLERANCE = 1e-9


class Direction(str, Enum):
    """Optimization sense of a criterion. Required, never defaulted: whether
    e.g. 'existing coverage' means more or less need is an analyst call."""

    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"


@dataclass(frozen=True)
class Alternative:
    """One option under decision. `label` falls back to `id`."""

    id: str
    label: str = ""

    def __post_init__(self):
        if not self.id:
            raise ValidationError("alternative id must be non-empty")
        if not self.label:
            object.__setattr__(self, "label", self.id)


@dataclass(frozen=True)
class Criterion:
    """A named, weighted criterion with an explicit optimization direction
    and a free-text scale descriptor (e.g. '5-point Likert scale')."""

    id: str
    name: str
    weight: float
    direction: Direction
    scale: str = ""

    def __post_init__(self):
        if not self.id:
            raise ValidationError("criterion id must be non-empty")
        object.__setattr__(self, "direction", Direction(self.direction))
        object.__setattr__(self, "weight", float(self.weight))


def validate_criteria(criteria: Sequence[Criterion]) -> list[str]:
    """Check a criteria set's invariants; returns violations, empty when ok.

    Checked: every weight in [0, 1], weights sum to 1 (within
    WEIGHT_SUM_TOLERANCE), ids unique.
    """
    violations = []
    seen = set()
    for c in criteria:
        if c.id in seen:
            violations.append(f"duplicate criterion id {c.id!r}")
        seen.add(c.id)
        if not (0.0 <= c.weight <= 1.0) or not math.isfinite(c.weight):
            violations.append(f"criterion {c.id!r}: weight {c.weight!r} outside [0, 1]")
    total = sum(c.weight for c in criteria)
    if abs(total - 1.0) > WEIGHT_SUM_TOLERANCE:
        violations.append(f"weights sum to {total!r}, expected 1")
    return violations


class EvaluationMatrix:
    """Dense real-valued performance table, alternatives x criteria.

    Row and column order are preserved from the source; downstream rankings
    use row order for deterministic tie-breaks. Values are float64 and
    read-only. Matrices loaded from bare CSV carry placeholder criteria
    (weight 0, maximize); bind the real definitions with `with_criteria`
    before normalizing anything direction-sensitive.
    """

    def __init__(
        self,
        alternatives: Iterable[Alternative],
        criteria: Iterable[Criterion],
        values,
    ):
        self.alternatives = tuple(alternatives)
        self.criteria = tuple(criteria)
        arr = np.asarray(values, dtype=np.float64)
        if arr.ndim != 2 or arr.shape != (len(self.alternatives), len(self.criteria)):
            raise ValidationError(
                f"values shape {arr.shape} does not match "
                f"{len(self.alternatives)} alternatives x {len(self.criteria)} criteria"
            )
        if len(self.alternatives) < 2:
            raise ValidationError("matrix needs at least 2 alternatives")
        if len(self.criteria) < 1:
            raise ValidationError("matrix needs at least 1 criterion")
        dup = _duplicates(a.id for a in self.alternatives)
        if dup:
            raise ValidationError(f"duplicate alternative ids: {', '.join(sorted(dup))}")
        dup = _duplicates(c.id for c in self.criteria)
        if dup:
            raise ValidationError(f"duplicate criterion ids: {', '.join(sorted(dup))}")
        if not np.isfinite(arr).all():
            raise ValidationError("matrix cells must be finite (no NaN/inf)")
        arr = arr.copy()
        arr.flags.writeable = False
        self.values = arr
        self._row = {a.id: i for i, a in enumerate(self.alternatives)}
        self._col = {c.id: j for j, c in enumerate(self.criteria)}

    @property
    def alternative_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.alternatives)

    @property
    def criterion_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.criteria)

    def value(self, alternative_id: str, criterion_id: str) -> float:
        return float(self.values[self._row[alternative_id], self._col[criterion_id]])

    def column(self, criterion_id: str) -> np.ndarray:
        return self.values[:, self._col[criterion_id]]

    def with_criteria(self, criteria: Sequence[Criterion]) -> "EvaluationMatrix":
        """Bind full criterion definitions to this matrix's columns.

        Ids must match the column ids in order; raises ConfigError naming the
        first offender otherwise.
        """
        criteria = tuple(criteria)
        if len(criteria) != len(self.criteria):
            raise ConfigError(
                f"criteria set has {len(criteria)} entries, matrix has "
                f"{len(self.criteria)} columns"
            )
        for have, want in zip(criteria, self.criteria):
            if have.id != want.id:
                raise ConfigError(
                    f"criterion {have.id!r} does not match matrix column {want.id!r}"
                )
        return EvaluationMatrix(self.alternatives, criteria, self.values)

    def to_csv(self) -> str:
        """Serialize back to the CSV wire format (header + one row per
        alternative). Integral cells are written without a decimal point."""
        lines = ["alternative," + ",".join(self.criterion_ids)]
        for i, alt in enumerate(self.alternatives):
            cells = (_format_cell(v) for v in self.values[i])
            lines.append(alt.id + "," + ",".join(cells))
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        return (
            isinstance(other, EvaluationMatrix)
            and self.alternatives == other.alternatives
            and self.criteria == other.criteria
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self):
        return (
            f"EvaluationMatrix({len(self.alternatives)} alternatives x "
            f"{len(self.criteria)} criteria)"
        )


def load_matrix(source: str) -> EvaluationMatrix:
    """Parse the matrix CSV format: header `alternative,<c-id>,...`, one row
    per alternative, cells decimal reals with '.' separator.

    Raises ParseError (naming line/cell) on structural problems and
    ValidationError on invariant violations (duplicate ids, too few rows).
    """
    lines = source.splitlines()
    rows = [(lineno, row) for lineno, row in zip(range(1, len(lines) + 1), csv.reader(lines))]
    rows = [(lineno, row) for lineno, row in rows if row]
    if not rows:
        raise ParseError("empty matrix CSV")

    _, header = rows[0]
    if len(header) < 2:
        raise ParseError("header must name at least one criterion column")
    criterion_ids = [h.strip() for h in header[1:]]
    if any(not cid for cid in criterion_ids):
        raise ParseError("header contains an empty criterion id")

    alternatives = []
    values = []
    for lineno, row in rows[1:]:
        if len(row) != len(header):
            raise ParseError(
                f"line {lineno}: expected {len(header)} fields, got {len(row)}"
            )
        alt_id = row[0].strip()
        if not alt_id:
            raise ParseError(f"line {lineno}: empty alternative id")
        cells = []
        for cid, raw in zip(criterion_ids, row[1:]):
            try:
                v = float(raw)
            except ValueError:
                raise ParseError(
                    f"line {lineno}, column {cid!r}: cell {raw!r} is not a number"
                ) from None
            if not math.isfinite(v):
                raise ParseError(
                    f"line {lineno}, column {cid!r}: cell {raw!r} is not finite"
                )
            cells.append(v)
        alternatives.append(Alternative(alt_id))
        values.append(cells)

    dup = _duplicates(a.id for a in alternatives)
    if dup:
        raise ValidationError(f"duplicate alternative ids: {', '.join(sorted(dup))}")
    placeholders = [
        Criterion(cid, cid, 0.0, Direction.MAXIMIZE) for cid in criterion_ids
    ]
    return EvaluationMatrix(alternatives, placeholders, values)


def load_criteria(source: str) -> tuple[Criterion, ...]:
    """Parse the criteria JSON format: array of
    `{id, name, weight, direction, scale}` objects.

    Direction is mandatory and has no default. The parsed set must satisfy
    validate_criteria; violations raise ValidationError.
    """
    try:
        raw = json.loads(source)
    except json.JSONDecodeError as e:
        raise ParseError(f"criteria JSON: {e}") from None
    if not isinstance(raw, list):
        raise ParseError("criteria JSON must be an array of objects")
    criteria = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise ParseError(f"criteria[{i}] is not an object")
        missing = [k for k in ("id", "name", "weight", "direction") if k not in entry]
        if missing:
            raise ParseError(f"criteria[{i}]: missing {', '.join(missing)}")
        try:
            direction = Direction(entry["direction"])
        except ValueError:
            raise ParseError(
                f"criteria[{i}]: direction {entry['direction']!r} must be "
                f"'maximize' or 'minimize'"
            ) from None
        if not isinstance(entry["weight"], (int, float)) or isinstance(entry["weight"], bool):
            raise ParseError(f"criteria[{i}]: weight must be a number")
        criteria.append(
            Criterion(
                id=str(entry["id"]),
                name=str(entry["name"]),
                weight=float(entry["weight"]),
                direction=direction,
                scale=str(entry.get("scale", "")),
            )
        )
    violations = validate_criteria(criteria)
    if violations:
        raise ValidationError("; ".join(violations))
    return tuple(criteria)


def criteria_to_doc(criteria: Sequence[Criterion]) -> list[dict]:
    return [
        {
            "id": c.id,
            "name": c.name,
            "weight": c.weight,
            "direction": c.direction.value,
            "scale": c.scale,
        }
        for c in criteria
    ]


def criteria_from_doc(doc: Sequence[dict]) -> tuple[Criterion, ...]:
    return tuple(
        Criterion(e["id"], e["name"], e["weight"], Direction(e["direction"]), e.get("scale", ""))
        for e in doc
    )


def _format_cell(v: float) -> str:
    if float(v).is_integer() and abs(v) < 1e16:
        return str(int(v))
    return repr(float(v))


def _duplicates(ids: Iterable[str]) -> set[str]:
    seen, dup = set(), set()
    for i in ids:
        if i in seen:
            dup.add(i)
        seen.add(i)
    return dup
