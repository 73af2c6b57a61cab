"""Simple additive weighting: min-max normalization, weighted-sum scores,
and strict ranking derivation. This is how one decision maker's criterion
weights become a ballot.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigError, ValidationError
from .model import Criterion, Direction, EvaluationMatrix, validate_criteria

NORMALIZATION_METHOD = "minmax"


@dataclass(frozen=True)
class ScoreVector:
    """Per-alternative aggregate scores in [0, 1] plus the normalization tag."""

    scores: dict[str, float]
    method: str = NORMALIZATION_METHOD


@dataclass(frozen=True)
class Ranking:
    """Alternative ids, best first. Always a strict total order in v1."""

    ordered: tuple[str, ...]
    strict: bool = True

    def __post_init__(self):
        object.__setattr__(self, "ordered", tuple(self.ordered))
        if len(set(self.ordered)) != len(self.ordered):
            raise ValidationError("ranking contains repeated alternatives")

    def __iter__(self):
        return iter(self.ordered)

    def __len__(self):
        return len(self.ordered)


def normalize(matrix: EvaluationMatrix) -> EvaluationMatrix:
    """Min-max normalize each column into [0, 1] per its criterion direction.

    maximize: (v - min) / (max - min); minimize: (max - v) / (max - min).
    A constant column maps to 0.0 everywhere: any constant contributes the
    same to every alternative, and 0.0 keeps that visible in decompositions.
    """
    out = np.empty_like(matrix.values)
    for j, criterion in enumerate(matrix.criteria):
        col = matrix.values[:, j]
        lo, hi = col.min(), col.max()
        if hi == lo:
            out[:, j] = 0.0
        elif criterion.direction is Direction.MAXIMIZE:
            out[:, j] = (col - lo) / (hi - lo)
        else:
            out[:, j] = (hi - col) / (hi - lo)
    return EvaluationMatrix(matrix.alternatives, matrix.criteria, out)


def weighted_score(
    normalized: EvaluationMatrix, criteria: Sequence[Criterion]
) -> ScoreVector:
    """score(a) = sum over criteria of weight(c) * normalized(a, c).

    `criteria` must match the matrix columns id-for-id (ConfigError names the
    offender) and must be a valid weight set (ValidationError otherwise).
    Scores are convex combinations of cells in [0, 1], so they stay in [0, 1].
    """
    criteria = tuple(criteria)
    if len(criteria) != len(normalized.criteria):
        raise ConfigError(
            f"criteria set has {len(criteria)} entries, matrix has "
            f"{len(normalized.criteria)} columns"
        )
    for have, want in zip(criteria, normalized.criterion_ids):
        if have.id != want:
            raise ConfigError(f"criterion {have.id!r} does not match matrix column {want!r}")
    violations = validate_criteria(criteria)
    if violations:
        raise ValidationError("; ".join(violations))
    weights = np.array([c.weight for c in criteria])
    totals = normalized.values @ weights
    return ScoreVector(
        scores={a.id: float(s) for a, s in zip(normalized.alternatives, totals)}
    )


def derive_ranking(scores: ScoreVector, alternatives: Sequence) -> Ranking:
    """Descending by score; exact float ties broken by the given alternative
    order (earlier wins), keeping sessions reproducible."""
    ids = [getattr(a, "id", a) for a in alternatives]
    if set(ids) != set(scores.scores) or len(ids) != len(scores.scores):
        raise ConfigError("scores do not cover exactly the given alternatives")
    order = sorted(range(len(ids)), key=lambda i: (-scores.scores[ids[i]], i))
    return Ranking(tuple(ids[i] for i in order))


def score_matrix(
    matrix: EvaluationMatrix, criteria: Sequence[Criterion]
) -> tuple[ScoreVector, Ranking]:
    """Full pipeline: bind criteria, normalize, weight, rank."""
    bound = matrix.with_criteria(criteria)
    scores = weighted_score(normalize(bound), criteria)
    return scores, derive_ranking(scores, bound.alternatives)


def score_doc(scores: ScoreVector, ranking: Ranking) -> dict:
    """JSON-ready `{method, scores, ranking}` export."""
    return {
        "method": scores.method,
        "scores": dict(scores.scores),
        "ranking": list(ranking.ordered),
    }
