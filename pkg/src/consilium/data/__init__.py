"""Accessors for the bundled demo dataset (24 integrated security areas
scored on six public-safety criteria; all criteria declared maximize, see
data/README.md at the repository root for the reasoning)."""

from importlib import resources

from ..model import Criterion, EvaluationMatrix, load_criteria, load_matrix


def demo_matrix_text() -> str:
    return (resources.files(__name__) / "isa_matrix.csv").read_text(encoding="utf-8")


def demo_criteria_text() -> str:
    return (resources.files(__name__) / "isa_criteria.json").read_text(encoding="utf-8")


def load_demo_criteria() -> tuple[Criterion, ...]:
    return load_criteria(demo_criteria_text())


def load_demo_matrix() -> EvaluationMatrix:
    """The demo matrix with its criteria bound (weights and directions)."""
    return load_matrix(demo_matrix_text()).with_criteria(load_demo_criteria())
