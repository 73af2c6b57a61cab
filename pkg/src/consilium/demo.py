"""Scripted end-to-end walkthrough on the bundled dataset: one facilitator,
three decision makers whose ballots derive from per-member weight presets,
both tallies printed as a two-column classification table.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .data import load_demo_criteria, load_demo_matrix
from .scoring import Ranking
from .session import Session, create_session

# Default decision-maker presets. dm1 uses the dataset's published weights;
# dm2 leans on the crime-count criteria; dm3 on population and perceived risk.
DEMO_PRESETS: dict[str, tuple[str, dict[str, float]]] = {
    "dm1": (
        "baseline",
        {"c1": 0.30, "c2": 0.20, "c3": 0.10, "c4": 0.10, "c5": 0.15, "c6": 0.15},
    ),
    "dm2": (
        "crime",
        {"c1": 0.40, "c2": 0.10, "c3": 0.05, "c4": 0.05, "c5": 0.25, "c6": 0.15},
    ),
    "dm3": (
        "community",
        {"c1": 0.20, "c2": 0.30, "c3": 0.10, "c4": 0.10, "c5": 0.10, "c6": 0.20},
    ),
}

TOP_N = 5
TABLE_HEADER = ("Integrated Security Area", "Final Classification")


@dataclass
class DemoRun:
    session: Session
    presets: dict[str, tuple[str, dict[str, float]]]
    ballots: dict[str, Ranking]


def demo_presets(
    seed: int | None = None, unanimous: bool = False
) -> dict[str, tuple[str, dict[str, float]]]:
    """The three weight presets; a seed swaps in random normalized weights
    (demo inputs only, the tally logic never sees the seed)."""
    if unanimous:
        baseline = DEMO_PRESETS["dm1"][1]
        return {dm: ("baseline", dict(baseline)) for dm in DEMO_PRESETS}
    if seed is None:
        return {dm: (label, dict(w)) for dm, (label, w) in DEMO_PRESETS.items()}
    rng = random.Random(seed)
    criterion_ids = sorted(DEMO_PRESETS["dm1"][1])
    presets = {}
    for dm in DEMO_PRESETS:
        raw = [rng.uniform(0.05, 1.0) for _ in criterion_ids]
        total = sum(raw)
        presets[dm] = (
            f"random(seed={seed})",
            {cid: value / total for cid, value in zip(criterion_ids, raw)},
        )
    return presets


def run_demo(seed: int | None = None, unanimous: bool = False) -> DemoRun:
    """Create the session, enroll three decision makers, derive and submit
    their ballots, and close balloting (freezing both results)."""
    matrix = load_demo_matrix()
    criteria = load_demo_criteria()
    session = create_session(
        criteria=criteria,
        matrix=matrix,
        facilitator_id="fac",
        facilitator_name="Facilitator",
    )
    presets = demo_presets(seed=seed, unanimous=unanimous)
    for dm in presets:
        session.add_participant(dm, dm.upper(), "decision_maker")
    session.open_balloting()
    ballots = {}
    for dm, (_label, weights) in presets.items():
        ranking = session.suggest_ballot(weights)
        session.submit_ballot(dm, ranking)
        ballots[dm] = ranking
    session.close_balloting()
    return DemoRun(session=session, presets=presets, ballots=ballots)


def ais_label(alternative_id: str) -> str:
    """Display label for the classification table: ISA_6 -> 'AIS 06'."""
    m = re.fullmatch(r"ISA_(\d+)", alternative_id)
    if m:
        return f"AIS {int(m.group(1)):02d}"
    return alternative_id


def classification_table(ranking, top_n: int = TOP_N) -> str:
    width = len(TABLE_HEADER[0])
    lines = [f"  {TABLE_HEADER[0]} | {TABLE_HEADER[1]}"]
    for place, alt_id in enumerate(list(ranking)[:top_n], start=1):
        lines.append(f"  {ais_label(alt_id):<{width}} | {place}°")
    return "\n".join(lines)


def format_text(run: DemoRun) -> str:
    session = run.session
    n = len(session.alternatives)
    dm_count = len(run.presets)
    borda = session.get_results("borda")
    condorcet = session.get_results("condorcet")
    lines = [
        "Group decision demo: siting a new battalion",
        "=" * 43,
        "",
        f"Evaluation matrix: {n} alternatives x {len(session.criteria)} criteria.",
        f"Participants: 1 facilitator, {dm_count} decision makers.",
        "",
        "Weight presets (each yields that decision maker's ballot):",
    ]
    for dm, (label, weights) in run.presets.items():
        ws = "  ".join(f"{cid}={weights[cid]:.2f}" for cid in sorted(weights))
        lines.append(f"  {dm}  {label:<10} {ws}")
    lines += [
        "",
        f"Ballots submitted: {dm_count}/{dm_count}. Balloting closed; results frozen.",
        "",
        f"Borda count, top {TOP_N} of {n}:",
        "",
        classification_table(borda.ranking),
        "",
        f"Condorcet (Copeland completion), top {TOP_N} of {n}:",
        "",
        classification_table(condorcet.ranking),
        "",
        (
            f"Condorcet winner: {ais_label(condorcet.condorcet_winner)}"
            if condorcet.has_condorcet_winner
            else "No Condorcet winner; the classification above is the Copeland completion."
        ),
    ]
    return "\n".join(lines) + "\n"


def as_doc(run: DemoRun) -> dict:
    """Machine-readable demo run (timestamps deliberately excluded)."""
    return {
        "presets": {dm: {"label": label, "weights": weights} for dm, (label, weights) in run.presets.items()},
        "ballots": {dm: list(r.ordered) for dm, r in run.ballots.items()},
        "results": {
            m: run.session.get_results(m).to_doc() for m in ("borda", "condorcet")
        },
    }
