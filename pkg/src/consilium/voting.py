"""Ranked-ballot aggregation: Borda count and Condorcet pairwise majority,
with a Copeland completion so the Condorcet route always yields a full
classification even when no Condorcet winner exists.

Ballots are strict total orders over the full alternative set; ties and
partial ballots are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import BallotError, ParseError, VotingError
from .scoring import Ranking

METHODS = ("borda", "condorcet")


def _ranking_ids(ranking) -> tuple[str, ...]:
    if isinstance(ranking, Ranking):
        return ranking.ordered
    return tuple(ranking)


@dataclass(frozen=True)
class Ballot:
    """One voter's strict ranking, best first."""

    voter: str
    ranking: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranking", _ranking_ids(self.ranking))


@dataclass(frozen=True)
class Profile:
    """All ballots cast over a common, ordered alternative set.

    The alternative order is the session order and drives every downstream
    tie-break. Construction validates: at least one ballot, one ballot per
    voter, and every ballot a permutation of the alternatives (offending ids
    are named).
    """

    alternatives: tuple[str, ...]
    ballots: tuple[Ballot, ...]

    def __post_init__(self):
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        object.__setattr__(self, "ballots", tuple(self.ballots))
        if len(self.alternatives) < 2:
            raise VotingError("profile needs at least 2 alternatives")
        if not self.ballots:
            raise VotingError("profile has no ballots")
        voters = [b.voter for b in self.ballots]
        if len(set(voters)) != len(voters):
            dup = sorted({v for v in voters if voters.count(v) > 1})
            raise VotingError(f"duplicate ballots from voter(s): {', '.join(dup)}")
        for ballot in self.ballots:
            check_ballot(self.alternatives, ballot.ranking, voter=ballot.voter)

    @property
    def voter_count(self) -> int:
        return len(self.ballots)


def check_ballot(alternatives: Sequence[str], ranking: Sequence[str], voter: str = "?"):
    """Raise BallotError unless `ranking` is a strict permutation of
    `alternatives`, naming missing/unknown/repeated ids."""
    alts = set(alternatives)
    seen = set()
    repeated = set()
    for a in ranking:
        if a in seen:
            repeated.add(a)
        seen.add(a)
    unknown = seen - alts
    missing = alts - seen
    problems = []
    if missing:
        problems.append(f"missing {', '.join(sorted(missing))}")
    if unknown:
        problems.append(f"unknown {', '.join(sorted(unknown))}")
    if repeated:
        problems.append(f"repeated {', '.join(sorted(repeated))}")
    if problems:
        raise BallotError(
            f"ballot from {voter!r} is not a permutation of the alternatives: "
            + "; ".join(problems)
        )


@dataclass(frozen=True, eq=False)
class PairwiseMatrix:
    """wins[i][j] = number of voters ranking alternatives[i] strictly above
    alternatives[j]. For strict ballots wins[i][j] + wins[j][i] = voter_count
    off the diagonal."""

    alternatives: tuple[str, ...]
    wins: np.ndarray
    voter_count: int

    def __post_init__(self):
        arr = np.asarray(self.wins, dtype=np.int64).copy()
        arr.flags.writeable = False
        object.__setattr__(self, "wins", arr)
        object.__setattr__(self, "alternatives", tuple(self.alternatives))

    def wins_over(self, a: str, b: str) -> int:
        idx = {alt: i for i, alt in enumerate(self.alternatives)}
        return int(self.wins[idx[a], idx[b]])


@dataclass(frozen=True)
class VoteResult:
    """Outcome of one aggregation method.

    For method='borda', scores are integer Borda points. For
    method='condorcet', scores are Copeland scores (strict-majority pairwise
    wins minus losses) and the condorcet_* fields report whether an outright
    pairwise-majority winner exists; when it does, it necessarily heads the
    ranking.
    """

    method: str
    scores: dict[str, int]
    ranking: Ranking
    condorcet_winner: Optional[str] = None
    has_condorcet_winner: bool = False

    def to_doc(self) -> dict:
        return {
            "method": self.method,
            "scores": dict(self.scores),
            "ranking": list(self.ranking.ordered),
            "condorcet_winner": self.condorcet_winner,
            "has_condorcet_winner": self.has_condorcet_winner,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "VoteResult":
        return cls(
            method=doc["method"],
            scores={k: int(v) for k, v in doc["scores"].items()},
            ranking=Ranking(tuple(doc["ranking"])),
            condorcet_winner=doc.get("condorcet_winner"),
            has_condorcet_winner=bool(doc.get("has_condorcet_winner", False)),
        )


def borda_scores(profile: Profile) -> dict[str, int]:
    """Positional points per ballot: last place earns 1, next 2, ..., first
    earns n; point totals are summed over all ballots."""
    n = len(profile.alternatives)
    scores = {a: 0 for a in profile.alternatives}
    for ballot in profile.ballots:
        for position, alt in enumerate(ballot.ranking):
            scores[alt] += n - position
    return scores


def borda_result(profile: Profile) -> VoteResult:
    """Rank by descending Borda points, ties broken by profile order."""
    scores = borda_scores(profile)
    order = sorted(
        range(len(profile.alternatives)),
        key=lambda i: (-scores[profile.alternatives[i]], i),
    )
    ranking = Ranking(tuple(profile.alternatives[i] for i in order))
    return VoteResult(method="borda", scores=scores, ranking=ranking)


def pairwise_matrix(profile: Profile) -> PairwiseMatrix:
    """Tally every ordered pair: how many voters rank a above b."""
    alts = profile.alternatives
    n = len(alts)
    wins = np.zeros((n, n), dtype=np.int64)
    for ballot in profile.ballots:
        pos = {alt: p for p, alt in enumerate(ballot.ranking)}
        for i in range(n):
            for j in range(n):
                if i != j and pos[alts[i]] < pos[alts[j]]:
                    wins[i, j] += 1
    return PairwiseMatrix(alternatives=alts, wins=wins, voter_count=profile.voter_count)


def condorcet_winner(pw: PairwiseMatrix) -> Optional[str]:
    """The alternative beating every rival by strict majority, if any.

    Strict majority means wins > voter_count / 2, so a tied pair (possible
    with an even voter count) is not a victory. At most one such alternative
    can exist.
    """
    n = len(pw.alternatives)
    for i in range(n):
        if all(2 * pw.wins[i, j] > pw.voter_count for j in range(n) if j != i):
            return pw.alternatives[i]
    return None


def copeland_scores(pw: PairwiseMatrix) -> dict[str, int]:
    """Strict-majority pairwise victories minus defeats per alternative."""
    n = len(pw.alternatives)
    majority = 2 * pw.wins > pw.voter_count
    scores = {}
    for i, alt in enumerate(pw.alternatives):
        won = int(majority[i, :].sum())
        lost = int(majority[:, i].sum())
        scores[alt] = won - lost
    return scores


def condorcet_result(profile: Profile) -> VoteResult:
    """Condorcet winner plus a full classification by Copeland score.

    Copeland ties are broken by Borda score, then by profile order. A
    Condorcet winner, when present, has the unique maximum Copeland score
    (n-1), so it always tops the ranking.
    """
    pw = pairwise_matrix(profile)
    winner = condorcet_winner(pw)
    copeland = copeland_scores(pw)
    borda = borda_scores(profile)
    alts = profile.alternatives
    order = sorted(
        range(len(alts)), key=lambda i: (-copeland[alts[i]], -borda[alts[i]], i)
    )
    ranking = Ranking(tuple(alts[i] for i in order))
    return VoteResult(
        method="condorcet",
        scores=copeland,
        ranking=ranking,
        condorcet_winner=winner,
        has_condorcet_winner=winner is not None,
    )


def tally(profile: Profile, method: str) -> VoteResult:
    if method == "borda":
        return borda_result(profile)
    if method == "condorcet":
        return condorcet_result(profile)
    raise VotingError(f"unknown voting method {method!r}")


def load_ballots(source: str, alternatives: Optional[Sequence[str]] = None) -> Profile:
    """Parse the ballots JSON format `{voters: [{id, ranking: [...]}]}`.

    The tie-break alternative order is taken from an optional top-level
    `alternatives` array, from the caller, or failing both from the first
    ballot's ranking.
    """
    try:
        raw = json.loads(source)
    except json.JSONDecodeError as e:
        raise ParseError(f"ballots JSON: {e}") from None
    if not isinstance(raw, dict) or not isinstance(raw.get("voters"), list):
        raise ParseError("ballots JSON must be an object with a 'voters' array")
    ballots = []
    for i, entry in enumerate(raw["voters"]):
        if not isinstance(entry, dict) or "id" not in entry or "ranking" not in entry:
            raise ParseError(f"voters[{i}] must be an object with 'id' and 'ranking'")
        if not isinstance(entry["ranking"], list):
            raise ParseError(f"voters[{i}].ranking must be an array of alternative ids")
        ballots.append(Ballot(str(entry["id"]), tuple(str(a) for a in entry["ranking"])))
    if not ballots:
        raise VotingError("ballots file contains no voters")
    if alternatives is None:
        alternatives = raw.get("alternatives") or ballots[0].ranking
    return Profile(tuple(alternatives), tuple(ballots))


def ballots_to_doc(profile: Profile) -> dict:
    return {
        "alternatives": list(profile.alternatives),
        "voters": [
            {"id": b.voter, "ranking": list(b.ranking)} for b in profile.ballots
        ],
    }
