"""Group-decision sessions: enrollment, a phased state machine
(setup -> balloting -> results -> closed), ballot collection, and frozen
result computation.

Mutations on a single Session must be externally serialized (the store's
per-session lock does this for the HTTP service); the methods themselves
validate first and mutate only after every guard has passed.
"""

from __future__ import annotations

import secrets
import uuid
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from typing import Optional, Sequence

from .errors import (
    ConfigError,
    ParticipantError,
    PhaseError,
    ValidationError,
)
from .model import (
    Alternative,
    Criterion,
    EvaluationMatrix,
    criteria_from_doc,
    criteria_to_doc,
    validate_criteria,
)
from .scoring import Ranking, derive_ranking, normalize, weighted_score
from .voting import (
    METHODS,
    Ballot,
    Profile,
    VoteResult,
    check_ballot,
    tally,
)

SCHEMA_VERSION = 1

PHASES = ("setup", "balloting", "results", "closed")


class Phase(str, Enum):
    SETUP = "setup"
    BALLOTING = "balloting"
    RESULTS = "results"
    CLOSED = "closed"

    @property
    def index(self) -> int:
        return PHASES.index(self.value)


class Role(str, Enum):
    FACILITATOR = "facilitator"
    DECISION_MAKER = "decision_maker"


@dataclass(frozen=True)
class Participant:
    id: str
    display_name: str
    role: Role
    token: str

    def __post_init__(self):
        object.__setattr__(self, "role", Role(self.role))


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


def _new_token() -> str:
    return secrets.token_urlsafe(12)


def _as_alternative(a) -> Alternative:
    if isinstance(a, Alternative):
        return a
    if isinstance(a, dict):
        return Alternative(id=a["id"], label=a.get("label", ""))
    return Alternative(id=str(a))


class Session:
    """One group decision from setup to archived results.

    Phase transitions advance exactly one step; results for both voting
    methods are computed and frozen atomically when balloting closes, and
    never change afterwards.
    """

    def __init__(
        self,
        session_id: str,
        alternatives: Sequence[Alternative],
        facilitator: Participant,
        criteria: Optional[Sequence[Criterion]] = None,
        matrix: Optional[EvaluationMatrix] = None,
    ):
        self.id = session_id
        self.phase = Phase.SETUP
        self.alternatives = tuple(alternatives)
        self.criteria = tuple(criteria) if criteria else None
        self.matrix = matrix
        self.participants: list[Participant] = [facilitator]
        self.ballots: dict[str, tuple[str, ...]] = {}
        self.results: dict[str, VoteResult] = {}
        self.created_at = _now()
        self.updated_at = self.created_at

    # -- lookups -------------------------------------------------------

    @property
    def alternative_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.alternatives)

    @property
    def facilitator(self) -> Participant:
        return next(p for p in self.participants if p.role is Role.FACILITATOR)

    def participant(self, participant_id: str) -> Optional[Participant]:
        return next((p for p in self.participants if p.id == participant_id), None)

    def participant_by_token(self, token: Optional[str]) -> Optional[Participant]:
        if not token:
            return None
        return next((p for p in self.participants if p.token == token), None)

    def _touch(self):
        self.updated_at = max(_now(), self.updated_at)

    # -- setup ---------------------------------------------------------

    def add_participant(
        self, participant_id: str, display_name: str, role: Role | str
    ) -> Participant:
        """Enroll during setup. A session has exactly one facilitator."""
        role = Role(role)
        if self.phase is not Phase.SETUP:
            raise PhaseError(f"cannot enroll participants in phase {self.phase.value}")
        if self.participant(participant_id) is not None:
            raise ParticipantError(f"participant {participant_id!r} already enrolled")
        if role is Role.FACILITATOR:
            raise ParticipantError("session already has a facilitator")
        p = Participant(participant_id, display_name, role, _new_token())
        self.participants.append(p)
        self._touch()
        return p

    # -- phase machine ---------------------------------------------------

    def advance_phase(self, to: Phase | str) -> None:
        """Move to the immediate successor phase only; no skips, no reversals.

        The balloting -> results step requires at least one ballot and
        computes both methods' results before committing the transition.
        """
        to = Phase(to)
        if to.index != self.phase.index + 1:
            raise PhaseError(f"cannot advance from {self.phase.value} to {to.value}")
        if to is Phase.RESULTS:
            if not self.ballots:
                raise PhaseError("cannot close balloting with zero ballots")
            profile = self.profile()
            computed = {m: tally(profile, m) for m in METHODS}
            self.results = computed
        self.phase = to
        self._touch()

    def open_balloting(self) -> None:
        self.advance_phase(Phase.BALLOTING)

    def close_balloting(self) -> None:
        self.advance_phase(Phase.RESULTS)

    def close_session(self) -> None:
        self.advance_phase(Phase.CLOSED)

    # -- balloting -------------------------------------------------------

    def submit_ballot(self, participant_id: str, ranking) -> None:
        """Store a decision maker's strict ranking; resubmission replaces the
        previous ballot until balloting closes."""
        if self.phase is not Phase.BALLOTING:
            raise PhaseError(f"ballots are not accepted in phase {self.phase.value}")
        p = self.participant(participant_id)
        if p is None:
            raise ParticipantError(f"unknown participant {participant_id!r}")
        if p.role is not Role.DECISION_MAKER:
            raise ParticipantError("facilitators do not vote")
        ids = tuple(ranking.ordered if isinstance(ranking, Ranking) else ranking)
        check_ballot(self.alternative_ids, ids, voter=participant_id)
        self.ballots[participant_id] = ids
        self._touch()

    def profile(self) -> Profile:
        """Current ballots as a voting profile, in enrollment order."""
        ballots = tuple(
            Ballot(p.id, self.ballots[p.id])
            for p in self.participants
            if p.id in self.ballots
        )
        return Profile(self.alternative_ids, ballots)

    def suggest_ballot(self, weights: dict[str, float]) -> Ranking:
        """Rank the session matrix under a participant's personal weights.

        Directions stay as configured on the session criteria; only weights
        are replaced. Returns the ranking without storing any ballot.
        """
        if self.matrix is None or self.criteria is None:
            raise ConfigError("session has no evaluation matrix to score")
        unknown = set(weights) - set(c.id for c in self.criteria)
        if unknown:
            raise ConfigError(f"unknown criterion id(s): {', '.join(sorted(unknown))}")
        missing = set(c.id for c in self.criteria) - set(weights)
        if missing:
            raise ConfigError(f"missing weight(s) for: {', '.join(sorted(missing))}")
        personal = [
            Criterion(c.id, c.name, float(weights[c.id]), c.direction, c.scale)
            for c in self.criteria
        ]
        violations = validate_criteria(personal)
        if violations:
            raise ValidationError("; ".join(violations))
        scores = weighted_score(normalize(self.matrix), personal)
        return derive_ranking(scores, self.alternatives)

    # -- results ---------------------------------------------------------

    def get_results(self, method: str) -> VoteResult:
        if self.phase.index < Phase.RESULTS.index:
            raise PhaseError(f"results are not available in phase {self.phase.value}")
        if method not in METHODS:
            raise ConfigError(f"unknown voting method {method!r}")
        return self.results[method]

    # -- persistence -------------------------------------------------------

    def to_doc(self) -> dict:
        """Canonical JSON document (schema 1). Field order is fixed so equal
        sessions serialize byte-identically."""
        return {
            "schema": SCHEMA_VERSION,
            "id": self.id,
            "phase": self.phase.value,
            "alternatives": [{"id": a.id, "label": a.label} for a in self.alternatives],
            "criteria": criteria_to_doc(self.criteria) if self.criteria else None,
            "matrix_values": (
                [[float(v) for v in row] for row in self.matrix.values]
                if self.matrix is not None
                else None
            ),
            "participants": [
                {
                    "id": p.id,
                    "display_name": p.display_name,
                    "role": p.role.value,
                    "token": p.token,
                }
                for p in self.participants
            ],
            "ballots": {pid: list(r) for pid, r in self.ballots.items()},
            "results": {m: r.to_doc() for m, r in self.results.items()},
            "created_at": self.created_at,
            "updated_at": self.updated_at,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "Session":
        if doc.get("schema") != SCHEMA_VERSION:
            raise ValidationError(
                f"unsupported session schema {doc.get('schema')!r}, expected {SCHEMA_VERSION}"
            )
        alternatives = tuple(
            Alternative(a["id"], a.get("label", "")) for a in doc["alternatives"]
        )
        criteria = criteria_from_doc(doc["criteria"]) if doc.get("criteria") else None
        participants = [
            Participant(p["id"], p["display_name"], Role(p["role"]), p["token"])
            for p in doc["participants"]
        ]
        facilitator = next(p for p in participants if p.role is Role.FACILITATOR)
        session = cls.__new__(cls)
        session.id = doc["id"]
        session.phase = Phase(doc["phase"])
        session.alternatives = alternatives
        session.criteria = criteria
        session.matrix = (
            EvaluationMatrix(alternatives, criteria, doc["matrix_values"])
            if doc.get("matrix_values") is not None
            else None
        )
        session.participants = participants
        session.ballots = {
            pid: tuple(r) for pid, r in doc.get("ballots", {}).items()
        }
        session.results = {
            m: VoteResult.from_doc(r) for m, r in doc.get("results", {}).items()
        }
        session.created_at = doc["created_at"]
        session.updated_at = doc["updated_at"]
        assert facilitator is not None
        return session


def create_session(
    alternatives=None,
    facilitator_id: str = "facilitator",
    facilitator_name: str = "Facilitator",
    criteria: Optional[Sequence[Criterion]] = None,
    matrix: Optional[EvaluationMatrix] = None,
    session_id: Optional[str] = None,
) -> Session:
    """Create a setup-phase session.

    Pure-ballot sessions pass just `alternatives`; matrix-backed sessions
    pass `matrix` plus `criteria` (the matrix is validated against them and
    supplies the alternative list when one is not given explicitly).
    """
    if matrix is not None:
        if criteria is None:
            raise ConfigError("a session matrix requires a criteria set")
        matrix = matrix.with_criteria(criteria)
        if alternatives is not None:
            given = tuple(_as_alternative(a).id for a in alternatives)
            if given != matrix.alternative_ids:
                raise ConfigError("alternatives do not match the matrix rows")
        alts = matrix.alternatives
    else:
        if alternatives is None:
            raise ValidationError("a session needs alternatives")
        alts = tuple(_as_alternative(a) for a in alternatives)
    if len(alts) < 2:
        raise ValidationError("a session needs at least 2 alternatives")
    ids = [a.id for a in alts]
    if len(set(ids)) != len(ids):
        raise ValidationError("duplicate alternative ids")
    if criteria is not None:
        violations = validate_criteria(criteria)
        if violations:
            raise ValidationError("; ".join(violations))
    facilitator = Participant(
        facilitator_id, facilitator_name, Role.FACILITATOR, _new_token()
    )
    return Session(
        session_id=session_id or uuid.uuid4().hex,
        alternatives=alts,
        facilitator=facilitator,
        criteria=criteria,
        matrix=matrix,
    )
