"""consilium: group decision sessions over weighted criteria.

A small toolkit for the classic committee workflow: score alternatives on a
weighted criteria set (min-max + weighted sum), let each decision maker turn
personal weights into a strict ballot, and aggregate ballots with Borda and
Condorcet (Copeland-completed) voting, either as a library, over HTTP, or
from the command line.
"""

from .errors import (
    AuthError,
    BallotError,
    ConfigError,
    ConsiliumError,
    ParseError,
    ParticipantError,
    PhaseError,
    SessionNotFoundError,
    ValidationError,
    VotingError,
)
from .model import (
    Alternative,
    Criterion,
    Direction,
    EvaluationMatrix,
    load_criteria,
    load_matrix,
    validate_criteria,
)
from .scoring import (
    Ranking,
    ScoreVector,
    derive_ranking,
    normalize,
    score_doc,
    score_matrix,
    weighted_score,
)
from .session import Participant, Phase, Role, Session, create_session
from .store import SessionStore
from .voting import (
    Ballot,
    PairwiseMatrix,
    Profile,
    VoteResult,
    borda_result,
    borda_scores,
    condorcet_result,
    condorcet_winner,
    copeland_scores,
    load_ballots,
    pairwise_matrix,
    tally,
)

__version__ = "0.1.0"

__all__ = [
    "Alternative",
    "AuthError",
    "Ballot",
    "BallotError",
    "ConfigError",
    "ConsiliumError",
    "Criterion",
    "Direction",
    "EvaluationMatrix",
    "PairwiseMatrix",
    "ParseError",
    "Participant",
    "ParticipantError",
    "Phase",
    "PhaseError",
    "Profile",
    "Ranking",
    "Role",
    "ScoreVector",
    "Session",
    "SessionNotFoundError",
    "SessionStore",
    "ValidationError",
    "VoteResult",
    "VotingError",
    "borda_result",
    "borda_scores",
    "condorcet_result",
    "condorcet_winner",
    "copeland_scores",
    "create_session",
    "derive_ranking",
    "load_ballots",
    "load_criteria",
    "load_matrix",
    "normalize",
    "pairwise_matrix",
    "score_doc",
    "score_matrix",
    "tally",
    "validate_criteria",
    "weighted_score",
    "__version__",
]
