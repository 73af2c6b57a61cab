"""Exception hierarchy. `code` is the machine-readable tag the HTTP layer
returns in error bodies and the CLI uses for exit-code mapping."""


class ConsiliumError(Exception):
    code = "error"


class ParseError(ConsiliumError):
    """Malformed input text (CSV/JSON): bad structure, bad cell, bad number."""

    code = "parse_error"


class ValidationError(ConsiliumError):
    """Well-formed input violating a domain invariant (weights, uniqueness)."""

    code = "validation_error"


class ConfigError(ConsiliumError):
    """Mismatched pieces: criteria vs matrix columns, unknown method, ..."""

    code = "config_error"


class VotingError(ConsiliumError):
    """Invalid profile: no ballots, duplicate voter."""

    code = "voting_error"


class BallotError(ConsiliumError):
    """Ballot is not a strict permutation of the alternative set."""

    code = "ballot_error"


class PhaseError(ConsiliumError):
    """Operation not allowed in the session's current phase."""

    code = "phase_error"


class ParticipantError(ConsiliumError):
    """Enrollment/role problem: duplicate id, second facilitator, unknown voter."""

    code = "participant_error"


class SessionNotFoundError(ConsiliumError):
    code = "not_found"


class AuthError(ConsiliumError):
    """Missing or wrong participant token for the attempted action."""

    code = "forbidden"
