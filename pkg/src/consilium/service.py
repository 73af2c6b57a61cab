"""HTTP/JSON API over the session store. Error bodies are
`{"error": code, "detail": text}` with a 4xx status; authentication is the
per-participant token issued at enrollment, carried in the
X-Participant-Token header.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Union

from fastapi import FastAPI, Header, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .errors import (
    AuthError,
    ConsiliumError,
    ParticipantError,
    PhaseError,
    SessionNotFoundError,
)
from .model import load_criteria, load_matrix
from .session import Phase, Role, Session, create_session
from .store import SessionStore
from .voting import pairwise_matrix

TOKEN_HEADER = "X-Participant-Token"

_STATUS = {
    SessionNotFoundError: 404,
    AuthError: 403,
    PhaseError: 409,
    ParticipantError: 409,
}


class FacilitatorBody(BaseModel):
    id: str = "facilitator"
    display_name: str = "Facilitator"


class CreateSessionBody(BaseModel):
    alternatives: Optional[list[Union[str, dict]]] = None
    criteria: Optional[list[dict]] = None
    matrix_csv: Optional[str] = None
    facilitator: FacilitatorBody = FacilitatorBody()


class EnrollBody(BaseModel):
    id: str
    display_name: str = ""
    role: str = Role.DECISION_MAKER.value


class PhaseBody(BaseModel):
    advance_to: str


class BallotBody(BaseModel):
    ranking: list[str]


class SuggestBody(BaseModel):
    weights: dict[str, float]


def session_view(session: Session, token: Optional[str]) -> dict:
    """Serialize a session for the given caller.

    Participant tokens never leave the server after enrollment. Individual
    ballots are visible to the facilitator only, and only once results exist;
    everyone else sees the submission count. Callers see their own ballot.
    """
    caller = session.participant_by_token(token)
    is_facilitator = caller is not None and caller.role is Role.FACILITATOR
    results_open = session.phase.index >= Phase.RESULTS.index
    view = {
        "schema": 1,
        "id": session.id,
        "phase": session.phase.value,
        "alternatives": [{"id": a.id, "label": a.label} for a in session.alternatives],
        "criteria": (
            [
                {
                    "id": c.id,
                    "name": c.name,
                    "weight": c.weight,
                    "direction": c.direction.value,
                    "scale": c.scale,
                }
                for c in session.criteria
            ]
            if session.criteria
            else None
        ),
        "matrix_values": (
            [[float(v) for v in row] for row in session.matrix.values]
            if session.matrix is not None
            else None
        ),
        "participants": [
            {"id": p.id, "display_name": p.display_name, "role": p.role.value}
            for p in session.participants
        ],
        "ballot_count": len(session.ballots),
        "results": {m: r.to_doc() for m, r in session.results.items()} if results_open else {},
        "created_at": session.created_at,
        "updated_at": session.updated_at,
    }
    if is_facilitator:
        view["submitted"] = sorted(session.ballots)
        if results_open:
            view["ballots"] = {pid: list(r) for pid, r in session.ballots.items()}
    if caller is not None and caller.id in session.ballots:
        view["your_ballot"] = list(session.ballots[caller.id])
    return view


def create_app(store: SessionStore, frontend_dir: Optional[Path] = None) -> FastAPI:
    app = FastAPI(title="consilium", version="0.1.0")

    @app.exception_handler(ConsiliumError)
    def _domain_error(_req: Request, exc: ConsiliumError):
        status = next(
            (code for cls, code in _STATUS.items() if isinstance(exc, cls)), 400
        )
        return JSONResponse(
            status_code=status, content={"error": exc.code, "detail": str(exc)}
        )

    @app.exception_handler(RequestValidationError)
    def _body_error(_req: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": "invalid_request", "detail": str(exc.errors())},
        )

    def _require_facilitator(session: Session, token: Optional[str]):
        caller = session.participant_by_token(token)
        if caller is None or caller.role is not Role.FACILITATOR:
            raise AuthError("facilitator token required")

    @app.post("/sessions", status_code=201)
    def create(body: CreateSessionBody):
        criteria = (
            load_criteria(json.dumps(body.criteria)) if body.criteria is not None else None
        )
        matrix = load_matrix(body.matrix_csv) if body.matrix_csv is not None else None
        session = create_session(
            alternatives=body.alternatives,
            facilitator_id=body.facilitator.id,
            facilitator_name=body.facilitator.display_name,
            criteria=criteria,
            matrix=matrix,
        )
        store.save(session)
        token = session.facilitator.token
        return {"session": session_view(session, token), "token": token}

    @app.get("/sessions/{session_id}")
    def get_session(
        session_id: str, token: Optional[str] = Header(None, alias=TOKEN_HEADER)
    ):
        with store.read(session_id) as session:
            return session_view(session, token)

    @app.post("/sessions/{session_id}/participants", status_code=201)
    def enroll(
        session_id: str,
        body: EnrollBody,
        token: Optional[str] = Header(None, alias=TOKEN_HEADER),
    ):
        with store.mutate(session_id) as session:
            _require_facilitator(session, token)
            p = session.add_participant(
                body.id, body.display_name or body.id, body.role
            )
            return {
                "participant": {
                    "id": p.id,
                    "display_name": p.display_name,
                    "role": p.role.value,
                },
                "token": p.token,
            }

    @app.post("/sessions/{session_id}/phase")
    def advance_phase(
        session_id: str,
        body: PhaseBody,
        token: Optional[str] = Header(None, alias=TOKEN_HEADER),
    ):
        with store.mutate(session_id) as session:
            _require_facilitator(session, token)
            session.advance_phase(body.advance_to)
            return session_view(session, token)

    @app.put("/sessions/{session_id}/ballots/{participant_id}")
    def submit_ballot(
        session_id: str,
        participant_id: str,
        body: BallotBody,
        token: Optional[str] = Header(None, alias=TOKEN_HEADER),
    ):
        with store.mutate(session_id) as session:
            caller = session.participant_by_token(token)
            if caller is None or caller.id != participant_id:
                raise AuthError("ballots require the participant's own token")
            session.submit_ballot(participant_id, body.ranking)
            return {"ballot_count": len(session.ballots)}

    @app.post("/sessions/{session_id}/suggest")
    def suggest(
        session_id: str,
        body: SuggestBody,
        token: Optional[str] = Header(None, alias=TOKEN_HEADER),
    ):
        with store.read(session_id) as session:
            if session.participant_by_token(token) is None:
                raise AuthError("an enrolled participant token is required")
            ranking = session.suggest_ballot(body.weights)
            return {"ranking": list(ranking.ordered)}

    @app.get("/sessions/{session_id}/results")
    def results(session_id: str, method: str = Query(...)):
        with store.read(session_id) as session:
            doc = session.get_results(method).to_doc()
            if method == "condorcet":
                # the ballots are frozen once results exist, so this is a
                # deterministic derivation of the stored result
                pw = pairwise_matrix(session.profile())
                doc["pairwise"] = {
                    "alternatives": list(pw.alternatives),
                    "wins": [[int(v) for v in row] for row in pw.wins],
                    "voter_count": pw.voter_count,
                }
            return doc

    if frontend_dir is not None and Path(frontend_dir).is_dir():
        app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="ui")

    return app
