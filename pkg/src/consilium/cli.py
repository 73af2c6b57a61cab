"""Batch front door: score a matrix, tally ballot files, run the bundled
demo end-to-end, or launch the HTTP service.

Exit codes: 0 ok; 2 input parse/validation error; 3 no Condorcet winner
under --strict-condorcet.
"""

from __future__ import annotations

import functools
import json
import socket
import sys
from pathlib import Path

import click

from . import demo as demo_mod
from .errors import ConsiliumError
from .model import load_criteria, load_matrix
from .scoring import score_doc, score_matrix
from .voting import load_ballots, tally

EXIT_INPUT_ERROR = 2
EXIT_NO_WINNER = 3


def _echo_doc(doc: dict):
    click.echo(json.dumps(doc, indent=2, ensure_ascii=False))


def _input_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except ConsiliumError as e:
            click.echo(f"error ({e.code}): {e}", err=True)
            sys.exit(EXIT_INPUT_ERROR)
        except OSError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_INPUT_ERROR)

    return wrapper


@click.group()
def main():
    """Group decision toolkit: weighted-criteria scoring and ranked-ballot
    voting (Borda, Condorcet) for multi-stakeholder sessions."""


@main.command("score")
@click.argument("matrix_file", type=click.Path(path_type=Path))
@click.argument("criteria_file", type=click.Path(path_type=Path))
@click.option("--json", "as_json", is_flag=True, default=False, help="Emit exactly one JSON document (already the default output).")
@_input_errors
def cmd_score(matrix_file: Path, criteria_file: Path, as_json: bool):
    """Rank MATRIX_FILE (CSV) under CRITERIA_FILE (JSON) with weighted-sum
    scoring and print scores plus the derived ranking."""
    matrix = load_matrix(matrix_file.read_text(encoding="utf-8"))
    criteria = load_criteria(criteria_file.read_text(encoding="utf-8"))
    scores, ranking = score_matrix(matrix, criteria)
    _echo_doc(score_doc(scores, ranking))


@main.command("vote")
@click.argument("ballots_file", type=click.Path(path_type=Path))
@click.argument("method", type=click.Choice(["borda", "condorcet"]))
@click.option("--strict-condorcet", is_flag=True, default=False, help="Exit 3 when no Condorcet winner exists.")
@click.option("--json", "as_json", is_flag=True, default=False, help="Emit exactly one JSON document (already the default output).")
@_input_errors
def cmd_vote(ballots_file: Path, method: str, strict_condorcet: bool, as_json: bool):
    """Tally BALLOTS_FILE (JSON, {voters: [{id, ranking}]}) with METHOD."""
    profile = load_ballots(ballots_file.read_text(encoding="utf-8"))
    result = tally(profile, method)
    if strict_condorcet and method == "condorcet" and not result.has_condorcet_winner:
        click.echo("no Condorcet winner", err=True)
        sys.exit(EXIT_NO_WINNER)
    _echo_doc(result.to_doc())


@main.command("demo")
@click.option("--unanimous", is_flag=True, default=False, help="All three decision makers use the baseline weights.")
@click.option("--seed", type=int, default=None, help="Randomize the weight presets (demo inputs only).")
@click.option("--json", "as_json", is_flag=True, default=False, help="Emit the run as one JSON document instead of text.")
@_input_errors
def cmd_demo(unanimous: bool, seed: int | None, as_json: bool):
    """Run the bundled 24-area siting session end to end and print both
    methods' top-5 classification."""
    run = demo_mod.run_demo(seed=seed, unanimous=unanimous)
    if as_json:
        _echo_doc(demo_mod.as_doc(run))
    else:
        click.echo(demo_mod.format_text(run), nl=False)


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8400, show_default=True)
@click.option(
    "--data-dir",
    type=click.Path(path_type=Path),
    envvar="CONSILIUM_DATA_DIR",
    default=Path("consilium_data"),
    show_default=True,
    help="Where session documents are persisted (env: CONSILIUM_DATA_DIR).",
)
@click.option(
    "--frontend-dir",
    type=click.Path(path_type=Path),
    envvar="CONSILIUM_FRONTEND_DIR",
    default=None,
    help="Optional static web UI build to serve at /.",
)
def cmd_serve(host: str, port: int, data_dir: Path, frontend_dir: Path | None):
    """Serve the session HTTP API until interrupted."""
    import uvicorn

    from .service import create_app
    from .store import SessionStore

    try:
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host, port))
        probe.close()
    except OSError as e:
        click.echo(f"error: cannot bind {host}:{port}: {e}", err=True)
        sys.exit(1)
    try:
        store = SessionStore(data_dir)
    except OSError as e:
        click.echo(f"error: data dir {data_dir}: {e}", err=True)
        sys.exit(1)
    app = create_app(store, frontend_dir=frontend_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
