# utils/context.py

from dataclasses import dataclass, fields
from pathlib import Path
from typing import Annotated, List, Optional, Tuple, Union

import typer

from models import EnumerationBudget
from schemas.report import CommandReport, VersionedModel
from utils import config
from utils.errors import InputError
from utils.fixtures import FixtureLoader

# Global options. The root callback takes them before the subcommand and every
# command takes them again, so `lgl gen ... --json` works as well as `lgl --json gen ...`.
JsonFlag = Annotated[bool, typer.Option("--json", help="emit the JSON report instead of text")]
ThreadsOption = Annotated[Optional[int], typer.Option("--threads", min=1, help=f"worker threads (default {config.THREADS})")]
BudgetOption = Annotated[Optional[int], typer.Option("--budget", min=1, help=f"enumeration budget (default {config.BUDGET})")]
SeedOption = Annotated[Optional[int], typer.Option("--seed", help=f"suite seed (default {config.SEED})")]
FixturesOption = Annotated[Optional[Path], typer.Option("--fixtures", help="directory searched for fixture names")]

Outcome = Union[CommandReport, Tuple[VersionedModel, int, List[str]]]


@dataclass
class GlobalOptions:
    as_json: bool = False
    threads: Optional[int] = None
    budget: Optional[int] = None
    seed: Optional[int] = None
    fixtures: Optional[Path] = None

    def override(self, other: "GlobalOptions") -> "GlobalOptions":
        """Values given on the command win over those given before it."""
        merged = {}
        for f in fields(self):
            mine, theirs = getattr(self, f.name), getattr(other, f.name)
            merged[f.name] = theirs if theirs not in (None, False) else mine
        return GlobalOptions(**merged)


@dataclass
class RunContext:
    """What every command handler needs besides its own arguments."""

    loader: FixtureLoader
    budget: EnumerationBudget
    threads: int
    seed: int
    as_json: bool = False


def get_context(
    ctx: typer.Context,
    as_json: bool = False,
    threads: Optional[int] = None,
    budget: Optional[int] = None,
    seed: Optional[int] = None,
    fixtures: Optional[Path] = None,
) -> RunContext:
    root = ctx.obj if isinstance(ctx.obj, GlobalOptions) else GlobalOptions()
    given = root.override(GlobalOptions(as_json, threads, budget, seed, fixtures))

    # command-line flags win over the environment
    threads = config.THREADS if given.threads is None else given.threads
    budget = config.BUDGET if given.budget is None else given.budget
    if threads <= 0:
        raise InputError("threads: must be a positive integer", field="--threads")
    if budget <= 0:
        raise InputError("budget: must be a positive integer", field="--budget")
    return RunContext(
        loader=FixtureLoader(given.fixtures or config.FIXTURES_DIR),
        budget=EnumerationBudget(max_candidates=budget, max_results=budget, threads=threads),
        threads=threads,
        seed=config.SEED if given.seed is None else given.seed,
        as_json=given.as_json,
    )


def respond(run: RunContext, outcome: Outcome) -> None:
    """Print the report as text or JSON and leave with its exit code."""
    if isinstance(outcome, CommandReport):
        report, exit_code, lines = outcome, outcome.exit_code, outcome.lines
    else:
        report, exit_code, lines = outcome
    if run.as_json:
        typer.echo(report.to_json())
    else:
        for line in lines:
            typer.echo(line)
    raise typer.Exit(code=exit_code)
