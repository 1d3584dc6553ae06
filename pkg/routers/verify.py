# routers/verify.py

import logging
from typing import Annotated, Optional

import typer

from services.suites import list_suites, run_suite
from utils import config
from utils.context import BudgetOption, FixturesOption, JsonFlag, SeedOption, ThreadsOption, get_context, respond
from utils.errors import EXIT_BUDGET, EXIT_OK, EXIT_VIOLATION, InputError

logger = logging.getLogger(__name__)

router = typer.Typer()


@router.command("verify", help="run a verification suite on seeded random instances")
def verify(
    ctx: typer.Context,
    suite_id: Annotated[Optional[str], typer.Argument(metavar="SUITE", help="suite id (see --list)")] = None,
    cases: Annotated[Optional[int], typer.Option("--cases", min=1, help=f"cases to draw (default {config.CASES})")] = None,
    case: Annotated[Optional[int], typer.Option("--case", min=0, help="replay a single case index")] = None,
    list_all: Annotated[bool, typer.Option("--list", help="list the available suites")] = False,
    as_json: JsonFlag = False,
    threads: ThreadsOption = None,
    budget: BudgetOption = None,
    seed: SeedOption = None,
    fixtures: FixturesOption = None,
):
    run = get_context(ctx, as_json, threads, budget, seed, fixtures)
    if list_all:
        listing = list_suites()
        lines = [f"{s.suite_id:<18} {s.result:<40} {s.description}" for s in listing.suites]
        respond(run, (listing, EXIT_OK, lines))
    if suite_id is None:
        raise InputError("verify: give a suite id or --list", field="suite")

    report = run_suite(
        suite_id,
        seed=run.seed,
        cases=cases,
        budget=run.budget.max_candidates,
        threads=run.threads,
        case=case,
        loader=run.loader,
    )
    if report.violations:
        exit_code = EXIT_VIOLATION
    elif report.budget_status == "partial":
        exit_code = EXIT_BUDGET
    else:
        exit_code = EXIT_OK

    status = "PASS" if exit_code == EXIT_OK else ("FAIL" if report.violations else "PARTIAL")
    lines = [
        f"{status} {report.suite_id} ({report.result}): {report.cases_checked}/{report.cases_run} cases checked,"
        f" {len(report.violations)} violations, seed {report.seed}, {report.elapsed_ms} ms"
    ]
    for v in report.violations[:10]:
        lines.append(f"  case {v.case}: {v.property}  [{v.inputs.get('replay', '')}]")
    if len(report.violations) > 10:
        lines.append(f"  ... {len(report.violations) - 10} more")
    respond(run, (report, exit_code, lines))
