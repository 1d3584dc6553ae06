# routers/lsub.py

from enum import Enum
from typing import Annotated, Optional

import typer

from schemas.report import CommandReport, LSubsetOut
from services.lgroup import is_lsubgroup, is_lsubgroup_of, is_normal, is_proper
from services.lset import has_sup_property
from utils.context import BudgetOption, FixturesOption, JsonFlag, SeedOption, ThreadsOption, get_context, respond
from utils.errors import EXIT_OK, EXIT_VIOLATION

router = typer.Typer(help="L-subsets")

MODES = ("pointwise", "levels", "strong-levels")


class Mode(str, Enum):
    pointwise = "pointwise"
    levels = "levels"
    strong_levels = "strong-levels"
    all = "all"


@router.command("check", help="decide whether an L-subset is an L-subgroup")
def check_lsubset(
    ctx: typer.Context,
    file: Annotated[str, typer.Argument(help="L-subset JSON file")],
    mode: Annotated[Mode, typer.Option("--mode")] = Mode.pointwise,
    mu_ref: Annotated[
        Optional[str],
        typer.Option("--mu", help="ambient L-subgroup; also report membership, properness and normality"),
    ] = None,
    as_json: JsonFlag = False,
    threads: ThreadsOption = None,
    budget: BudgetOption = None,
    seed: SeedOption = None,
    fixtures: FixturesOption = None,
):
    run = get_context(ctx, as_json, threads, budget, seed, fixtures)
    eta = run.loader.lsubset(file)
    if mode is Mode.all:
        modes = [m for m in MODES if m != "strong-levels" or eta.lattice.is_chain]
    else:
        modes = [mode.value]
    witnesses = [is_lsubgroup(eta, m) for m in modes]
    verdict = all(w.verdict for w in witnesses)
    out = LSubsetOut.of(eta)

    lines = [f"L-subgroup: {str(verdict).lower()}"]
    for w in witnesses:
        if not w.verdict:
            lines.append(f"  {w.mode}: fails at {w.describe()}")
    lines.append(f"tip {out.tip}, tail {out.tail}, sup-property {str(has_sup_property(eta)).lower()}")
    data = {
        "lsubgroup": verdict,
        "modes": {
            w.mode: {"verdict": w.verdict, "counterexample": list(w.counterexample) if w.counterexample else None}
            for w in witnesses
        },
        "sup_property": has_sup_property(eta),
        "subject": out.model_dump(),
    }

    if mu_ref:
        mu = run.loader.lsubset(mu_ref)
        member = is_lsubgroup_of(eta, mu)
        data["lsubgroup_of_mu"] = member
        data["proper"] = is_proper(eta, mu)
        data["normal_in_mu"] = is_normal("in-lgroup", eta, mu) if member else None
        lines.append(f"in L(mu): {str(member).lower()}, proper: {str(data['proper']).lower()}")
        if member:
            lines.append(f"normal in mu: {str(data['normal_in_mu']).lower()}")

    respond(
        run,
        CommandReport(
            command="lsub check",
            exit_code=EXIT_OK if verdict else EXIT_VIOLATION,
            data=data,
            lines=lines,
        ),
    )
