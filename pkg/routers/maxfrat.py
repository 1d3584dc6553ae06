# routers/maxfrat.py

import logging
from enum import Enum
from typing import Annotated, Optional

import typer

from schemas.report import CommandReport, LSubsetOut
from services.maxfrat import all_maximal, frattini, generating_points, is_maximal, maximal_condition_report
from utils.context import BudgetOption, FixturesOption, JsonFlag, SeedOption, ThreadsOption, get_context, respond
from utils.errors import EXIT_OK, EXIT_VIOLATION, InputError

logger = logging.getLogger(__name__)

router = typer.Typer()

MuOption = Annotated[str, typer.Option("--mu", help="ambient L-subgroup")]


class Via(str, Enum):
    enumeration = "enumeration"
    nongenerators = "nongenerators"
    both = "both"


@router.command("maximal", help="decide maximality of eta in mu, or list the maximal L-subgroups of mu")
def maximal(
    ctx: typer.Context,
    mu_ref: MuOption,
    eta_ref: Annotated[Optional[str], typer.Option("--eta")] = None,
    list_all: Annotated[bool, typer.Option("--list", help="list every maximal L-subgroup of mu")] = False,
    as_json: JsonFlag = False,
    threads: ThreadsOption = None,
    budget: BudgetOption = None,
    seed: SeedOption = None,
    fixtures: FixturesOption = None,
):
    run = get_context(ctx, as_json, threads, budget, seed, fixtures)
    mu = run.loader.lsubset(mu_ref)
    if list_all:
        found = all_maximal(mu, run.budget)
        outs = [LSubsetOut.of(m) for m in found]
        respond(
            run,
            CommandReport(
                command="maximal",
                data={"maximal": [o.model_dump() for o in outs], "count": len(outs)},
                lines=[f"{len(outs)} maximal L-subgroups"] + [f"  {o.text()}" for o in outs],
            ),
        )
    if eta_ref is None:
        raise InputError("maximal: --eta is required unless --list is given", field="--eta")
    eta = run.loader.lsubset(eta_ref)
    cert = is_maximal(eta, mu, run.budget)
    head = f"maximal: {str(cert.verdict).lower()}"
    if cert.box_size:
        head += f" (box {cert.box_size}, survivors {cert.survivors})"
    lines = [head]
    if cert.reason:
        lines.append(f"reason: {cert.reason}")
    between = LSubsetOut.of(cert.strict_intermediate) if cert.strict_intermediate is not None else None
    if between is not None:
        lines.append(f"strictly between: {between.text()}")
    respond(
        run,
        CommandReport(
            command="maximal",
            data={
                "maximal": cert.verdict,
                "box_size": cert.box_size,
                "survivors": cert.survivors,
                "reason": cert.reason or None,
                "strict_intermediate": between.model_dump() if between else None,
            },
            lines=lines,
        ),
    )


@router.command("frattini", help="Frattini L-subgroup of mu")
def frattini_command(
    ctx: typer.Context,
    mu_ref: MuOption,
    via: Annotated[Via, typer.Option("--via")] = Via.enumeration,
    as_json: JsonFlag = False,
    threads: ThreadsOption = None,
    budget: BudgetOption = None,
    seed: SeedOption = None,
    fixtures: FixturesOption = None,
):
    run = get_context(ctx, as_json, threads, budget, seed, fixtures)
    mu = run.loader.lsubset(mu_ref)
    result = frattini(mu, run.budget, via.value)
    data = {"via": via.value, "maximal_count": len(result.maximal)}
    lines = [f"{len(result.maximal)} maximal L-subgroups"]
    if result.phi is not None:
        data["frattini"] = LSubsetOut.of(result.phi).model_dump()
        lines.append(f"frattini: {LSubsetOut.of(result.phi).text()}")
    if result.nongenerators is not None:
        data["nongenerators"] = LSubsetOut.of(result.nongenerators).model_dump()
        lines.append(f"non-generators: {LSubsetOut.of(result.nongenerators).text()}")
    exit_code = EXIT_OK
    if via is Via.both:
        data["contained"], data["agree"] = result.contained, result.agree
        lines.append(f"non-generators inside frattini: {str(result.contained).lower()}, equal: {str(result.agree).lower()}")
        if not result.contained:
            exit_code = EXIT_VIOLATION
    respond(run, CommandReport(command="frattini", exit_code=exit_code, data=data, lines=lines))


@router.command("fingen", help="finite generating L-points of mu and the maximal-condition report")
def fingen(
    ctx: typer.Context,
    mu_ref: MuOption,
    k_max: Annotated[
        Optional[int],
        typer.Option("--k-max", min=0, help="also search for a smallest generating set up to this size"),
    ] = None,
    as_json: JsonFlag = False,
    threads: ThreadsOption = None,
    budget: BudgetOption = None,
    seed: SeedOption = None,
    fixtures: FixturesOption = None,
):
    run = get_context(ctx, as_json, threads, budget, seed, fixtures)
    mu = run.loader.lsubset(mu_ref)
    gens = generating_points(mu, k_max, run.budget)
    report = maximal_condition_report(mu, run.budget)
    lines = [f"generated by: {', '.join(gens.labels()) or '(nothing)'}"]
    data = {
        "points": gens.labels(),
        "complete": gens.complete,
        "lsubgroup_count": report.count,
        "longest_chain": report.longest_chain,
    }
    if k_max is not None:
        if gens.minimum is not None:
            data["minimum"] = gens.labels(gens.minimum)
            lines.append(f"smallest: {len(gens.minimum)} points ({', '.join(data['minimum']) or 'none'})")
        else:
            data["minimum"] = None
            lines.append(f"no generating set with at most {k_max} points")
    lines.append(f"{report.count} L-subgroups, longest chain {report.longest_chain}")
    respond(run, CommandReport(command="fingen", data=data, lines=lines))
