# routers/theory.py

import logging
from typing import Annotated, Optional

import typer

from schemas.report import CommandReport, LSubsetOut
from services.group import sorted_members
from services.lgroup import (
    central_chain,
    closure_series,
    conjugate_closure,
    generated,
    is_lsubgroup,
    is_normal,
    nilpotency_class,
    normalizer,
    normalizer_chain,
)
from services.lset import chi, level
from utils.context import BudgetOption, FixturesOption, JsonFlag, SeedOption, ThreadsOption, get_context, respond
from utils.errors import InputError, NotAnLSubgroup
from utils.fixtures import parse_points

logger = logging.getLogger(__name__)

router = typer.Typer()

MuOption = Annotated[str, typer.Option("--mu", help="ambient L-subgroup")]
EtaOption = Annotated[str, typer.Option("--eta", help="L-subgroup of mu")]


def _stage_lines(title: str, stages) -> list:
    bottom = stages[0].lattice.elements[stages[0].lattice.bottom] if stages else None
    return [f"{title} {i}: {LSubsetOut.of(s).text(skip=bottom)}" for i, s in enumerate(stages)]


def _members(group, members) -> list:
    return [group.names[x] for x in sorted_members(members)]


@router.command("gen", help="L-subgroup generated by an L-subset or a list of L-points")
def generate(
    ctx: typer.Context,
    mu_ref: MuOption,
    points: Annotated[Optional[str], typer.Option("--points", help='comma-separated L-points, e.g. "b@r2,c@s"')] = None,
    eta_ref: Annotated[Optional[str], typer.Option("--eta", help="L-subset file to generate from")] = None,
    levels: Annotated[bool, typer.Option("--levels", help="show each level and the subgroup it generates")] = False,
    as_json: JsonFlag = False,
    threads: ThreadsOption = None,
    budget: BudgetOption = None,
    seed: SeedOption = None,
    fixtures: FixturesOption = None,
):
    run = get_context(ctx, as_json, threads, budget, seed, fixtures)
    if (points is None) == (eta_ref is None):
        raise InputError("gen: give exactly one of --points and --eta", field="--points")
    mu = run.loader.lsubset(mu_ref)
    if not is_lsubgroup(mu).verdict:
        raise NotAnLSubgroup("mu: not an L-subgroup", field="--mu")
    if points is not None:
        eta = chi(mu.group, mu.lattice, parse_points(points, mu.group, mu.lattice))
    else:
        eta = run.loader.lsubset(eta_ref)
    result = generated(eta, mu)
    out = LSubsetOut.of(result)
    equals_mu = result.values == mu.values

    lines = [f"generated: {out.text()}", f"equals mu: {str(equals_mu).lower()}"]
    data = {"input": LSubsetOut.of(eta).model_dump(), "generated": out.model_dump(), "equals_mu": equals_mu}
    if levels:
        lattice, group = eta.lattice, eta.group
        rows = []
        for a in lattice.down_set(eta.tip):
            members = level(eta, a)
            rows.append(
                {
                    "value": lattice.elements[a],
                    "level": _members(group, members),
                    "generated_level": _members(group, group.generated_subgroup(members)),
                    "level_of_generated": _members(group, level(result, a)),
                }
            )
            lines.append(f"  {lattice.elements[a]}: <{{{', '.join(rows[-1]['level'])}}}> = {{{', '.join(rows[-1]['generated_level'])}}}")
        data["levels"] = rows
    respond(run, CommandReport(command="gen", data=data, lines=lines))


@router.command("nilpotency", help="descending central chain and nilpotency class")
def nilpotency(
    ctx: typer.Context,
    mu_ref: MuOption,
    crisp: Annotated[bool, typer.Option("--crisp", help="use the lattice bottom off the commutators (classical groups)")] = False,
    as_json: JsonFlag = False,
    threads: ThreadsOption = None,
    budget: BudgetOption = None,
    seed: SeedOption = None,
    fixtures: FixturesOption = None,
):
    run = get_context(ctx, as_json, threads, budget, seed, fixtures)
    mu = run.loader.lsubset(mu_ref)
    floor = mu.lattice.bottom if crisp else None
    klass = nilpotency_class(mu, floor)
    chain = central_chain(mu, floor)
    if klass is None:
        head = f"not nilpotent: the central chain stabilizes after {len(chain.stages) - 1} steps"
    else:
        head = f"nilpotent, class {klass}"
    respond(
        run,
        CommandReport(
            command="nilpotency",
            data={
                "nilpotent": klass is not None,
                "class": klass,
                "crisp": crisp,
                "stages": [LSubsetOut.of(s).model_dump() for s in chain.stages],
            },
            lines=[head] + _stage_lines("Z", chain.stages),
        ),
    )


@router.command("normalizer", help="normalizer of eta in mu, or the ascending chain of normalizers")
def normalizer_command(
    ctx: typer.Context,
    eta_ref: EtaOption,
    mu_ref: MuOption,
    chain: Annotated[bool, typer.Option("--chain", help="iterate until the normalizer stops growing")] = False,
    as_json: JsonFlag = False,
    threads: ThreadsOption = None,
    budget: BudgetOption = None,
    seed: SeedOption = None,
    fixtures: FixturesOption = None,
):
    run = get_context(ctx, as_json, threads, budget, seed, fixtures)
    eta, mu = run.loader.lsubset_pair(eta_ref, mu_ref)
    normal = is_normal("in-lgroup", eta, mu)
    if chain:
        stages = normalizer_chain(eta, mu)
        reaches = stages[-1].values == mu.values
        respond(
            run,
            CommandReport(
                command="normalizer",
                data={
                    "normal": normal,
                    "chain": [LSubsetOut.of(s).model_dump() for s in stages],
                    "reaches_mu": reaches,
                },
                lines=[f"normal in mu: {str(normal).lower()}", f"reaches mu: {str(reaches).lower()}"]
                + _stage_lines("N", stages),
            ),
        )
    result = normalizer(eta, mu)
    out = LSubsetOut.of(result)
    respond(
        run,
        CommandReport(
            command="normalizer",
            data={"normal": normal, "normalizer": out.model_dump(), "equals_mu": result.values == mu.values},
            lines=[f"normal in mu: {str(normal).lower()}", f"normalizer: {out.text()}"],
        ),
    )


@router.command("closure", help="normal closure of eta in mu, its conjugate, or the normal closure series")
def closure(
    ctx: typer.Context,
    eta_ref: EtaOption,
    mu_ref: MuOption,
    series: Annotated[bool, typer.Option("--series")] = False,
    conjugate: Annotated[bool, typer.Option("--conjugate", help="the conjugate mu eta mu^-1 without generating")] = False,
    as_json: JsonFlag = False,
    threads: ThreadsOption = None,
    budget: BudgetOption = None,
    seed: SeedOption = None,
    fixtures: FixturesOption = None,
):
    run = get_context(ctx, as_json, threads, budget, seed, fixtures)
    if series and conjugate:
        raise InputError("closure: --series and --conjugate are exclusive", field="--conjugate")
    eta, mu = run.loader.lsubset_pair(eta_ref, mu_ref)
    if series:
        found = closure_series(eta, mu)
        respond(
            run,
            CommandReport(
                command="closure",
                data={
                    "series": [LSubsetOut.of(s).model_dump() for s in found.stages],
                    "stabilized": found.stabilized,
                    "reaches_eta": found.reached_eta,
                },
                lines=[f"reaches eta: {str(found.reached_eta).lower()}"] + _stage_lines("eta^", found.stages),
            ),
        )
    want = "conjugate" if conjugate else "closure"
    result = conjugate_closure(eta, mu, want)
    out = LSubsetOut.of(result)
    respond(
        run,
        CommandReport(
            command="closure",
            data={want: out.model_dump(), "equals_eta": result.values == eta.values},
            lines=[f"{want}: {out.text()}"],
        ),
    )
