# routers/lattice.py

import logging
from typing import Annotated, Optional

import typer

from schemas.report import CommandReport
from services.reconstruction import TARGET_SIZE, check_constraints, search_reconstructions
from utils.context import BudgetOption, FixturesOption, JsonFlag, SeedOption, ThreadsOption, get_context, respond
from utils.errors import EXIT_OK, EXIT_VIOLATION

logger = logging.getLogger(__name__)

router = typer.Typer(help="finite lattices")


@router.command("check", help="validate a lattice file and report distributivity and chain shape")
def check_lattice(
    ctx: typer.Context,
    file: Annotated[str, typer.Argument(help="lattice JSON file or fixture name")],
    as_json: JsonFlag = False,
    threads: ThreadsOption = None,
    budget: BudgetOption = None,
    seed: SeedOption = None,
    fixtures: FixturesOption = None,
):
    run = get_context(ctx, as_json, threads, budget, seed, fixtures)
    lattice = run.loader.lattice(file)
    distributive, witness = lattice.is_distributive()
    shape = lattice.chain_properties()
    names = lattice.elements

    verdict = ["valid", "distributive" if distributive else "not distributive"]
    verdict.append("chain" if shape["is_chain"] else "not a chain")
    lines = [", ".join(verdict)]
    if witness:
        lines.append("witness: x ∧ (y ∨ z) != (x ∧ y) ∨ (x ∧ z) at x={}, y={}, z={}".format(*witness))
    lines.append(f"{lattice.name}: {len(lattice)} elements, bottom {names[lattice.bottom]}, top {names[lattice.top]}")

    # distributivity is reported, not enforced; commands that need it raise NotDistributive
    respond(
        run,
        CommandReport(
            command="lattice check",
            data={
                "name": lattice.name,
                "size": len(lattice),
                "elements": list(names),
                "bottom": names[lattice.bottom],
                "top": names[lattice.top],
                "distributive": distributive,
                "witness": list(witness) if witness else None,
                **shape,
                "covers": [[names[x], names[y]] for x, y in lattice.covers()],
            },
            lines=lines,
        ),
    )


@router.command("reconstruct", help="search small distributive lattices that can host the S4 nilpotent example")
def reconstruct_lattice(
    ctx: typer.Context,
    max_points: Annotated[int, typer.Option("--max-points", min=1, help="largest poset of join-irreducibles to try")] = 6,
    limit: Annotated[int, typer.Option("--limit", min=1, help="stop after this many compatible lattices")] = 1,
    check: Annotated[Optional[str], typer.Option("--check", help="only test this lattice file against the constraints")] = None,
    as_json: JsonFlag = False,
    threads: ThreadsOption = None,
    budget: BudgetOption = None,
    seed: SeedOption = None,
    fixtures: FixturesOption = None,
):
    run = get_context(ctx, as_json, threads, budget, seed, fixtures)
    if check:
        lattice = run.loader.lattice(check)
        failed = check_constraints(lattice)
        lines = [f"{lattice.name}: {'compatible' if not failed else 'incompatible'}"] + [f"  {f}" for f in failed]
        respond(
            run,
            CommandReport(
                command="lattice reconstruct",
                exit_code=EXIT_OK if not failed else EXIT_VIOLATION,
                data={"lattice": lattice.name, "compatible": not failed, "failed": failed},
                lines=lines,
            ),
        )
    result = search_reconstructions(max_points, limit)
    lines = [f"{result.posets_examined} posets with {TARGET_SIZE} down-sets, {len(result.lattices)} compatible"]
    for found in result.lattices:
        names = found.elements
        lines.append(f"{found.name}: " + ", ".join(f"{names[x]}<{names[y]}" for x, y in found.covers()))
    respond(
        run,
        CommandReport(
            command="lattice reconstruct",
            exit_code=EXIT_OK if result.satisfiable else EXIT_VIOLATION,
            data={
                "satisfiable": result.satisfiable,
                "posets_examined": result.posets_examined,
                "complete": result.complete,
                "lattices": [
                    {"name": l.name, "covers": [[l.elements[x], l.elements[y]] for x, y in l.covers()]}
                    for l in result.lattices
                ],
            },
            lines=lines,
        ),
    )
