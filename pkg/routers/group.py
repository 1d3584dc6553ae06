# routers/group.py

from typing import Annotated

import typer

from schemas.report import CommandReport
from services.group import sorted_members
from utils.context import BudgetOption, FixturesOption, JsonFlag, SeedOption, ThreadsOption, get_context, respond

router = typer.Typer(help="finite groups")


@router.command("info", help="load a group file and summarize it")
def group_info(
    ctx: typer.Context,
    file: Annotated[str, typer.Argument(help="group JSON file or fixture name")],
    subgroups: Annotated[bool, typer.Option("--subgroups", help="list every subgroup")] = False,
    as_json: JsonFlag = False,
    threads: ThreadsOption = None,
    budget: BudgetOption = None,
    seed: SeedOption = None,
    fixtures: FixturesOption = None,
):
    run = get_context(ctx, as_json, threads, budget, seed, fixtures)
    group = run.loader.group(file)
    names = group.names
    found = group.all_subgroups()
    normal = [h for h in found if group.is_normal_subgroup(h)]

    lines = [
        f"{group.name}: order {group.order}, {'abelian' if group.is_abelian else 'non-abelian'}",
        f"identity {names[group.identity]}; generators {', '.join(names[g] for g in group.generating_set())}",
        f"{len(found)} subgroups, {len(normal)} normal",
    ]
    data = {
        "name": group.name,
        "order": group.order,
        "abelian": group.is_abelian,
        "elements": list(names),
        "subgroup_count": len(found),
        "normal_subgroup_count": len(normal),
    }
    if subgroups:
        listed = [[names[x] for x in sorted_members(h)] for h in found]
        data["subgroups"] = listed
        lines += ["  {" + ", ".join(h) + "}" for h in listed]
    respond(run, CommandReport(command="group info", data=data, lines=lines))
