# app.py

import logging
import sys
from typing import Annotated, List, Optional, Sequence

import typer

try:  # typer >= 0.26 vendors click as typer._click; its exceptions are not the standalone click's
    from typer import _click as click
except ImportError:
    import click
from pydantic import ValidationError

from routers import group, lattice, lsub, maxfrat, theory, verify
from schemas.report import ErrorReport
from utils import config
from utils.context import BudgetOption, FixturesOption, GlobalOptions, JsonFlag, SeedOption, ThreadsOption
from utils.errors import EXIT_INPUT, LGLError
from utils.fixtures import error_field

VERSION = "1.0.0"

logging.basicConfig(
    level=getattr(logging, config.LOG_LEVEL, logging.WARNING),
    format="%(asctime)s %(levelname)s %(name)s: %(message)s",
)
logger = logging.getLogger(__name__)

app = typer.Typer(
    name="lgl",
    help="Lattice-valued subgroups of finite groups: constructions and checks.",
    add_completion=False,
    no_args_is_help=True,
)


def _version(value: bool) -> None:
    if value:
        typer.echo(f"lgl {VERSION}")
        raise typer.Exit()


@app.callback()
def global_options(
    ctx: typer.Context,
    as_json: JsonFlag = False,
    threads: ThreadsOption = None,
    budget: BudgetOption = None,
    seed: SeedOption = None,
    fixtures: FixturesOption = None,
    version: Annotated[
        Optional[bool], typer.Option("--version", callback=_version, is_eager=True, help="show the version and exit")
    ] = None,
):
    ctx.obj = GlobalOptions(as_json, threads, budget, seed, fixtures)


def include_router(router: typer.Typer) -> None:
    """Mount a router's commands at the top level instead of under a group name."""
    app.registered_commands.extend(router.registered_commands)


app.add_typer(lattice.router, name="lattice")
app.add_typer(group.router, name="group")
app.add_typer(lsub.router, name="lsub")
include_router(theory.router)
include_router(maxfrat.router)
include_router(verify.router)


def _fail(err: str, exit_code: int, as_json: bool, field: Optional[str] = None) -> int:
    typer.echo(f"error: {err}", err=True)
    if as_json:
        typer.echo(ErrorReport(error=err, exit_code=exit_code, field=field).to_json())
    return exit_code


def _param_field(err: click.ClickException) -> Optional[str]:
    param = getattr(err, "param", None)
    if param is None:
        return None
    return param.opts[0] if param.opts else param.name


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv: List[str] = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    command = typer.main.get_command(app)
    try:
        return command.main(args=argv, prog_name="lgl", standalone_mode=False) or 0
    except click.ClickException as err:
        # usage errors: unknown command, missing or malformed option
        return _fail(err.format_message(), EXIT_INPUT, as_json, _param_field(err))
    except click.exceptions.Abort:
        return _fail("aborted", EXIT_INPUT, as_json)
    except LGLError as err:
        logger.debug("command failed: %s", err.detail)
        return _fail(err.detail, err.exit_code, as_json, err.field)
    except ValidationError as err:
        return _fail(str(err).splitlines()[0], EXIT_INPUT, as_json, error_field(err))


if __name__ == "__main__":
    sys.exit(main())
