import logging
from typing import Any, Optional

import typer
from pydantic import ValidationError

from app.cms_ops import OperatorKind
from app.commands import render_text, run
from app.schemas.response import EXIT_CHECK_FAILED, EXIT_PRECONDITION, JobResponse
from app.schemas.schemas import Command, JobConfig, OutputFormat, Suite

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

cli = typer.Typer(
    name="jack-laurent",
    help="Jack–Laurent symmetric functions and the deformed CMS operators.",
    no_args_is_help=True,
)

LamOption = typer.Option("", "--lam", help="Partition λ, comma-separated (0 or empty for ∅)")
MuOption = typer.Option("", "--mu", help="Partition μ, comma-separated (0 or empty for ∅)")
NumericOption = typer.Option(False, "--numeric", help="Fix k and p0 to rationals")
KOption = typer.Option(None, "--k", help="Rational k, e.g. 1/3 (numeric mode)")
P0Option = typer.Option(None, "--p0", help="Rational p0 (numeric mode)")
OutOption = typer.Option(OutputFormat.JSON, "--out", help="json or text")
CatalogOption = typer.Option(None, "--catalog", help="Database URL of the results catalog")


@cli.callback()
def configure(verbose: bool = typer.Option(False, "--verbose", help="Log at DEBUG level")) -> None:
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)


def validation_response(exc: ValidationError) -> JobResponse:
    """Format validation errors in the standard response envelope."""
    errors = []
    for error in exc.errors():
        field = ".".join(str(loc) for loc in error["loc"])
        errors.append({
            "field": field if field else "options",
            "message": error["msg"],
            "type": error["type"]
        })
    return JobResponse.error_response(
        message="Validation error", errors=errors, exit_code=EXIT_PRECONDITION
    )


def execute(out: OutputFormat, **options: Any) -> None:
    """Validate the options, run the job, print the envelope and exit with its code."""
    try:
        response = run(JobConfig(**options))
    except ValidationError as exc:
        response = validation_response(exc)
    except Exception as exc:
        logger.error(f"Unhandled exception: {exc}", exc_info=True)
        response = JobResponse.error_response(
            message="Internal error",
            errors=[{"message": "An unexpected error occurred"}],
            exit_code=EXIT_CHECK_FAILED
        )
    if out is OutputFormat.TEXT:
        typer.echo(render_text(response))
    else:
        typer.echo(response.model_dump_json(indent=2))
    raise typer.Exit(code=response.exit_code)


@cli.command("jack-laurent")
def jack_laurent_command(
    lam: str = LamOption,
    mu: str = MuOption,
    numeric: bool = NumericOption,
    k: Optional[str] = KOption,
    p0: Optional[str] = P0Option,
    catalog: Optional[str] = CatalogOption,
    out: OutputFormat = OutOption,
) -> None:
    """Compute P_{λ,μ} in the monomial and power-sum bases."""
    execute(out, command=Command.JACK_LAURENT, lam=lam, mu=mu, numeric=numeric, k=k, p0=p0,
            catalog=catalog)


@cli.command("pieri")
def pieri_command(
    lam: str = LamOption,
    mu: str = MuOption,
    numeric: bool = NumericOption,
    k: Optional[str] = KOption,
    p0: Optional[str] = P0Option,
    out: OutputFormat = OutOption,
) -> None:
    """Expand p_1·P_{λ,μ} and p_{-1}·P_{λ,μ} in the Jack–Laurent basis."""
    execute(out, command=Command.PIERI, lam=lam, mu=mu, numeric=numeric, k=k, p0=p0)


@cli.command("jt-limit")
def jt_limit_command(
    lam: str = LamOption,
    mu: str = MuOption,
    out: OutputFormat = typer.Option(OutputFormat.TEXT, "--out", help="json or text"),
) -> None:
    """Print P_{λ,μ} at k = −1."""
    execute(out, command=Command.JT_LIMIT, lam=lam, mu=mu)


@cli.command("apply-op")
def apply_op_command(
    op: OperatorKind = typer.Option(..., "--op", help="Operator to apply"),
    expr: str = typer.Option(..., "--expr", help="Function in p_i, p0, k and w"),
    l: str = typer.Option("1/3", "--l", help="Coupling of the BC operator"),
    numeric: bool = NumericOption,
    k: Optional[str] = KOption,
    p0: Optional[str] = P0Option,
    out: OutputFormat = OutOption,
) -> None:
    """Apply an operator to a function given as text."""
    execute(out, command=Command.APPLY_OP, op=op, expr=expr, l=l, numeric=numeric, k=k, p0=p0)


@cli.command("verify")
def verify_command(
    suite: Suite = typer.Option(Suite.ALL, "--suite", help="Suite to run"),
    degree: int = typer.Option(4, "--degree", help="Total degree bound"),
    max_size: int = typer.Option(3, "--max-size", help="Bound on |λ| and |μ|"),
    seed: int = typer.Option(0, "--seed", help="Seed of the property checks"),
    out: OutputFormat = OutOption,
) -> None:
    """Run verification checks; exit code 1 when any fails."""
    execute(out, command=Command.VERIFY, suite=suite, degree=degree, max_size=max_size, seed=seed)


@cli.command("specialize")
def specialize_command(
    lam: str = LamOption,
    mu: str = MuOption,
    N: int = typer.Option(3, "--N", help="Number of variables"),
    a: Optional[int] = typer.Option(None, "--a", help="Shift; defaults to μ_1"),
    m: Optional[int] = typer.Option(None, "--m", help="Even dimension of the super specialization"),
    n: Optional[int] = typer.Option(None, "--n", help="Odd dimension of the super specialization"),
    numeric: bool = NumericOption,
    k: Optional[str] = KOption,
    p0: Optional[str] = P0Option,
    out: OutputFormat = OutOption,
) -> None:
    """Specialize P_{λ,μ} to N variables and compare with the Jack polynomial.

    With --m and --n, apply the super specialization φ_{m,n} to the k = -1 limit instead.
    """
    execute(
        out, command=Command.SPECIALIZE, lam=lam, mu=mu, N=N, a=a, m=m, n=n, numeric=numeric, k=k, p0=p0
    )


@cli.command("catalog")
def catalog_command(
    catalog: str = typer.Option(..., "--catalog", help="Database URL of the results catalog"),
    skip: int = typer.Option(0, "--skip", help="Number of records to skip"),
    limit: int = typer.Option(100, "--limit", help="Maximum number of records to return"),
    delete: Optional[int] = typer.Option(None, "--delete", help="Delete the entry with this ID"),
    out: OutputFormat = OutOption,
) -> None:
    """List or prune stored Jack–Laurent functions."""
    execute(out, command=Command.CATALOG, catalog=catalog, skip=skip, limit=limit, delete=delete)


if __name__ == "__main__":
    cli()
