import json
import logging

from sqlalchemy.exc import SQLAlchemyError

from . import crud
from .cms_ops import OperatorSpec, apply
from .database import get_db
from .errors import LaurentError, PoleError, PreconditionError
from .exact_arith import format_coefficient
from .finite_n import FiniteLaurentPoly, check_specialization_jack, phi_mn, phi_n
from .jack_laurent import JackLaurent, jack_laurent, jt_limit
from .pieri import PieriTerm, pieri_expand, pieri_p_minus_one
from .psym import parse_symfunc
from .reports import CheckReport
from .schemas import schemas
from .schemas.response import EXIT_CHECK_FAILED, JobResponse
from .verification import run_suite

logger = logging.getLogger(__name__)


def _parts_text(parts: tuple[int, ...]) -> str:
    return ",".join(map(str, parts))


def _jack_schema(function: JackLaurent, mode: str) -> schemas.JackLaurentSchema:
    return schemas.JackLaurentSchema(
        index=schemas.PairSchema.from_pair(function.index),
        mode=mode,
        eigenvalue=format_coefficient(function.eigenvalue),
        m_coeffs=schemas.coefficient_list(function.m_coeffs),
        p_form=schemas.SymFuncSchema.from_symfunc(function.p_form),
    )


def _term_schemas(terms: list[PieriTerm]) -> list[schemas.PieriTermSchema]:
    return [
        schemas.PieriTermSchema(
            target=schemas.PairSchema.from_pair(term.target),
            kind=term.kind.value,
            coeff=format_coefficient(term.coeff),
        )
        for term in terms
    ]


def compute_jack_laurent(config: schemas.JobConfig) -> JobResponse:
    """Computes P_{λ,μ}, reading it from or storing it into the catalog when one is given.

    Args:
        config (schemas.JobConfig): Validated options; uses lam, mu, the coefficient mode and catalog.

    Returns:
        JobResponse[schemas.JackLaurentSchema]: The m-coefficients, p-form and eigenvalue.
    """
    field = config.coefficient_field()
    mode = field.describe()
    lam, mu = _parts_text(config.lam), _parts_text(config.mu)
    if config.catalog:
        with get_db(config.catalog) as db:
            record = crud.get_jack_function(db, lam=lam, mu=mu, mode=mode)
            if record:
                logger.info(f"Catalog hit for P({lam}|{mu}) in {mode} mode")
                return JobResponse.success_response(
                    message="Jack–Laurent function read from the catalog",
                    data=schemas.JackLaurentSchema.model_validate_json(record.payload),
                )
    function = jack_laurent(config.lam, config.mu, field)
    payload = _jack_schema(function, mode)
    if config.catalog:
        with get_db(config.catalog) as db:
            crud.store_jack_function(
                db,
                schemas.JackFunctionCreate(
                    lam=lam,
                    mu=mu,
                    mode=mode,
                    eigenvalue=payload.eigenvalue,
                    payload=payload.model_dump_json(),
                ),
            )
            logger.info(f"Stored P({lam}|{mu}) in the catalog")
    return JobResponse.success_response(
        message="Jack–Laurent function computed successfully", data=payload
    )


def compute_pieri(config: schemas.JobConfig) -> JobResponse:
    """Computes the expansions of p_1·P_{λ,μ} and p_{-1}·P_{λ,μ}.

    Args:
        config (schemas.JobConfig): Validated options; uses lam, mu and the coefficient mode.

    Returns:
        JobResponse[dict]: Terms of both expansions under the keys "p_1" and "p_-1".
    """
    field = config.coefficient_field()
    data = {
        "p_1": _term_schemas(pieri_expand(config.lam, config.mu, field)),
        "p_-1": _term_schemas(pieri_p_minus_one(config.lam, config.mu, field)),
    }
    return JobResponse.success_response(message="Pieri coefficients computed successfully", data=data)


def compute_jt_limit(config: schemas.JobConfig) -> JobResponse:
    """Computes P_{λ,μ} at k = −1.

    Args:
        config (schemas.JobConfig): Validated options; uses lam and mu.

    Returns:
        JobResponse[schemas.SymFuncSchema]: The limit, free of p0.
    """
    if config.numeric:
        raise PreconditionError("jt-limit is computed over Q(k, p0); drop --numeric")
    limit = jt_limit(config.lam, config.mu)
    return JobResponse.success_response(
        message="k = -1 limit computed successfully",
        data=schemas.SymFuncSchema.from_symfunc(limit),
    )


def compute_apply_op(config: schemas.JobConfig) -> JobResponse:
    """Applies one of the operators to a function given as text.

    Args:
        config (schemas.JobConfig): Validated options; uses op, expr, l and the coefficient mode.

    Returns:
        JobResponse[schemas.SymFuncSchema]: The image of the input.
    """
    field = config.coefficient_field()
    f = parse_symfunc(config.expr, field)
    op = OperatorSpec.create(config.op, field, l=config.l)
    return JobResponse.success_response(
        message=f"{config.op.value} operator applied successfully",
        data=schemas.SymFuncSchema.from_symfunc(apply(op, f)),
    )


def run_verification(config: schemas.JobConfig) -> JobResponse:
    """Runs a verification suite.

    Args:
        config (schemas.JobConfig): Validated options; uses suite, degree, max_size and seed.

    Returns:
        JobResponse[list[schemas.CheckReportSchema]]: One report per check, exit code 1 if any failed.
    """
    reports = run_suite(config.suite, config.degree, config.max_size, config.seed)
    data = [schemas.CheckReportSchema.from_report(report) for report in reports]
    failed = [report.check for report in reports if not report.passed]
    if failed:
        return JobResponse.failure_response(
            message=f"{len(failed)} of {len(reports)} checks failed: {', '.join(failed)}",
            data=data,
        )
    return JobResponse.success_response(
        message=f"All {len(reports)} checks passed", data=data
    )


def _finite_poly_schema(image: FiniteLaurentPoly) -> schemas.FinitePolySchema:
    return schemas.FinitePolySchema(
        nvars=image.nvars,
        terms=[(list(exps), format_coefficient(c)) for exps, c in sorted(image.terms.items(), reverse=True)],
    )


def run_super_specialization(config: schemas.JobConfig) -> JobResponse:
    """Applies φ_{m,n} to P_{λ,μ}(−1), comparing with direct substitution when m ≠ n.

    Args:
        config (schemas.JobConfig): Validated options; uses lam, mu, m and n.

    Returns:
        JobResponse[dict]: The report and the image in x_1..x_m, y_1..y_n.
    """
    if config.numeric:
        raise PreconditionError("the super specialization starts from the k = -1 limit; drop --numeric")
    m, n = config.m, config.n
    image = phi_mn(jt_limit(config.lam, config.mu), m, n, -1)
    report = CheckReport(
        check="super-specialization",
        params={"lam": list(config.lam), "mu": list(config.mu), "m": m, "n": n},
    )
    if m != n:
        try:
            direct = phi_mn(jack_laurent(config.lam, config.mu).p_form, m, n, -1)
        except PoleError as exc:
            logger.info(f"Direct substitution at k = -1, p0 = {m - n} has a pole: {exc}")
        else:
            report.record("direct substitution equals the limit", direct == image)
    data = {
        "report": schemas.CheckReportSchema.from_report(report),
        "image": _finite_poly_schema(image),
    }
    if not report.passed:
        return JobResponse.failure_response(
            message=f"Super specialization failed at {report.counterexample}", data=data
        )
    return JobResponse.success_response(message=f"phi_{m},{n} computed successfully", data=data)


def run_specialization(config: schemas.JobConfig) -> JobResponse:
    """Checks the specialization of P_{λ,μ} to a Jack polynomial in N variables.

    With --m and --n the super specialization φ_{m,n} is taken instead.

    Args:
        config (schemas.JobConfig): Validated options; uses lam, mu, N, a, m, n and the coefficient mode.

    Returns:
        JobResponse[dict]: The report and the image φ_N(P_{λ,μ}).
    """
    if config.m is not None:
        return run_super_specialization(config)
    field = config.coefficient_field()
    a = config.a if config.a is not None else (config.mu[0] if config.mu else 0)
    report = check_specialization_jack(config.lam, config.mu, config.N, a, field)
    image = phi_n(jack_laurent(config.lam, config.mu, field).p_form, config.N)
    data = {
        "report": schemas.CheckReportSchema.from_report(report),
        "image": _finite_poly_schema(image),
    }
    if not report.passed:
        return JobResponse.failure_response(
            message=f"Specialization failed at {report.counterexample}", data=data
        )
    return JobResponse.success_response(message="Specialization verified", data=data)


def browse_catalog(config: schemas.JobConfig) -> JobResponse:
    """Lists the results catalog, or deletes one entry from it.

    Args:
        config (schemas.JobConfig): Validated options; uses catalog, skip, limit and delete.

    Returns:
        JobResponse[list[schemas.JackFunctionEntry]]: The listed or deleted entries.
    """
    with get_db(config.catalog) as db:
        if config.delete is not None:
            record = crud.delete_jack_function(db, config.delete)
            if not record:
                return JobResponse.not_found_response(f"Catalog entry {config.delete}")
            return JobResponse.success_response(
                message="Catalog entry deleted successfully",
                data=[schemas.JackFunctionEntry.model_validate(record)],
            )
        records = crud.get_jack_functions(db, skip=config.skip, limit=config.limit)
        return JobResponse.success_response(
            message="Catalog entries retrieved successfully",
            data=[schemas.JackFunctionEntry.model_validate(record) for record in records],
        )


HANDLERS = {
    schemas.Command.JACK_LAURENT: compute_jack_laurent,
    schemas.Command.PIERI: compute_pieri,
    schemas.Command.JT_LIMIT: compute_jt_limit,
    schemas.Command.APPLY_OP: compute_apply_op,
    schemas.Command.VERIFY: run_verification,
    schemas.Command.SPECIALIZE: run_specialization,
    schemas.Command.CATALOG: browse_catalog,
}


def run(config: schemas.JobConfig) -> JobResponse:
    """Dispatches a validated job and turns library errors into error envelopes.

    Precondition violations exit with 2; the triangularity, residual p0 and
    singular transition sentinels exit with 1.
    """
    logger.debug(f"Running {config.command.value} with {config.model_dump(exclude_defaults=True)}")
    try:
        return HANDLERS[config.command](config)
    except LaurentError as e:
        logger.error(f"{config.command.value} failed: {e}")
        return JobResponse.error_response(
            message=f"Failed to run {config.command.value}",
            errors=[{"message": str(e), "type": e.error_type}],
            exit_code=e.exit_code,
        )
    except SQLAlchemyError as e:
        logger.error(f"Catalog error: {e}")
        return JobResponse.error_response(
            message="Failed to access the results catalog",
            errors=[{"field": "catalog", "message": str(e), "type": "catalog_error"}],
            exit_code=EXIT_CHECK_FAILED,
        )


def render_text(response: JobResponse) -> str:
    """Plain-text rendering used by ``--out text``."""
    data = response.data
    if isinstance(data, schemas.SymFuncSchema):
        return data.text
    if isinstance(data, schemas.JackLaurentSchema):
        return data.p_form.text
    if not response.success and data is None:
        details = "; ".join(error.message for error in response.errors or [])
        return f"error: {response.message}: {details}"
    if isinstance(data, list) and data and isinstance(data[0], schemas.CheckReportSchema):
        lines = [
            f"{report.status:4} {report.check} {report.params} cases={report.cases}"
            + (f" counterexample={report.counterexample}" if report.counterexample else "")
            for report in data
        ]
        return "\n".join(lines + [response.message])
    return json.dumps(response.model_dump(mode="json")["data"], indent=2)

