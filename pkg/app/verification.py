"""Verification suites: batches of checks run by ``main.py verify``."""
import logging
import random
from typing import Callable

from .cms_ops import (
    DUALITY_KINDS,
    OperatorKind,
    OperatorSpec,
    apply,
    check_duality,
    check_stable_relation,
    momentum,
)
from .errors import LaurentError, PoleError
from .exact_arith import (
    PARAM_FIELD,
    PARAM_RING,
    SYMBOLIC,
    ArithOp,
    eval_at,
    ratfunc_arith,
    to_rational,
)
from .finite_n import (
    berezinian,
    check_commuting_diagram,
    check_power_sum_identities,
    check_specialization_jack,
    check_stability,
    phi_mn,
)
from .jack_laurent import (
    eigenvalue,
    eigenvalue_extended,
    eigenvalue_s,
    euler_element_11,
    expand_in_jack_basis,
    jack_laurent,
    jacobi_trudy_det,
    jt_limit,
)
from .mbasis import m_to_p, p_to_m
from .partitions import dominance_leq, pairs_up_to
from .pieri import (
    classical_pieri_coefficient,
    pieri_expand,
    pieri_p_minus_one,
    v_diagrammatic,
)
from .psym import PMonomial, SymFunc, parse_symfunc, star, theta
from .reports import CheckReport
from .schemas.schemas import Suite

logger = logging.getLogger(__name__)

PROPERTY_CASES = 200


def dualities_suite(degree: int, max_size: int) -> list[CheckReport]:
    reports = [check_duality(kind, degree) for kind in DUALITY_KINDS]
    reports.append(check_stable_relation(degree))
    star_report = CheckReport(check="star-duality", params={"max_size": max_size})
    for pair in pairs_up_to(max_size):
        star_report.record(
            f"P{pair}",
            star(jack_laurent(pair.lam, pair.mu).p_form) == jack_laurent(pair.mu, pair.lam).p_form,
        )
    reports.append(star_report)
    return reports


def eigen_suite(max_size: int) -> list[CheckReport]:
    laurent = OperatorSpec.create(OperatorKind.LAURENT, SYMBOLIC)
    extended = OperatorSpec.create(OperatorKind.LAURENT_EXT, SYMBOLIC)
    examples = CheckReport(check="closed-form-examples")
    examples.record(
        "P(1|1)",
        jack_laurent((1,), (1,)).p_form
        == parse_symfunc("p_1*p_-1 - p0/(1+k-k*p0)", SYMBOLIC),
    )
    examples.record(
        "P(1,1|1)",
        jack_laurent((1, 1), (1,)).p_form
        == parse_symfunc(
            "1/2*(p_1^2 - p_2)*p_-1 - 2*(p0-1)/(2+4*k-2*k*p0)*p_1", SYMBOLIC
        ),
    )
    equation = CheckReport(check="eigen-equation", params={"max_size": max_size})
    higher = CheckReport(check="higher-eigenvalues", params={"max_size": max_size + 1})
    for pair in pairs_up_to(max_size):
        function = jack_laurent(pair.lam, pair.mu)
        equation.record(
            f"L P{pair}", apply(laurent, function.p_form) == function.p_form.scale(function.eigenvalue)
        )
        equation.record(
            f"momentum P{pair}",
            momentum("trig", function.p_form) == function.p_form.scale(pair.weight),
        )
    for pair in pairs_up_to(max_size + 1):
        value = eigenvalue(pair.lam, pair.mu)
        higher.record(f"E1 {pair}", eigenvalue_s(pair.lam, pair.mu, 1) == SYMBOLIC(pair.weight))
        higher.record(f"E2 {pair}", eigenvalue_s(pair.lam, pair.mu, 2) == value / 2)
    ext_size = min(max_size, 2)
    ext = CheckReport(check="extended-eigen-equation", params={"max_size": ext_size})
    for pair in pairs_up_to(ext_size):
        p_form = jack_laurent(pair.lam, pair.mu).p_form
        for l in range(3):
            shifted = p_form * SymFunc.w(SYMBOLIC, l) if l else p_form
            ext.record(
                f"w^{l} P{pair}",
                apply(extended, shifted)
                == shifted.scale(eigenvalue_extended(pair.lam, pair.mu, l)),
            )
    return [examples, equation, higher, ext]


def _record_guarded(report: CheckReport, label: str, check: Callable[[], bool]) -> None:
    """Record check(); a LaurentError it raises counts as a failed case."""
    try:
        holds = check()
    except LaurentError as exc:
        logger.warning(f"{report.check}: {label} raised {exc.error_type}: {exc}")
        report.record(f"{label} ({exc.error_type}: {exc})", False)
        return
    report.record(label, holds)


def pieri_suite(max_size: int) -> list[CheckReport]:
    oracle = CheckReport(check="pieri-expansion", params={"max_size": max_size})
    lowered = CheckReport(check="pieri-p-minus-one", params={"max_size": max_size})
    figure = CheckReport(check="pieri-diagrammatic", params={"max_size": max_size})
    classical = CheckReport(check="pieri-classical", params={"max_size": max_size})
    rectangle = CheckReport(check="pieri-rectangle", params={"max_size": max_size})
    p1 = SymFunc.generator(SYMBOLIC, 1)
    p_minus_1 = SymFunc.generator(SYMBOLIC, -1)
    for pair in pairs_up_to(max_size):
        try:
            function = jack_laurent(pair.lam, pair.mu)
            terms = pieri_expand(pair.lam, pair.mu)
        except LaurentError as exc:
            logger.warning(f"Pieri terms of P{pair} failed: {exc}")
            oracle.record(f"p_1 P{pair} ({exc.error_type}: {exc})", False)
            continue
        predicted = {term.target: term.coeff for term in terms}
        _record_guarded(
            oracle, f"p_1 P{pair}", lambda: expand_in_jack_basis(p1 * function.p_form) == predicted
        )
        _record_guarded(
            lowered,
            f"p_-1 P{pair}",
            lambda: expand_in_jack_basis(p_minus_1 * function.p_form)
            == {term.target: term.coeff for term in pieri_p_minus_one(pair.lam, pair.mu)},
        )
        for term in terms:
            _record_guarded(
                figure,
                f"{term.target} from {pair}",
                lambda: v_diagrammatic(term.target, pair.lam, pair.mu) == term.coeff,
            )
            if not pair.mu:
                _record_guarded(
                    classical,
                    f"{term.target} from {pair}",
                    lambda: classical_pieri_coefficient(term.target.lam, pair.lam) == term.coeff,
                )
            if term.target.lam == pair.lam:
                for extra in (1, 2):
                    enlarged = (len(pair.lam) + extra, len(pair.mu) + extra)
                    _record_guarded(
                        rectangle,
                        f"{term.target} from {pair} in {enlarged}",
                        lambda: v_diagrammatic(term.target, pair.lam, pair.mu, rectangle=enlarged)
                        == term.coeff,
                    )
    return [oracle, lowered, figure, classical, rectangle]


def specialization_suite(degree: int) -> list[CheckReport]:
    reports = []
    for pair in pairs_up_to(2):
        first = pair.mu[0] if pair.mu else 0
        for nvars in (3, 4, 5):
            if nvars <= len(pair.lam) + len(pair.mu):
                continue
            for a in (first, first + 1):
                reports.append(check_specialization_jack(pair.lam, pair.mu, nvars, a))
    for nvars in (2, 3, 4):
        reports.append(check_power_sum_identities(nvars, 6))
    reports.append(check_stability(2, 3, min(degree, 4)))
    return reports


def diagrams_suite(degree: int) -> list[CheckReport]:
    reports = []
    for kind in OperatorKind:
        sizes = (2, 3) if kind is OperatorKind.LAURENT_EXT else (2, 3, 4)
        for nvars in sizes:
            bound = min(degree, 3) if kind is OperatorKind.LAURENT_EXT else degree
            reports.append(check_commuting_diagram(kind, nvars, bound))
    return reports


# φ_{m,n}(p_1 p_{-1} − 1) in the variables (x_1..x_m, y_1..y_n)
SUPER_LIMIT_IMAGES = {
    (1, 1): {(0, 0): 1, (1, -1): -1, (-1, 1): -1},
    (2, 1): {
        (0, 0, 0): 2,
        (1, -1, 0): 1,
        (-1, 1, 0): 1,
        (1, 0, -1): -1,
        (0, 1, -1): -1,
        (-1, 0, 1): -1,
        (0, -1, 1): -1,
    },
}


def jt_suite(max_size: int) -> list[CheckReport]:
    determinant = CheckReport(check="jacobi-trudy", params={"max_size": max_size})
    for pair in pairs_up_to(max_size):
        _record_guarded(
            determinant,
            f"P{pair}(-1)",
            lambda: jt_limit(pair.lam, pair.mu) == jacobi_trudy_det(pair.lam, pair.mu),
        )
    examples = CheckReport(check="jt-examples")
    limit = jt_limit((1,), (1,))
    examples.record("P(1|1)(-1)", limit == parse_symfunc("p_1*p_-1 - 1", SYMBOLIC))
    examples.record(
        "Euler element", euler_element_11() == parse_symfunc("p_1*p_-1 - 1 + w", SYMBOLIC)
    )
    direct = jack_laurent((1,), (1,)).p_form
    for (m, n), expected in SUPER_LIMIT_IMAGES.items():
        image = phi_mn(limit, m, n, -1)
        examples.record(f"phi_{m},{n} of the limit", image.terms == expected)
        examples.record(
            f"phi_{m},{n} of the Euler element",
            phi_mn(euler_element_11(), m, n, -1) == image + berezinian(m, n),
        )
        if m != n:
            _record_guarded(
                examples,
                f"phi_{m},{n} by direct substitution",
                lambda: phi_mn(direct, m, n, -1) == image,
            )
    return [determinant, examples]


def _random_ratfunc(rng: random.Random, nonzero: bool = False):
    while True:
        numer = PARAM_RING.from_dict(
            {(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-3, 3) for _ in range(3)}
        )
        denom = PARAM_RING.from_dict(
            {(rng.randint(0, 1), rng.randint(0, 1)): rng.randint(1, 3) for _ in range(2)}
        )
        if denom and (numer or not nonzero):
            return PARAM_FIELD(numer) / PARAM_FIELD(denom)


def _random_symfunc(rng: random.Random) -> SymFunc:
    terms = {}
    for _ in range(rng.randint(1, 3)):
        exps = {rng.choice((-2, -1, 1, 2)): rng.randint(1, 2) for _ in range(rng.randint(0, 2))}
        terms[PMonomial.from_exponents(exps, rng.randint(0, 1))] = _random_ratfunc(rng)
    return SymFunc(SYMBOLIC, terms)


def properties_suite(seed: int, cases: int = PROPERTY_CASES) -> list[CheckReport]:
    rng = random.Random(seed)
    field_laws = CheckReport(check="field-axioms", params={"seed": seed})
    for case in range(cases):
        a, b, c = _random_ratfunc(rng), _random_ratfunc(rng), _random_ratfunc(rng, nonzero=True)
        field_laws.record(f"associativity #{case}", (a + b) + c == a + (b + c))
        field_laws.record(f"distributivity #{case}", a * (b + c) == a * b + a * c)
        field_laws.record(
            f"division #{case}",
            ratfunc_arith(ratfunc_arith(a, c, ArithOp.MUL), c, ArithOp.DIV) == a,
        )
        point = (to_rational(rng.randint(-5, 5)), to_rational(rng.randint(-5, 5)))
        try:
            holds = eval_at(a * c, *point) == eval_at(a, *point) * eval_at(c, *point)
        except PoleError:
            holds = True
        field_laws.record(f"evaluation #{case}", holds)

    algebra = CheckReport(check="psym-laws", params={"seed": seed})
    for case in range(cases):
        f, g = _random_symfunc(rng), _random_symfunc(rng)
        algebra.record(f"commutativity #{case}", f * g == g * f)
        algebra.record(f"star homomorphism #{case}", star(f * g) == star(f) * star(g))
        algebra.record(f"star involution #{case}", star(star(f)) == f)
        algebra.record(f"theta homomorphism #{case}", theta(f * g) == theta(f) * theta(g))
        algebra.record(f"theta involution #{case}", theta(theta(f)) == f)

    pairs = pairs_up_to(3)
    round_trip = CheckReport(check="m-basis-round-trip", params={"seed": seed})
    order = CheckReport(check="dominance-axioms", params={"seed": seed})
    for case in range(cases):
        pair = rng.choice(pairs)
        round_trip.record(
            f"{pair}", p_to_m(m_to_p(pair.lam, pair.mu)) == {pair: SYMBOLIC.one}
        )
        a, b, c = rng.choice(pairs), rng.choice(pairs), rng.choice(pairs)
        order.record(f"reflexive {a}", dominance_leq(a, a))
        order.record(
            f"antisymmetric {a} {b}", not (dominance_leq(a, b) and dominance_leq(b, a)) or a == b
        )
        order.record(
            f"transitive {a} {b} {c}",
            not (dominance_leq(a, b) and dominance_leq(b, c)) or dominance_leq(a, c),
        )
    return [field_laws, algebra, round_trip, order]


def run_suite(suite: Suite, degree: int, max_size: int, seed: int) -> list[CheckReport]:
    """Run one suite, or all of them, in a fixed order."""
    runners: dict[Suite, Callable[[], list[CheckReport]]] = {
        Suite.DUALITIES: lambda: dualities_suite(degree, max_size),
        Suite.EIGEN: lambda: eigen_suite(max_size),
        Suite.PIERI: lambda: pieri_suite(max_size),
        Suite.SPECIALIZATION: lambda: specialization_suite(degree),
        Suite.DIAGRAMS: lambda: diagrams_suite(degree),
        Suite.JT: lambda: jt_suite(max_size),
        Suite.PROPERTIES: lambda: properties_suite(seed),
    }
    selected = list(runners) if suite is Suite.ALL else [suite]
    reports = []
    for name in selected:
        logger.info(f"Running {name.value} suite")
        reports.extend(runners[name]())
    return reports
