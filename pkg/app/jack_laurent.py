"""Jack–Laurent symmetric functions P_{λ,μ}, their eigenvalues and the k = −1 limit."""
import logging
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Any, Callable, Iterable, Mapping, Sequence

from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring

from .cms_ops import OperatorKind, OperatorSpec, apply
from .errors import (
    PoleAtMinusOneError,
    PoleError,
    ResidualP0DependenceError,
    ResonanceError,
    TriangularityError,
)
from .exact_arith import (
    P0,
    PARAM_FIELD,
    SYMBOLIC,
    Coefficient,
    CoefficientField,
    format_coefficient,
    is_p0_free,
    substitute,
)
from .mbasis import m_to_p, p_to_m
from .partitions import BiPartition, boxes, dominance_leq, ladder, make_partition
from .psym import PMonomial, SymFunc, star

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class JackLaurent:
    index: BiPartition
    m_coeffs: Mapping[BiPartition, Coefficient]
    p_form: SymFunc
    eigenvalue: Coefficient


def eigenvalue(lam: Iterable[int], mu: Iterable[int], field: CoefficientField = SYMBOLIC) -> Coefficient:
    """E_{λ,μ} = Σλ_i² + Σμ_j² + kΣ(2i−1)λ_i + kΣ(2j−1)μ_j − k·p0(|λ| + |μ|)."""
    lam, mu = make_partition(lam), make_partition(mu)
    k, p0 = field.k, field.p0
    squares = sum(x * x for x in lam) + sum(x * x for x in mu)
    weighted = sum((2 * i - 1) * x for i, x in enumerate(lam, 1)) + sum(
        (2 * j - 1) * x for j, x in enumerate(mu, 1)
    )
    return field.zero + squares + k * weighted - k * p0 * (sum(lam) + sum(mu))


def eigenvalue_s(
    lam: Iterable[int], mu: Iterable[int], s: int, field: CoefficientField = SYMBOLIC
) -> Coefficient:
    """E^(s): Σ over boxes of [(j−½) + k(i−½) − k·p0/2]^(s−1), the μ part signed by (−1)^s."""
    if s < 1:
        raise ValueError("s must be at least 1")
    lam, mu = make_partition(lam), make_partition(mu)
    k, p0 = field.k, field.p0
    half = field.one / 2

    def box_sum(partition):
        total = field.zero
        for i, j in boxes(partition):
            total += ((j - half) + k * (i - half) - k * p0 * half) ** (s - 1)
        return total

    return box_sum(lam) + (-1) ** s * box_sum(mu)


def eigenvalue_extended(
    lam: Iterable[int], mu: Iterable[int], l: int, field: CoefficientField = SYMBOLIC
) -> Coefficient:
    """Eigenvalue of the extended Laurent operator on w^l·P_{λ,μ}."""
    lam, mu = make_partition(lam), make_partition(mu)
    return eigenvalue(lam, mu, field) + field.p0 * (l * l) + 2 * l * (sum(lam) - sum(mu))


def back_substitute(
    rungs: Sequence[Any],
    columns: Mapping[Any, Mapping[Any, Coefficient]],
    zero: Coefficient,
    one: Coefficient,
    describe: Callable[[Any], str] = str,
) -> dict[Any, Coefficient]:
    """Solve for the eigenvector of an upper-triangular operator.

    ``columns[rho][nu]`` is the coefficient of basis element nu in the image of
    rho; rungs[0] is the top element, later rungs never lie above earlier ones.
    """
    top = rungs[0]
    top_value = columns[top].get(top, zero)
    coeffs = {top: one}
    for position, nu in enumerate(rungs[1:], start=1):
        gap = top_value - columns[nu].get(nu, zero)
        if not gap:
            raise ResonanceError(
                f"eigenvalues of {describe(top)} and {describe(nu)} coincide"
            )
        total = zero
        for rho in rungs[:position]:
            entry, u = columns[rho].get(nu), coeffs.get(rho)
            if entry and u:
                total += entry * u
        if total:
            coeffs[nu] = total / gap
    return coeffs


def solve_triangular(
    top: BiPartition, op: OperatorSpec
) -> tuple[dict[BiPartition, Coefficient], Coefficient]:
    """Eigenfunction of ``op`` with leading term m_top, in the m-basis.

    Raises:
        TriangularityError: if op sends some m_ρ outside the ideal below ρ.
        ResonanceError: if the eigenvalue of top is repeated on its ladder.
    """
    field = op.field
    rungs = ladder(top)
    logger.debug(f"Solving for {op.kind.value} eigenfunction {top} on {len(rungs)} rungs")
    columns = {}
    for rho in rungs:
        image = p_to_m(apply(op, m_to_p(rho.lam, rho.mu, field)))
        for nu in image:
            if not dominance_leq(nu, rho):
                raise TriangularityError(f"{op.kind.value} sends m{rho} onto m{nu}")
        columns[rho] = image
    coeffs = back_substitute(rungs, columns, field.zero, field.one)
    return coeffs, columns[top].get(top, field.zero)


def _assemble(coeffs: Mapping[BiPartition, Coefficient], field: CoefficientField) -> SymFunc:
    total = SymFunc.zero(field)
    for nu, u in coeffs.items():
        total = total + m_to_p(nu.lam, nu.mu, field).scale(u)
    return total


@lru_cache(maxsize=512)
def _jack_laurent_cached(index: BiPartition, field: CoefficientField) -> JackLaurent:
    op = OperatorSpec.create(OperatorKind.LAURENT, field)
    coeffs, diagonal = solve_triangular(index, op)
    expected = eigenvalue(index.lam, index.mu, field)
    if diagonal != expected:
        raise TriangularityError(
            f"diagonal entry {format_coefficient(diagonal)} of m{index} "
            f"differs from E = {format_coefficient(expected)}"
        )
    return JackLaurent(index, MappingProxyType(coeffs), _assemble(coeffs, field), expected)


def jack_laurent(
    lam: Iterable[int], mu: Iterable[int] = (), field: CoefficientField | None = None
) -> JackLaurent:
    """P_{λ,μ}: the Laurent-operator eigenfunction m_{λ,μ} + lower terms."""
    index = BiPartition(make_partition(lam), make_partition(mu))
    return _jack_laurent_cached(index, field or SYMBOLIC)


@lru_cache(maxsize=256)
def _classical_jack_cached(lam: tuple[int, ...], field: CoefficientField) -> SymFunc:
    op = OperatorSpec.create(OperatorKind.TRIG_STABLE, field)
    coeffs, _ = solve_triangular(BiPartition(lam, ()), op)
    return _assemble(coeffs, field)


def classical_jack(lam: Iterable[int], field: CoefficientField | None = None) -> SymFunc:
    """Jack function P_λ (parameter α = −1/k) as the stable-operator eigenfunction on Λ⁺."""
    return _classical_jack_cached(make_partition(lam), field or SYMBOLIC)


def expand_in_jack_basis(f: SymFunc) -> dict[BiPartition, Coefficient]:
    """Coefficients of f ∈ Λ± in the basis P_{λ,μ}."""
    field = f.field
    remaining = p_to_m(f)
    expansion = {}
    while remaining:
        nu = max(remaining, key=BiPartition.sort_key)
        c = remaining[nu]
        expansion[nu] = c
        for rho, u in jack_laurent(nu.lam, nu.mu, field).m_coeffs.items():
            value = remaining.get(rho, field.zero) - c * u
            if value:
                remaining[rho] = value
            else:
                remaining.pop(rho, None)
    return expansion


@lru_cache(maxsize=None)
def complete_h(i: int, field: CoefficientField = SYMBOLIC) -> SymFunc:
    """Complete symmetric function h_i via n·h_n = Σ p_a h_{n−a}; h_i = 0 for i < 0."""
    if i < 0:
        return SymFunc.zero(field)
    if i == 0:
        return SymFunc.one(field)
    total = SymFunc.zero(field)
    for a in range(1, i + 1):
        total = total + SymFunc.generator(field, a) * complete_h(i - a, field)
    return total.scale(field.one / i)


def complete_h_star(i: int, field: CoefficientField = SYMBOLIC) -> SymFunc:
    return star(complete_h(i, field))


def jacobi_trudy_matrix(
    lam: Iterable[int], mu: Iterable[int], field: CoefficientField = SYMBOLIC
) -> list[list[SymFunc]]:
    """(r+s)×(r+s) matrix with rows h*_{μ_{s+1−t}+t−c} (t ≤ s) then h_{λ_q−q−s+c}."""
    lam, mu = make_partition(lam), make_partition(mu)
    r, s = len(lam), len(mu)
    size = r + s
    rows = [
        [complete_h_star(mu[s - t] + t - c, field) for c in range(1, size + 1)]
        for t in range(1, s + 1)
    ]
    rows += [
        [complete_h(lam[q - 1] - q - s + c, field) for c in range(1, size + 1)]
        for q in range(1, r + 1)
    ]
    return rows


def _determinant(matrix: list[list[SymFunc]], field: CoefficientField) -> SymFunc:
    """Fraction-free determinant over the polynomial ring in the occurring p_i."""
    size = len(matrix)
    if not size:
        return SymFunc.one(field)
    indices = sorted(
        {i for row in matrix for entry in row for m in entry.terms for i, _ in m.exps} | {1}
    )
    names = [f"p{i}" if i > 0 else f"pm{-i}" for i in indices] + ["w"]
    poly_ring, *_ = ring(names, field.domain, grlex)
    slot = {index: n for n, index in enumerate(indices)}

    def to_poly(entry: SymFunc):
        terms = {}
        for monomial, coeff in entry.terms.items():
            exponents = [0] * (len(indices) + 1)
            for i, e in monomial.exps:
                exponents[slot[i]] = e
            exponents[-1] = monomial.wexp
            terms[tuple(exponents)] = coeff
        return poly_ring.from_dict(terms) if terms else poly_ring.zero

    det = DomainMatrix(
        [[to_poly(entry) for entry in row] for row in matrix], (size, size), poly_ring.to_domain()
    ).det()
    terms = {}
    for exponents, coeff in det.terms():
        monomial = PMonomial.from_exponents(
            [(indices[n], e) for n, e in enumerate(exponents[:-1]) if e], exponents[-1]
        )
        terms[monomial] = coeff
    return SymFunc(field, terms)


def jacobi_trudy_det(
    lam: Iterable[int], mu: Iterable[int], field: CoefficientField = SYMBOLIC
) -> SymFunc:
    """Composite Schur function of (λ, μ) as a determinant of complete functions."""
    return _determinant(jacobi_trudy_matrix(lam, mu, field), field)


def jt_limit(lam: Iterable[int], mu: Iterable[int] = ()) -> SymFunc:
    """P_{λ,μ} at k = −1; the result no longer depends on p0.

    Raises:
        PoleAtMinusOneError: if a coefficient has a pole at k = −1.
        ResidualP0DependenceError: if p0 survives the substitution.
    """
    function = jack_laurent(lam, mu, SYMBOLIC)
    minus_one = PARAM_FIELD(-1)
    terms = {}
    for monomial, coeff in function.p_form.terms.items():
        try:
            value = substitute(coeff, minus_one, P0)
        except PoleError as exc:
            raise PoleAtMinusOneError(
                f"coefficient of {monomial} in P{function.index} has a pole at k = -1"
            ) from exc
        if not is_p0_free(value):
            raise ResidualP0DependenceError(
                f"coefficient of {monomial} in P{function.index} at k = -1 still depends on p0"
            )
        terms[monomial] = value
    return SymFunc(SYMBOLIC, terms)


def euler_element_11(field: CoefficientField = SYMBOLIC) -> SymFunc:
    """E_{1,1} = P_{(1),(1)}(k=−1) + w = p_1 p_{-1} − 1 + w."""
    limit = jt_limit((1,), (1,))
    return SymFunc(field, {m: field(c) for m, c in limit.terms.items()}) + SymFunc.w(field)
