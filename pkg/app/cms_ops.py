"""Infinite-dimensional CMS operators acting on Λ⁺ and Λ±[w].

Every operator is written through ∂_a = a·∂/∂p_a.  A term that would create
the generator p_0 contributes the operator's own p0 binding instead, so an
operator with rebound parameters is still compatible with φ_N.
"""
import logging
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from typing import Any, Iterable

from .errors import DomainViolationError
from .exact_arith import K, P0, SYMBOLIC, Coefficient, CoefficientField, invert_k
from .psym import PMonomial, SymFunc, basis_monomials, scale_generators, star, theta
from .reports import CheckReport

logger = logging.getLogger(__name__)

DEFAULT_BC_COUPLING = "1/3"


class OperatorKind(str, Enum):
    TRIG_STABLE = "trig-stable"
    TRIG_PARAM = "trig-param"
    RATIONAL = "rational"
    BC_RATIONAL = "bc-rational"
    LAURENT = "laurent"
    LAURENT_EXT = "laurent-ext"
    MOMENTUM_TRIG = "momentum-trig"
    MOMENTUM_RATIONAL = "momentum-rational"


LAURENT_DOMAIN = frozenset(
    {OperatorKind.LAURENT, OperatorKind.LAURENT_EXT, OperatorKind.MOMENTUM_TRIG}
)
DUALITY_KINDS = (
    OperatorKind.TRIG_PARAM,
    OperatorKind.RATIONAL,
    OperatorKind.BC_RATIONAL,
    OperatorKind.LAURENT,
)


@dataclass(frozen=True)
class OperatorSpec:
    """An operator kind with its parameter bindings k, p0 and the BC coupling l."""

    kind: OperatorKind
    field: CoefficientField
    k: Coefficient
    p0: Coefficient
    l: Coefficient

    @classmethod
    def create(
        cls,
        kind: OperatorKind | str,
        field: CoefficientField = SYMBOLIC,
        *,
        k: Any = None,
        p0: Any = None,
        l: Any = None,
    ) -> "OperatorSpec":
        return cls(
            kind=OperatorKind(kind),
            field=field,
            k=field.k if k is None else field(k),
            p0=field.p0 if p0 is None else field(p0),
            l=field(DEFAULT_BC_COUPLING if l is None else l),
        )

    def rebind(self, **bindings: Any) -> "OperatorSpec":
        return replace(self, **{name: self.field(value) for name, value in bindings.items()})

    @property
    def accepts_laurent(self) -> bool:
        return self.kind in LAURENT_DOMAIN


def _second_index(kind: OperatorKind, a: int, b: int) -> int | None:
    """Index of the generator created by the second-order part, None when absent."""
    if kind in (OperatorKind.TRIG_STABLE, OperatorKind.TRIG_PARAM,
                OperatorKind.LAURENT, OperatorKind.LAURENT_EXT):
        return a + b
    if kind is OperatorKind.RATIONAL:
        return a + b - 2
    if kind is OperatorKind.BC_RATIONAL:
        return a + b - 1
    return None


def _split_terms(op: OperatorSpec, c: int) -> list[tuple[int, int, Coefficient]]:
    """Pairs (a, b, coefficient) such that the operator contains coefficient·p_a·p_b·∂_c."""
    k, kind = op.k, op.kind
    if kind in (OperatorKind.TRIG_STABLE, OperatorKind.TRIG_PARAM):
        return [(a, c - a, -k) for a in range(1, c)]
    if kind in (OperatorKind.LAURENT, OperatorKind.LAURENT_EXT):
        if c > 0:
            return [(a, c - a, -k) for a in range(1, c)]
        return [(a, c - a, k) for a in range(c + 1, 0)]
    if kind is OperatorKind.RATIONAL:
        return [(a, c - 2 - a, -k) for a in range(0, c - 1)]
    if kind is OperatorKind.BC_RATIONAL:
        return [(a, c - 1 - a, -k) for a in range(1, c - 1)]
    return []


def _first_terms(op: OperatorSpec, c: int) -> list[tuple[int | None, Coefficient]]:
    """Pairs (index, coefficient) for coefficient·p_index·∂_c; None means no generator."""
    k, p0, one = op.k, op.p0, op.field.one
    kind = op.kind
    if kind is OperatorKind.TRIG_STABLE:
        return [(c, c + c * k - k)]
    if kind is OperatorKind.TRIG_PARAM:
        return [(c, -k * p0 + (1 + k) * c)]
    if kind is OperatorKind.RATIONAL:
        return [(c - 2, (1 + k) * (c - 1))] if c >= 2 else []
    if kind is OperatorKind.BC_RATIONAL:
        half = one / 2
        terms: list[tuple[int | None, Coefficient]] = [
            (c - 1, (1 + k) * c - (2 * k * p0 + op.l + half))
        ]
        if c == 1:
            terms.append((None, k * p0**2))
        return terms
    if kind in (OperatorKind.LAURENT, OperatorKind.LAURENT_EXT):
        sign = 1 if c > 0 else -1
        return [(c, -k * p0 * sign + (1 + k) * c)]
    if kind is OperatorKind.MOMENTUM_TRIG:
        return [(c, one)]
    if kind is OperatorKind.MOMENTUM_RATIONAL:
        return [(c - 1, one)]
    return []


def _insert(op: OperatorSpec, monomial: PMonomial, indices: Iterable[int]):
    """Multiply a monomial by p_i for each index; p_0 becomes the p0 binding."""
    factor = op.field.one
    for index in indices:
        if index == 0:
            factor = factor * op.p0
        else:
            monomial = monomial.with_generator(index)
    return monomial, factor


@lru_cache(maxsize=65536)
def _act(op: OperatorSpec, monomial: PMonomial) -> tuple[tuple[PMonomial, Coefficient], ...]:
    image: dict[PMonomial, Coefficient] = {}

    def accumulate(target: PMonomial, value: Coefficient) -> None:
        image[target] = image[target] + value if target in image else value

    exps = dict(monomial.exps)
    for a, ea in exps.items():
        for b, eb in exps.items():
            multiplicity = ea * (ea - 1) if a == b else ea * eb
            if not multiplicity:
                continue
            index = _second_index(op.kind, a, b)
            if index is None:
                continue
            target, factor = _insert(op, monomial.without(a).without(b), [index])
            accumulate(target, factor * (a * b * multiplicity))

    for c, ec in exps.items():
        base = monomial.without(c)
        weight = c * ec
        for a, b, coeff in _split_terms(op, c):
            target, factor = _insert(op, base, [a, b])
            accumulate(target, coeff * factor * weight)
        for index, coeff in _first_terms(op, c):
            target, factor = _insert(op, base, [] if index is None else [index])
            accumulate(target, coeff * factor * weight)

    if op.kind is OperatorKind.LAURENT_EXT and monomial.wexp:
        l = monomial.wexp
        accumulate(monomial, op.p0 * (l * l) + 2 * l * monomial.net_degree)
    return tuple((m, c) for m, c in image.items() if c)


def _check_domain(op: OperatorSpec, f: SymFunc) -> None:
    if op.accepts_laurent:
        return
    for monomial in f.terms:
        if not monomial.is_positive:
            raise DomainViolationError(f"{op.kind.value} acts on Λ⁺ only, got {monomial}")


def apply(op: OperatorSpec, f: SymFunc) -> SymFunc:
    """Apply an operator to f; linear, monomial images cached per operator."""
    _check_domain(op, f)
    image: dict[PMonomial, Coefficient] = {}
    for monomial, coeff in f.terms.items():
        for target, value in _act(op, monomial):
            value = coeff * value
            image[target] = image[target] + value if target in image else value
    return SymFunc(f.field, image)


def momentum(kind: str, f: SymFunc) -> SymFunc:
    """P = Σ p_a∂_a ("trig") or P = Σ_{a>0} p_{a-1}∂_a ("rational")."""
    op_kind = OperatorKind.MOMENTUM_TRIG if kind == "trig" else OperatorKind.MOMENTUM_RATIONAL
    return apply(OperatorSpec.create(op_kind, f.field), f)


def dual_operator(op: OperatorSpec) -> OperatorSpec:
    """The operator L' with θ∘L∘θ = k⁻¹·L' (bindings k, p0/k and the twisted coupling)."""
    coupling = ((2 * op.l + 1) / K - 1) / 2
    return op.rebind(k=K, p0=P0 / K, l=invert_k(coupling))


def scaled_dual_operator(op: OperatorSpec) -> OperatorSpec:
    """The operator L' with T_k⁻¹∘L∘T_k = k·L'."""
    coupling = ((2 * op.l + 1) / K - 1) / 2
    return op.rebind(k=1 / K, p0=K * P0, l=coupling)


def check_duality(
    kind: OperatorKind | str,
    degree_bound: int,
    field: CoefficientField = SYMBOLIC,
    l: Any = None,
) -> CheckReport:
    """Verify the k ↔ 1/k duality on every basis monomial of total degree ≤ degree_bound."""
    op = OperatorSpec.create(kind, field, l=l)
    report = CheckReport(
        check="duality",
        params={"operator": op.kind.value, "degree": degree_bound},
    )
    if op.kind not in DUALITY_KINDS:
        raise ValueError(f"{op.kind.value} has no k <-> 1/k duality")
    twisted, scaled = dual_operator(op), scaled_dual_operator(op)
    for monomial in basis_monomials(degree_bound, laurent=op.accepts_laurent):
        f = SymFunc.from_monomial(field, monomial)
        image = apply(op, f)
        report.record(
            f"theta form at {monomial}",
            theta(apply(op, theta(f))) == apply(twisted, f).scale(1 / K),
        )
        report.record(
            f"scaling form at {monomial}",
            scale_generators(apply(op, scale_generators(f, K)), 1 / K)
            == apply(scaled, f).scale(K),
        )
        if op.kind is OperatorKind.LAURENT:
            report.record(f"star symmetry at {monomial}", star(apply(op, star(f))) == image)
    return report


def check_stable_relation(degree_bound: int, field: CoefficientField = SYMBOLIC) -> CheckReport:
    """L̃ = L + k(p0 − 1)·P on Λ⁺, P the trigonometric momentum."""
    stable = OperatorSpec.create(OperatorKind.TRIG_STABLE, field)
    param = OperatorSpec.create(OperatorKind.TRIG_PARAM, field)
    report = CheckReport(check="stable-relation", params={"degree": degree_bound})
    shift = field.k * (field.p0 - 1)
    for monomial in basis_monomials(degree_bound, laurent=False):
        f = SymFunc.from_monomial(field, monomial)
        report.record(
            str(monomial), apply(stable, f) == apply(param, f) + momentum("trig", f).scale(shift)
        )
    return report
