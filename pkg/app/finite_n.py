"""Specialization to N variables and the finite CMS operators.

φ_N sends p_a to Σ z_i^a, p0 to N and w to z_1⋯z_N.  The finite operators act
on symmetric Laurent polynomials; the singular parts are written with the
exact quotient (z^β − z^{s_ij β})/(z_i − z_j), each monomial contributing half
of the symmetrized pair it belongs to.
"""
import logging
from enum import Enum
from functools import lru_cache
from typing import Any, Callable, Iterable, Mapping

from sympy import QQ
from sympy.utilities.iterables import multiset_permutations

from .cms_ops import OperatorKind, OperatorSpec, apply
from .errors import PreconditionError, SymmetryError, TriangularityError
from .exact_arith import SYMBOLIC, Coefficient, CoefficientField, eval_at, to_rational
from .jack_laurent import back_substitute, classical_jack, jack_laurent
from .partitions import make_partition, partitions_of, prefix_dominated
from .psym import PMonomial, SymFunc, basis_monomials
from .reports import CheckReport

logger = logging.getLogger(__name__)

Exponents = tuple[int, ...]
HALF = QQ(1, 2)


class FiniteLaurentPoly:
    """Σ c_α z^α in a fixed number of variables, α ∈ Z^N."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Exponents, Any] | None = None):
        self.nvars = nvars
        self._terms = {tuple(e): c for e, c in (terms or {}).items() if c}

    def _new(self, terms: Mapping[Exponents, Any]) -> "FiniteLaurentPoly":
        return FiniteLaurentPoly(self.nvars, terms)

    @classmethod
    def constant(cls, nvars: int, value: Any) -> "FiniteLaurentPoly":
        return cls(nvars, {(0,) * nvars: value})

    @property
    def terms(self) -> Mapping[Exponents, Any]:
        return dict(self._terms)

    def coefficient(self, exponents: Iterable[int], default: Any = 0) -> Any:
        return self._terms.get(tuple(exponents), default)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteLaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    __hash__ = None

    def __add__(self, other: "FiniteLaurentPoly") -> "FiniteLaurentPoly":
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return self._new(terms)

    def __neg__(self) -> "FiniteLaurentPoly":
        return self._new({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "FiniteLaurentPoly") -> "FiniteLaurentPoly":
        return self + (-other)

    def __mul__(self, other: Any) -> "FiniteLaurentPoly":
        if not isinstance(other, FiniteLaurentPoly):
            return self._new({e: c * other for e, c in self._terms.items()})
        product: dict[Exponents, Any] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                value = c1 * c2
                product[e] = product[e] + value if e in product else value
        return self._new(product)

    __rmul__ = __mul__

    def map_coefficients(self, fn: Callable[[Any], Any]) -> "FiniteLaurentPoly":
        return self._new({e: fn(c) for e, c in self._terms.items()})

    def shift(self, a: int) -> "FiniteLaurentPoly":
        """Multiply by (z_1⋯z_N)^a."""
        return self._new({tuple(x + a for x in e): c for e, c in self._terms.items()})

    def permute(self, permutation: Iterable[int]) -> "FiniteLaurentPoly":
        """Relabel variables: z_i -> z_{permutation[i]} (0-based)."""
        permutation = list(permutation)
        moved = {}
        for e, c in self._terms.items():
            image = [0] * self.nvars
            for i, x in enumerate(e):
                image[permutation[i]] = x
            moved[tuple(image)] = c
        return self._new(moved)

    def is_symmetric(self) -> bool:
        if self.nvars < 2:
            return True
        swap = [1, 0] + list(range(2, self.nvars))
        cycle = list(range(1, self.nvars)) + [0]
        return self.permute(swap) == self and self.permute(cycle) == self

    def restrict(self, nvars: int) -> "FiniteLaurentPoly":
        """Set z_i = 0 for i > nvars; polynomial in the dropped variables."""
        kept = {}
        for e, c in self._terms.items():
            tail = e[nvars:]
            if any(x < 0 for x in tail):
                raise PreconditionError("cannot set a variable with a negative power to zero")
            if not any(tail):
                kept[e[:nvars]] = c
        return FiniteLaurentPoly(nvars, kept)

    def __repr__(self) -> str:
        return f"FiniteLaurentPoly({self.nvars}, {self._terms!r})"


class SuperPoly(FiniteLaurentPoly):
    """A Laurent polynomial in x_1..x_m, y_1..y_n stored as m + n variables."""

    __slots__ = ("m", "n")

    def __init__(self, m: int, n: int, terms: Mapping[Exponents, Any] | None = None):
        super().__init__(m + n, terms)
        self.m = m
        self.n = n

    def _new(self, terms: Mapping[Exponents, Any]) -> "SuperPoly":
        return SuperPoly(self.m, self.n, terms)


def power_sum(nvars: int, a: int) -> FiniteLaurentPoly:
    """Σ z_i^a; the value N for a = 0."""
    if a == 0:
        return FiniteLaurentPoly.constant(nvars, nvars)
    return FiniteLaurentPoly(
        nvars, {tuple(a if t == v else 0 for t in range(nvars)): 1 for v in range(nvars)}
    )


@lru_cache(maxsize=None)
def _power_sum_image(monomial: PMonomial, nvars: int) -> FiniteLaurentPoly:
    image = FiniteLaurentPoly.constant(nvars, 1)
    for index, power in monomial.exps:
        for _ in range(power):
            image = image * power_sum(nvars, index)
    return image.shift(monomial.wexp) if monomial.wexp else image


def phi_n(f: SymFunc, nvars: int) -> FiniteLaurentPoly:
    """φ_N: coefficients at p0 = N, power sums in N variables, w -> z_1⋯z_N."""
    if nvars < 1:
        raise PreconditionError("N must be positive")
    image: dict[Exponents, Any] = {}
    for monomial, coeff in f.terms.items():
        value = f.field.specialize_p0(coeff, nvars)
        if not value:
            continue
        for e, n in _power_sum_image(monomial, nvars).terms.items():
            contribution = value * n
            image[e] = image[e] + contribution if e in image else contribution
    return FiniteLaurentPoly(nvars, image)


@lru_cache(maxsize=None)
def _telescoping_quotient(exps: Exponents, i: int, j: int) -> tuple[tuple[Exponents, int], ...]:
    """(z^β − z^{s_ij β})/(z_i − z_j) as a signed list of monomials."""
    bi, bj = exps[i], exps[j]
    if bi == bj:
        return ()
    sign, low, gap = (1, bj, bi - bj) if bi > bj else (-1, bi, bj - bi)
    quotient = []
    for t in range(gap):
        e = list(exps)
        e[i] = low + t
        e[j] = low + gap - 1 - t
        quotient.append((tuple(e), sign))
    return tuple(quotient)


def _bump(exps: Exponents, i: int, delta: int) -> Exponents:
    e = list(exps)
    e[i] += delta
    return tuple(e)


class FiniteVariant(str, Enum):
    TRIG = "trig"
    TRIG_STABLE = "trig-stable"
    RATIONAL = "rational"
    BC = "bc"
    MOMENTUM_TRIG = "momentum-trig"
    MOMENTUM_RATIONAL = "momentum-rational"


_NEEDS_SYMMETRY = {FiniteVariant.TRIG, FiniteVariant.TRIG_STABLE, FiniteVariant.RATIONAL, FiniteVariant.BC}


def apply_finite_cms(
    g: FiniteLaurentPoly,
    k: Coefficient,
    variant: FiniteVariant | str = FiniteVariant.TRIG,
    l: Coefficient | None = None,
) -> FiniteLaurentPoly:
    """Apply a finite CMS operator to a symmetric Laurent polynomial.

    ``k`` (and ``l`` for the BC variant) must be field elements, not ints.

    Raises:
        SymmetryError: if g is not symmetric and the variant has singular terms.
    """
    variant = FiniteVariant(variant)
    if variant in _NEEDS_SYMMETRY and not g.is_symmetric():
        raise SymmetryError("finite CMS operators are applied to symmetric input only")
    n = g.nvars
    image: dict[Exponents, Any] = {}

    def accumulate(e: Exponents, value: Any) -> None:
        image[e] = image[e] + value if e in image else value

    half_k = k / 2
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for e, c in g.terms.items():
        if variant in (FiniteVariant.TRIG, FiniteVariant.TRIG_STABLE):
            accumulate(e, c * sum(a * a for a in e))
            if variant is FiniteVariant.TRIG_STABLE:
                accumulate(e, c * k * ((n - 1) * sum(e)))
            for i, j in pairs:
                diff = e[i] - e[j]
                for q, sign in _telescoping_quotient(e, i, j):
                    value = -half_k * c * (diff * sign)
                    accumulate(_bump(q, i, 1), value)
                    accumulate(_bump(q, j, 1), value)
        elif variant is FiniteVariant.RATIONAL:
            for i, a in enumerate(e):
                if a * (a - 1):
                    accumulate(_bump(e, i, -2), c * (a * (a - 1)))
            for i, j in pairs:
                for idx, weight in ((i, e[i]), (j, -e[j])):
                    if not weight:
                        continue
                    for q, sign in _telescoping_quotient(_bump(e, idx, -1), i, j):
                        accumulate(q, -k * c * (weight * sign))
        elif variant is FiniteVariant.BC:
            shift = l - HALF
            for i, a in enumerate(e):
                if a * (a - 1):
                    accumulate(_bump(e, i, -1), c * (a * (a - 1)))
                if a:
                    accumulate(_bump(e, i, -1), -shift * c * a)
            for i, j in pairs:
                diff = e[i] - e[j]
                for q, sign in _telescoping_quotient(e, i, j):
                    accumulate(q, -k * c * (diff * sign))
        elif variant is FiniteVariant.MOMENTUM_TRIG:
            accumulate(e, c * sum(e))
        else:
            for i, a in enumerate(e):
                if a:
                    accumulate(_bump(e, i, -1), c * a)
    return g._new(image)


FINITE_COUNTERPART = {
    OperatorKind.TRIG_STABLE: FiniteVariant.TRIG_STABLE,
    OperatorKind.TRIG_PARAM: FiniteVariant.TRIG,
    OperatorKind.RATIONAL: FiniteVariant.RATIONAL,
    OperatorKind.BC_RATIONAL: FiniteVariant.BC,
    OperatorKind.LAURENT: FiniteVariant.TRIG,
    OperatorKind.LAURENT_EXT: FiniteVariant.TRIG,
    OperatorKind.MOMENTUM_TRIG: FiniteVariant.MOMENTUM_TRIG,
    OperatorKind.MOMENTUM_RATIONAL: FiniteVariant.MOMENTUM_RATIONAL,
}


def check_commuting_diagram(
    kind: OperatorKind | str,
    nvars: int,
    degree_bound: int,
    field: CoefficientField = SYMBOLIC,
    l: Any = None,
) -> CheckReport:
    """φ_N ∘ L = L_N ∘ φ_N on every basis monomial of total degree ≤ degree_bound."""
    op = OperatorSpec.create(kind, field, l=l)
    variant = FINITE_COUNTERPART[op.kind]
    report = CheckReport(
        check="commuting-diagram",
        params={"operator": op.kind.value, "N": nvars, "degree": degree_bound},
    )
    max_wexp = 2 if op.kind is OperatorKind.LAURENT_EXT else 0
    coupling = field.specialize_p0(op.l, nvars)
    for monomial in basis_monomials(degree_bound, laurent=op.accepts_laurent, max_wexp=max_wexp):
        f = SymFunc.from_monomial(field, monomial)
        lhs = phi_n(apply(op, f), nvars)
        rhs = apply_finite_cms(phi_n(f, nvars), op.k, variant, coupling)
        report.record(str(monomial), lhs == rhs)
    return report


def check_stability(
    nvars: int, larger: int, degree_bound: int, field: CoefficientField = SYMBOLIC
) -> CheckReport:
    """Restriction z_i -> 0 (i > N) intertwines the modified operators in M and N variables."""
    if larger <= nvars:
        raise PreconditionError("the larger number of variables must exceed N")
    report = CheckReport(
        check="stability", params={"N": nvars, "M": larger, "degree": degree_bound}
    )
    k = field.k
    for monomial in basis_monomials(degree_bound, laurent=False):
        g = phi_n(SymFunc.from_monomial(field, monomial), larger)
        lhs = apply_finite_cms(g, k, FiniteVariant.TRIG_STABLE).restrict(nvars)
        rhs = apply_finite_cms(g.restrict(nvars), k, FiniteVariant.TRIG_STABLE)
        report.record(str(monomial), lhs == rhs)
    return report


def finite_monomial(rho: Iterable[int], nvars: int) -> FiniteLaurentPoly:
    """The monomial symmetric polynomial m_ρ(z_1, …, z_N)."""
    rho = make_partition(rho)
    if len(rho) > nvars:
        return FiniteLaurentPoly(nvars)
    padded = list(rho) + [0] * (nvars - len(rho))
    return FiniteLaurentPoly(nvars, {tuple(e): 1 for e in multiset_permutations(padded)})


@lru_cache(maxsize=256)
def _finite_jack_cached(nu: tuple[int, ...], nvars: int, field: CoefficientField) -> FiniteLaurentPoly:
    k = field.k
    rungs = [
        rho
        for rho in partitions_of(sum(nu))
        if len(rho) <= nvars and prefix_dominated(rho, nu)
    ]
    known = set(rungs)
    columns = {}
    for rho in rungs:
        image = apply_finite_cms(finite_monomial(rho, nvars), k, FiniteVariant.TRIG)
        column = {}
        for e, c in image.terms.items():
            sigma = make_partition(sorted(e, reverse=True))
            if sigma not in known:
                raise TriangularityError(f"finite operator sends m{rho} onto m{sigma}")
            if tuple(e) == tuple(sorted(e, reverse=True)):
                column[sigma] = c
        columns[rho] = column
    coeffs = back_substitute(rungs, columns, field.zero, field.one)
    total = FiniteLaurentPoly(nvars)
    for rho, u in coeffs.items():
        total = total + finite_monomial(rho, nvars) * u
    return total


def finite_jack(nu: Iterable[int], nvars: int, field: CoefficientField = SYMBOLIC) -> FiniteLaurentPoly:
    """Jack polynomial P_ν(z_1..z_N) by a direct triangular solve in N variables."""
    return _finite_jack_cached(make_partition(nu), nvars, field)


SMALL_CLASSICAL = 6


def check_specialization_jack(
    lam: Iterable[int],
    mu: Iterable[int],
    nvars: int,
    a: int,
    field: CoefficientField = SYMBOLIC,
) -> CheckReport:
    """(z_1⋯z_N)^a·φ_N(P_{λ,μ}) is the Jack polynomial of (λ+a, a, …, a, a−μ)."""
    lam, mu = make_partition(lam), make_partition(mu)
    r, s = len(lam), len(mu)
    if nvars <= r + s:
        raise PreconditionError(f"N = {nvars} must exceed l(λ) + l(μ) = {r + s}")
    if a < (mu[0] if mu else 0):
        raise PreconditionError(f"shift a = {a} must be at least μ_1")
    nu = make_partition(
        [x + a for x in lam] + [a] * (nvars - r - s) + [a - x for x in reversed(mu)]
    )
    report = CheckReport(
        check="jack-specialization",
        params={"lam": list(lam), "mu": list(mu), "N": nvars, "a": a, "nu": list(nu)},
    )
    lhs = phi_n(jack_laurent(lam, mu, field).p_form, nvars).shift(a)
    finite = finite_jack(nu, nvars, field)
    report.record(f"direct solve of P{nu} in {nvars} variables", lhs == finite)
    if sum(nu) <= SMALL_CLASSICAL:
        report.record(
            f"specialized stable P{nu}", phi_n(classical_jack(nu, field), nvars) == finite
        )
    return report


def check_power_sum_identities(nvars: int, a_max: int) -> CheckReport:
    """Σ_{i<j}(z_i+z_j)(z_i^a−z_j^a)/(z_i−z_j) and Σ_{i<j}(z_i^a−z_j^a)/(z_i−z_j) in power sums."""
    report = CheckReport(check="power-sum-identities", params={"N": nvars, "a_max": a_max})
    pairs = [(i, j) for i in range(nvars) for j in range(i + 1, nvars)]
    for a in range(1, a_max + 1):
        symmetric_sum = FiniteLaurentPoly(nvars)
        plain_sum = FiniteLaurentPoly(nvars)
        for i, j in pairs:
            e = tuple(a if t == i else 0 for t in range(nvars))
            quotient = FiniteLaurentPoly(nvars, dict(_telescoping_quotient(e, i, j)))
            plain_sum = plain_sum + quotient
            symmetric_sum = symmetric_sum + quotient * _linear(nvars, i, j)
        first = power_sum(nvars, a) * (-a)
        second = power_sum(nvars, a - 1) * (-a)
        for t in range(a):
            first = first + power_sum(nvars, t) * power_sum(nvars, a - t)
        for t in range(a):
            second = second + power_sum(nvars, t) * power_sum(nvars, a - 1 - t)
        report.record(f"(z_i+z_j) identity at a={a}", symmetric_sum == first)
        report.record(f"plain identity at a={a}", plain_sum * 2 == second)
    return report


def _linear(nvars: int, i: int, j: int) -> FiniteLaurentPoly:
    """z_i + z_j."""
    return FiniteLaurentPoly(
        nvars,
        {
            tuple(1 if t == i else 0 for t in range(nvars)): 1,
            tuple(1 if t == j else 0 for t in range(nvars)): 1,
        },
    )


@lru_cache(maxsize=None)
def _super_image(monomial: PMonomial, m: int, n: int) -> SuperPoly:
    width = m + n
    image = SuperPoly(m, n, {(0,) * width: 1})
    for index, power in monomial.exps:
        generator = SuperPoly(
            m,
            n,
            {tuple(index if t == v else 0 for t in range(width)): (1 if v < m else -1) for v in range(width)},
        )
        for _ in range(power):
            image = image * generator
    if monomial.wexp:
        image = image * berezinian(m, n, monomial.wexp)
    return image


def berezinian(m: int, n: int, power: int = 1) -> SuperPoly:
    """Δ^power with Δ = x_1⋯x_m / y_1⋯y_n, the image of w."""
    return SuperPoly(m, n, {tuple([power] * m + [-power] * n): 1})


def phi_mn(f: SymFunc, m: int, n: int, at_k: Any) -> SuperPoly:
    """Super specialization: p_i -> Σx^i − Σy^i, p0 -> m − n, w -> Πx/Πy, k -> at_k."""
    if m < 0 or n < 0 or m + n == 0:
        raise PreconditionError(f"phi_{m},{n} needs m, n >= 0 and m + n >= 1")
    k_value = to_rational(at_k)
    field = f.field
    if not field.is_symbolic and (field.k_value != k_value or field.p0_value != m - n):
        raise PreconditionError(
            f"numeric field has k={field.k_value}, p0={field.p0_value}; "
            f"phi_{m},{n} at k={k_value} needs p0={m - n}"
        )
    image: dict[Exponents, Any] = {}
    for monomial, coeff in f.terms.items():
        value = eval_at(coeff, k_value, m - n) if field.is_symbolic else coeff
        if not value:
            continue
        for e, c in _super_image(monomial, m, n).terms.items():
            contribution = value * c
            image[e] = image[e] + contribution if e in image else contribution
    return SuperPoly(m, n, image)
