"""The algebra Λ±[w] of power sums p_a (a ≠ 0) and the extension variable w.

p0 is never a generator: it is the dimension parameter, a coefficient.
"""
import logging
import re
from collections import defaultdict
from types import MappingProxyType
from typing import Any, Callable, Iterable, Mapping, NamedTuple

from sympy import QQ, Poly, Symbol, sympify
from sympy.core.sympify import SympifyError
from sympy.polys.polyerrors import PolynomialError

from .errors import ParseError, PreconditionError
from .exact_arith import (
    K,
    K_SYMBOL,
    P0_SYMBOL,
    Coefficient,
    CoefficientField,
    as_rational,
    format_ratfunc,
    invert_k,
)
from .partitions import Partition, partitions_of

logger = logging.getLogger(__name__)

W_SYMBOL = Symbol("w")


class PMonomial(NamedTuple):
    """Π p_i^{e_i} · w^wexp, exponents sorted by index."""

    exps: tuple[tuple[int, int], ...] = ()
    wexp: int = 0

    @classmethod
    def from_exponents(
        cls, exps: Mapping[int, int] | Iterable[tuple[int, int]], wexp: int = 0
    ) -> "PMonomial":
        items = exps.items() if isinstance(exps, Mapping) else exps
        merged: dict[int, int] = defaultdict(int)
        for index, power in items:
            if index == 0:
                raise ValueError("p0 is a parameter, not a generator")
            merged[index] += power
        if any(power < 0 for power in merged.values()) or wexp < 0:
            raise ValueError("exponents must be non-negative")
        return cls(tuple(sorted((i, e) for i, e in merged.items() if e)), wexp)

    @classmethod
    def from_parts(cls, alpha: Iterable[int] = (), beta: Iterable[int] = (), wexp: int = 0):
        """p_α · p_{-β} · w^wexp."""
        indices = [(a, 1) for a in alpha] + [(-b, 1) for b in beta]
        return cls.from_exponents(indices, wexp)

    def exponent(self, index: int) -> int:
        for i, e in self.exps:
            if i == index:
                return e
        return 0

    @property
    def length(self) -> int:
        """ℓ: number of power-sum factors."""
        return sum(e for _, e in self.exps)

    @property
    def bidegree(self) -> tuple[int, int]:
        return (
            sum(i * e for i, e in self.exps if i > 0),
            sum(-i * e for i, e in self.exps if i < 0),
        )

    @property
    def net_degree(self) -> int:
        return sum(i * e for i, e in self.exps)

    @property
    def is_positive(self) -> bool:
        return self.wexp == 0 and all(i > 0 for i, _ in self.exps)

    def times(self, other: "PMonomial") -> "PMonomial":
        return PMonomial.from_exponents(self.exps + other.exps, self.wexp + other.wexp)

    def with_generator(self, index: int) -> "PMonomial":
        return PMonomial.from_exponents(self.exps + ((index, 1),), self.wexp)

    def without(self, index: int) -> "PMonomial":
        """Remove one factor p_index."""
        if not self.exponent(index):
            raise ValueError(f"p_{index} does not divide {self}")
        return PMonomial.from_exponents(self.exps + ((index, -1),), self.wexp)

    def star(self) -> "PMonomial":
        return PMonomial.from_exponents([(-i, e) for i, e in self.exps], self.wexp)

    def parts(self) -> tuple[Partition, Partition]:
        """(α, β) with this monomial equal to p_α p_{-β} w^wexp."""
        alpha = sorted((i for i, e in self.exps if i > 0 for _ in range(e)), reverse=True)
        beta = sorted((-i for i, e in self.exps if i < 0 for _ in range(e)), reverse=True)
        return tuple(alpha), tuple(beta)

    def sort_key(self) -> tuple:
        return (self.wexp, self.net_degree, self.exps)

    def __str__(self) -> str:
        factors = [f"p_{i}" if e == 1 else f"p_{i}^{e}" for i, e in reversed(self.exps)]
        if self.wexp:
            factors.append("w" if self.wexp == 1 else f"w^{self.wexp}")
        return "*".join(factors) or "1"


UNIT = PMonomial()


class SymFunc:
    """A finite sum Σ c_M · M of p-monomials with coefficients in a CoefficientField."""

    __slots__ = ("field", "_terms")

    def __init__(
        self,
        field: CoefficientField,
        terms: Mapping[PMonomial, Coefficient] | None = None,
    ):
        self.field = field
        self._terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls, field: CoefficientField) -> "SymFunc":
        return cls(field)

    @classmethod
    def constant(cls, field: CoefficientField, value: Any) -> "SymFunc":
        return cls(field, {UNIT: field(value)})

    @classmethod
    def one(cls, field: CoefficientField) -> "SymFunc":
        return cls(field, {UNIT: field.one})

    @classmethod
    def generator(cls, field: CoefficientField, index: int) -> "SymFunc":
        """p_index; index 0 gives the scalar p0 of the field."""
        if index == 0:
            return cls(field, {UNIT: field.p0})
        return cls(field, {PMonomial.from_exponents({index: 1}): field.one})

    @classmethod
    def w(cls, field: CoefficientField, power: int = 1) -> "SymFunc":
        return cls(field, {PMonomial((), power): field.one})

    @classmethod
    def from_monomial(
        cls, field: CoefficientField, monomial: PMonomial, coeff: Any = None
    ) -> "SymFunc":
        return cls(field, {monomial: field.one if coeff is None else field(coeff)})

    @property
    def terms(self) -> Mapping[PMonomial, Coefficient]:
        return MappingProxyType(self._terms)

    def coefficient(self, monomial: PMonomial) -> Coefficient:
        return self._terms.get(monomial, self.field.zero)

    def sorted_terms(self) -> list[tuple[PMonomial, Coefficient]]:
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key(), reverse=True)

    def _coerce(self, other: Any) -> "SymFunc":
        if isinstance(other, SymFunc):
            return other
        return SymFunc(self.field, {UNIT: self.field(other)})

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymFunc):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def __add__(self, other: Any) -> "SymFunc":
        other = self._coerce(other)
        terms = dict(self._terms)
        for monomial, coeff in other._terms.items():
            terms[monomial] = terms[monomial] + coeff if monomial in terms else coeff
        return SymFunc(self.field, terms)

    __radd__ = __add__

    def __neg__(self) -> "SymFunc":
        return SymFunc(self.field, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Any) -> "SymFunc":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "SymFunc":
        return self._coerce(other) - self

    def scale(self, c: Any) -> "SymFunc":
        c = self.field(c)
        return SymFunc(self.field, {m: coeff * c for m, coeff in self._terms.items()})

    def __mul__(self, other: Any) -> "SymFunc":
        if not isinstance(other, SymFunc):
            return self.scale(other)
        product: dict[PMonomial, Coefficient] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                monomial = m1.times(m2)
                value = c1 * c2
                product[monomial] = product[monomial] + value if monomial in product else value
        return SymFunc(self.field, product)

    __rmul__ = __mul__

    def map_coefficients(self, fn: Callable[[Coefficient], Coefficient]) -> "SymFunc":
        return SymFunc(self.field, {m: fn(c) for m, c in self._terms.items()})

    def map_monomials(self, fn: Callable[[PMonomial], PMonomial]) -> "SymFunc":
        mapped: dict[PMonomial, Coefficient] = {}
        for monomial, coeff in self._terms.items():
            image = fn(monomial)
            mapped[image] = mapped[image] + coeff if image in mapped else coeff
        return SymFunc(self.field, mapped)

    def to_text(self) -> str:
        return format_symfunc(self)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"SymFunc({self.to_text()!r}, field={self.field.describe()})"


def multiply(f: SymFunc, g: SymFunc) -> SymFunc:
    return f * g


def add(f: SymFunc, g: SymFunc) -> SymFunc:
    return f + g


def scale(f: SymFunc, c: Any) -> SymFunc:
    return f.scale(c)


def star(f: SymFunc) -> SymFunc:
    """The involution p_a -> p_{-a}, fixing coefficients and w."""
    return f.map_monomials(PMonomial.star)


def theta(f: SymFunc) -> SymFunc:
    """θ: k -> 1/k on coefficients, then each monomial times k^ℓ; θ∘θ = id."""
    if not f.field.is_symbolic:
        raise PreconditionError("theta needs symbolic coefficients")
    return SymFunc(
        f.field,
        {m: invert_k(c) * K**m.length for m, c in f.terms.items()},
    )


def scale_generators(f: SymFunc, c: Any) -> SymFunc:
    """T_c: p_a -> c·p_a for every a, coefficients untouched."""
    c = f.field(c)
    return SymFunc(f.field, {m: coeff * c**m.length for m, coeff in f.terms.items()})


def power_sum_monomial(alpha: Iterable[int], beta: Iterable[int] = ()) -> PMonomial:
    return PMonomial.from_parts(alpha, beta)


def basis_monomials(
    max_degree: int, laurent: bool = True, max_wexp: int = 0
) -> list[PMonomial]:
    """All p-monomials of total degree ≤ max_degree (times w^l, l ≤ max_wexp)."""
    monomials = []
    for d in range(max_degree + 1):
        for e in range(max_degree - d + 1 if laurent else 1):
            for alpha in partitions_of(d):
                for beta in partitions_of(e):
                    for wexp in range(max_wexp + 1):
                        monomials.append(PMonomial.from_parts(alpha, beta, wexp))
    return sorted(monomials, key=PMonomial.sort_key)


def _format_term(monomial: PMonomial, coeff: Coefficient) -> tuple[bool, str]:
    value = as_rational(coeff)
    if value is not None:
        negative = value < 0
        magnitude = -value if negative else value
        if monomial == UNIT:
            return negative, str(magnitude)
        if magnitude == 1:
            return negative, str(monomial)
        return negative, f"{magnitude}*{monomial}"
    body = f"({format_ratfunc(coeff)})"
    return False, body if monomial == UNIT else f"{body}*{monomial}"


def format_symfunc(f: SymFunc) -> str:
    """Text form such as ``p_1*p_-1 - 1``, leading term first."""
    pieces = []
    for monomial, coeff in f.sorted_terms():
        negative, body = _format_term(monomial, coeff)
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces) or "0"


_GENERATOR = re.compile(r"p_(-?)(\d+)")


def parse_symfunc(text: str, field: CoefficientField) -> SymFunc:
    """Read the text form back, e.g. ``p_1*p_-1 - p0/(1+k-k*p0)``."""
    indices: dict[str, int] = {}

    def rename(match: re.Match) -> str:
        index = int(match.group(2)) * (-1 if match.group(1) else 1)
        if index == 0:
            raise ParseError("p_0 is not a generator; write p0 for the parameter")
        name = f"p_m{-index}" if index < 0 else f"p_{index}"
        indices[name] = index
        return name

    source = _GENERATOR.sub(rename, text).replace("^", "**")
    names = {name: Symbol(name) for name in indices}
    local = {**names, "w": W_SYMBOL, "k": K_SYMBOL, "p0": P0_SYMBOL}
    try:
        expr = sympify(source, locals=local)
        if not field.is_symbolic:
            expr = expr.subs(
                {K_SYMBOL: QQ.to_sympy(field.k_value), P0_SYMBOL: QQ.to_sympy(field.p0_value)}
            )
        gens = [names[name] for name in indices] + [W_SYMBOL]
        poly = Poly(expr, *gens, domain=field.domain)
    except (SympifyError, PolynomialError, TypeError, ValueError) as exc:
        raise ParseError(f"cannot read {text!r} as an element of Λ±[w]") from exc
    order = list(indices.values())
    terms = {}
    for exponents, coeff in poly.as_dict(native=True).items():
        monomial = PMonomial.from_exponents(zip(order, exponents[:-1]), exponents[-1])
        terms[monomial] = coeff
    return SymFunc(field, terms)
