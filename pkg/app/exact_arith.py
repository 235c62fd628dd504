"""Exact coefficient arithmetic.

Every coefficient in the package lives in the field Q(k, p0) of rational
functions in the coupling ``k`` and the dimension parameter ``p0``, or, in
numeric mode, in Q itself once both parameters are fixed to rationals.  The
field comes from sympy's sparse polynomial machinery; this module fixes the
normal form, the text format and the maps (substitution, evaluation) the rest
of the package needs.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, Union

from sympy import QQ, Rational, Symbol, sympify
from sympy.core.sympify import SympifyError
from sympy.polys.fields import FracElement, field
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import CoercionFailed
from sympy.polys.rings import PolyElement

from .errors import DivisionByZeroError, ParseError, PoleError, PreconditionError

logger = logging.getLogger(__name__)

K_SYMBOL = Symbol("k")
P0_SYMBOL = Symbol("p0")

PARAM_FIELD, K, P0 = field([K_SYMBOL, P0_SYMBOL], QQ, grlex)
PARAM_RING = PARAM_FIELD.ring
PARAM_DOMAIN = PARAM_FIELD.to_domain()

BigRational = QQ.dtype
ParamPoly = PolyElement
RatFunc = FracElement
Coefficient = Union[RatFunc, BigRational]


class ArithOp(str, Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"


def to_rational(value: Any) -> BigRational:
    """Convert an int, a rational or a text such as ``"3/2"`` into a QQ element."""
    if isinstance(value, BigRational):
        return value
    if isinstance(value, int):
        return QQ(value)
    try:
        number = Rational(str(value).strip())
    except (TypeError, ValueError, SympifyError) as exc:
        raise ParseError(f"{value!r} is not a rational number") from exc
    return QQ(int(number.p), int(number.q))


def ratfunc_arith(a: Coefficient, b: Coefficient, op: ArithOp) -> Coefficient:
    op = ArithOp(op)
    if op is ArithOp.ADD:
        return a + b
    if op is ArithOp.SUB:
        return a - b
    if op is ArithOp.MUL:
        return a * b
    if not b:
        raise DivisionByZeroError(f"cannot divide {format_coefficient(a)} by zero")
    return a / b


def _compose(poly: ParamPoly, k_image: Any, p0_image: Any, zero: Any) -> Any:
    """Evaluate a polynomial in (k, p0) at arbitrary images of the generators."""
    k_powers: dict[int, Any] = {}
    p0_powers: dict[int, Any] = {}
    total = zero
    for (a, b), coeff in poly.terms():
        if a not in k_powers:
            k_powers[a] = k_image**a
        if b not in p0_powers:
            p0_powers[b] = p0_image**b
        total += k_powers[a] * p0_powers[b] * coeff
    return total


def substitute(f: RatFunc, k_image: RatFunc, p0_image: RatFunc) -> RatFunc:
    """Apply the homomorphism k -> k_image, p0 -> p0_image to a rational function.

    Raises:
        PoleError: if the image of the denominator is identically zero.
    """
    zero = PARAM_FIELD.zero
    denominator = _compose(f.denom, k_image, p0_image, zero)
    if not denominator:
        raise PoleError(
            f"denominator {format_poly(f.denom)} vanishes under "
            f"k -> {format_coefficient(k_image)}, p0 -> {format_coefficient(p0_image)}"
        )
    return _compose(f.numer, k_image, p0_image, zero) / denominator


def eval_at(f: RatFunc, k_value: Any, p0_value: Any) -> BigRational:
    """Evaluate a rational function at a rational point."""
    k_value, p0_value = to_rational(k_value), to_rational(p0_value)
    denominator = _compose(f.denom, k_value, p0_value, QQ.zero)
    if not denominator:
        raise PoleError(
            f"pole at k={k_value}, p0={p0_value}: denominator {format_poly(f.denom)} vanishes"
        )
    return _compose(f.numer, k_value, p0_value, QQ.zero) / denominator


def invert_k(f: RatFunc) -> RatFunc:
    """The field automorphism k -> 1/k fixing p0."""
    return substitute(f, 1 / K, P0)


def as_rational(c: Coefficient) -> BigRational | None:
    """Return the value of a constant coefficient, or None if it depends on k or p0."""
    if not isinstance(c, FracElement):
        return c
    if c.numer.is_ground and c.denom.is_ground:
        return c.numer.LC / c.denom.LC
    return None


def is_p0_free(c: Coefficient) -> bool:
    if not isinstance(c, FracElement):
        return True
    return c.numer.degree(1) <= 0 and c.denom.degree(1) <= 0


def _format_monomial(exponents: tuple[int, int]) -> str:
    factors = []
    for name, power in zip(("k", "p0"), exponents):
        if power == 1:
            factors.append(name)
        elif power > 1:
            factors.append(f"{name}^{power}")
    return "*".join(factors)


def format_poly(poly: ParamPoly) -> str:
    """Sparse ``coeff*k^a*p0^b`` term list in descending graded-lex order."""
    if not poly:
        return "0"
    pieces = []
    for exponents, coeff in poly.terms():
        magnitude = -coeff if coeff < 0 else coeff
        monomial = _format_monomial(exponents)
        if not monomial:
            body = str(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{magnitude}*{monomial}"
        if not pieces:
            pieces.append(f"-{body}" if coeff < 0 else body)
        else:
            pieces.append(f" - {body}" if coeff < 0 else f" + {body}")
    return "".join(pieces)


def format_ratfunc(f: RatFunc) -> str:
    """Canonical text: denominator made monic w.r.t. its graded-lex leading term."""
    numer, denom = f.numer, f.denom
    leading = denom.LC
    if leading != 1:
        numer, denom = numer.quo_ground(leading), denom.quo_ground(leading)
    numer_text = format_poly(numer)
    if denom == 1:
        return numer_text
    if len(numer) > 1:
        numer_text = f"({numer_text})"
    denom_text = format_poly(denom)
    if len(denom) > 1:
        denom_text = f"({denom_text})"
    return f"{numer_text} / {denom_text}"


def format_coefficient(c: Coefficient) -> str:
    if isinstance(c, FracElement):
        return format_ratfunc(c)
    return str(c)


def parse_ratfunc(text: str) -> RatFunc:
    """Read the text format back, accepting ``^`` or ``**`` for powers."""
    try:
        expr = sympify(text.replace("^", "**"), locals={"k": K_SYMBOL, "p0": P0_SYMBOL})
        return PARAM_FIELD.from_expr(expr)
    except (SympifyError, ValueError, TypeError, CoercionFailed, ZeroDivisionError) as exc:
        raise ParseError(f"cannot read {text!r} as a rational function of k and p0") from exc


@dataclass(frozen=True)
class CoefficientField:
    """Where coefficients live: Q(k, p0) symbolically, or Q with k and p0 fixed."""

    k_value: BigRational | None = None
    p0_value: BigRational | None = None

    @classmethod
    def symbolic(cls) -> "CoefficientField":
        return cls()

    @classmethod
    def numeric(cls, k_value: Any, p0_value: Any) -> "CoefficientField":
        return cls(to_rational(k_value), to_rational(p0_value))

    @property
    def is_symbolic(self) -> bool:
        return self.k_value is None

    @property
    def domain(self):
        return PARAM_DOMAIN if self.is_symbolic else QQ

    @property
    def k(self) -> Coefficient:
        return K if self.is_symbolic else self.k_value

    @property
    def p0(self) -> Coefficient:
        return P0 if self.is_symbolic else self.p0_value

    @property
    def zero(self) -> Coefficient:
        return PARAM_FIELD.zero if self.is_symbolic else QQ.zero

    @property
    def one(self) -> Coefficient:
        return PARAM_FIELD.one if self.is_symbolic else QQ.one

    def __call__(self, value: Any) -> Coefficient:
        """Coerce ints, rationals, texts and Q(k, p0) elements into this field."""
        if isinstance(value, str):
            value = parse_ratfunc(value)
        if self.is_symbolic:
            return PARAM_FIELD(value)
        if isinstance(value, FracElement):
            return eval_at(value, self.k_value, self.p0_value)
        return to_rational(value)

    @lru_cache(maxsize=4096)
    def from_p0_poly(self, poly: PolyElement) -> Coefficient:
        """Map a polynomial of the univariate ring Q[p0] into the field."""
        total = self.zero
        p0 = self.p0
        for (power,), coeff in poly.terms():
            total += p0**power * coeff
        return total

    def specialize_p0(self, c: Coefficient, value: int) -> Coefficient:
        """Set p0 to an integer, keeping k symbolic."""
        if self.is_symbolic:
            return substitute(c, K, PARAM_FIELD(value))
        if self.p0_value != value:
            raise PreconditionError(
                f"numeric field has p0={self.p0_value}, cannot specialize to p0={value}"
            )
        return c

    def describe(self) -> str:
        if self.is_symbolic:
            return "symbolic"
        return f"numeric(k={self.k_value},p0={self.p0_value})"


SYMBOLIC = CoefficientField.symbolic()
