import pytest
from sympy import QQ

from app.errors import DivisionByZeroError, ParseError, PoleError, PreconditionError
from app.exact_arith import (
    K,
    P0,
    PARAM_FIELD,
    ArithOp,
    CoefficientField,
    as_rational,
    eval_at,
    format_coefficient,
    invert_k,
    is_p0_free,
    parse_ratfunc,
    ratfunc_arith,
    substitute,
    to_rational,
)

# Test data
TEST_COEFFICIENT_TEXT = {
    "P(1|1) constant term": "-p0 / (k*p0 - k - 1)",
    "closing ratio": "(k*p0 - k - 1) / (k*p0 - 2*k - 2)",
}


def test_to_rational_accepts_text_and_integers():
    """Test reading rationals from the forms the CLI passes around."""
    # Act & Assert
    assert to_rational("3/2") == QQ(3, 2)
    assert to_rational(-4) == QQ(-4)
    assert to_rational(" 7 ") == QQ(7)


def test_to_rational_rejects_garbage():
    """Test that a non-number is reported as a parse error."""
    with pytest.raises(ParseError):
        to_rational("three halves")


def test_ratfunc_arith_division():
    """Test the four operations and the zero-divisor guard."""
    # Arrange
    a = P0 / (1 + K)
    b = K

    # Act
    quotient = ratfunc_arith(a, b, ArithOp.DIV)

    # Assert
    assert quotient * b == a
    assert ratfunc_arith(a, b, "sub") == a - b
    with pytest.raises(DivisionByZeroError):
        ratfunc_arith(a, PARAM_FIELD.zero, ArithOp.DIV)


def test_zero_division_is_also_a_builtin_zero_division():
    """Test that callers catching ZeroDivisionError still see the error."""
    with pytest.raises(ZeroDivisionError):
        ratfunc_arith(K, PARAM_FIELD.zero, ArithOp.DIV)


def test_normal_form_cancels_common_factors():
    """Test that equal rational functions compare equal after reduction."""
    # Arrange
    f = (K**2 - 1) / (K - 1)

    # Assert
    assert f == K + 1
    assert f.denom == 1


def test_substitute_and_pole():
    """Test k -> -1 on a regular function and on one with a pole there."""
    # Arrange
    regular = P0 / (2 + K)
    singular = P0 / (1 + K)
    minus_one = PARAM_FIELD(-1)

    # Act
    value = substitute(regular, minus_one, P0)

    # Assert
    assert value == P0
    with pytest.raises(PoleError):
        substitute(singular, minus_one, P0)


def test_eval_at_point():
    """Test evaluation at a rational point and at a pole."""
    assert eval_at(P0 / (1 + K), 1, 4) == QQ(2)
    assert eval_at(K * P0 - 1, "1/2", "3") == QQ(1, 2)
    with pytest.raises(PoleError):
        eval_at(1 / (K - P0), 2, 2)


def test_invert_k_is_an_involution():
    """Test that k -> 1/k applied twice is the identity."""
    # Arrange
    f = (1 + 2 * K - K * P0) / (3 + K**2)

    # Assert
    assert invert_k(K) == 1 / K
    assert invert_k(invert_k(f)) == f


def test_as_rational_and_p0_freedom():
    """Test detection of constant and p0-free coefficients."""
    assert as_rational(PARAM_FIELD(5) / 3) == QQ(5, 3)
    assert as_rational(K) is None
    assert is_p0_free(1 / (1 + K))
    assert not is_p0_free(P0 / (1 + K))


@pytest.mark.parametrize("label", sorted(TEST_COEFFICIENT_TEXT))
def test_format_is_canonical(label):
    """Test that the text form is stable under parsing."""
    # Arrange
    text = TEST_COEFFICIENT_TEXT[label]

    # Act
    parsed = parse_ratfunc(text)

    # Assert
    assert format_coefficient(parsed) == text


def test_format_makes_denominator_monic():
    """Test the sign convention of the printed denominator."""
    assert format_coefficient(P0 / (1 + K - K * P0)) == "-p0 / (k*p0 - k - 1)"
    assert format_coefficient(PARAM_FIELD(-1)) == "-1"


def test_parse_ratfunc_rejects_unknown_symbols():
    """Test that only k and p0 may appear."""
    with pytest.raises(ParseError):
        parse_ratfunc("x + k")


def test_numeric_field_coerces_symbolic_values(numeric):
    """Test that Q(k, p0) elements are evaluated at the fixed point."""
    # Arrange
    field = CoefficientField.numeric("1/3", "2")

    # Act
    value = field(P0 / (1 + K))

    # Assert
    assert value == QQ(3, 2)
    assert field("p0 - k") == QQ(5, 3)
    assert numeric.k == QQ(2, 11)


def test_specialize_p0(symbolic, numeric):
    """Test fixing p0 to an integer in both modes."""
    # Act
    value = symbolic.specialize_p0(P0 / (1 + K), 3)

    # Assert
    assert value == 3 / (1 + K)
    with pytest.raises(PreconditionError):
        numeric.specialize_p0(numeric.one, 3)


def test_describe(symbolic, numeric):
    """Test the mode labels stored in the catalog."""
    assert symbolic.describe() == "symbolic"
    assert numeric.describe() == "numeric(k=2/11,p0=5/13)"
