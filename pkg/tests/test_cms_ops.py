import pytest

from app.cms_ops import (
    DUALITY_KINDS,
    OperatorKind,
    OperatorSpec,
    apply,
    check_duality,
    check_stable_relation,
    dual_operator,
    momentum,
    scaled_dual_operator,
)
from app.errors import DomainViolationError
from app.exact_arith import K, P0
from app.psym import SymFunc, parse_symfunc


def test_laurent_operator_on_p1_p_minus_1(symbolic):
    """Test the Laurent operator on p_1 p_{-1}, including the p_0 insertion."""
    # Arrange
    op = OperatorSpec.create(OperatorKind.LAURENT, symbolic)
    f = parse_symfunc("p_1*p_-1", symbolic)

    # Act
    image = apply(op, f)

    # Assert
    assert image == parse_symfunc("(2+2*k-2*k*p0)*p_1*p_-1 - 2*p0", symbolic)


def test_stable_operator_fixes_p1(symbolic):
    """Test that p_1 is an eigenfunction with eigenvalue 1."""
    op = OperatorSpec.create(OperatorKind.TRIG_STABLE, symbolic)
    p1 = SymFunc.generator(symbolic, 1)
    assert apply(op, p1) == p1


def test_rational_operator_lowers_degree_by_two(symbolic):
    """Test the rational operator on p_1 and p_2."""
    # Arrange
    op = OperatorSpec.create(OperatorKind.RATIONAL, symbolic)

    # Act
    image = apply(op, SymFunc.generator(symbolic, 2))

    # Assert
    assert image == SymFunc.constant(symbolic, 2 * P0 - 2 * K * P0 * (P0 - 1))
    assert apply(op, SymFunc.generator(symbolic, 1)) == 0


def test_rebound_p0_is_used_for_p0_insertions(symbolic):
    """Test that a rebound operator inserts its own p0 value."""
    # Arrange
    op = OperatorSpec.create(OperatorKind.RATIONAL, symbolic, p0=3)

    # Act
    image = apply(op, SymFunc.generator(symbolic, 2))

    # Assert
    assert image == SymFunc.constant(symbolic, 6 - 12 * K)


def test_numeric_operator_matches_symbolic_evaluation(symbolic, numeric):
    """Test that numeric mode is symbolic mode evaluated at the fixed point."""
    # Arrange
    text = "p_2*p_-1 + p_1^2"
    symbolic_image = apply(OperatorSpec.create(OperatorKind.LAURENT, symbolic), parse_symfunc(text, symbolic))

    # Act
    numeric_image = apply(OperatorSpec.create(OperatorKind.LAURENT, numeric), parse_symfunc(text, numeric))

    # Assert
    assert numeric_image == symbolic_image.map_coefficients(numeric)


def test_momentum_counts_net_degree(symbolic):
    """Test the trigonometric momentum on Λ±."""
    f = parse_symfunc("p_2*p_-1 + k*p_1*p_-1", symbolic)
    assert momentum("trig", f) == parse_symfunc("p_2*p_-1", symbolic)


def test_rational_momentum_lowers_index(symbolic):
    """Test Σ p_{a-1}∂_a on p_2 and p_1^2."""
    f = parse_symfunc("p_2 + p_1^2", symbolic)
    assert momentum("rational", f) == parse_symfunc("2*p_1 + 2*p0*p_1", symbolic)


@pytest.mark.parametrize(
    "kind",
    [OperatorKind.TRIG_STABLE, OperatorKind.RATIONAL, OperatorKind.BC_RATIONAL],
)
def test_positive_operators_reject_laurent_input(symbolic, kind):
    """Test the domain guard of operators defined on Λ⁺ only."""
    op = OperatorSpec.create(kind, symbolic)
    with pytest.raises(DomainViolationError):
        apply(op, SymFunc.generator(symbolic, -1))
    with pytest.raises(DomainViolationError):
        apply(op, SymFunc.w(symbolic))


def test_extended_operator_on_pure_w(symbolic):
    """Test that w^l is an eigenfunction with eigenvalue p0·l²."""
    op = OperatorSpec.create(OperatorKind.LAURENT_EXT, symbolic)
    assert apply(op, SymFunc.w(symbolic, 2)) == SymFunc.w(symbolic, 2).scale(4 * P0)


def test_dual_bindings(symbolic):
    """Test the parameters of the two dual operators."""
    # Arrange
    op = OperatorSpec.create(OperatorKind.BC_RATIONAL, symbolic, l="1/2")

    # Act
    twisted, scaled = dual_operator(op), scaled_dual_operator(op)

    # Assert
    assert twisted.k == K and twisted.p0 == P0 / K
    assert scaled.k == 1 / K and scaled.p0 == K * P0
    assert scaled.l == (2 / K - 1) / 2


@pytest.mark.parametrize("kind", DUALITY_KINDS)
def test_duality_in_low_degree(kind):
    """Test the k <-> 1/k duality on every monomial of total degree ≤ 2."""
    # Act
    report = check_duality(kind, 2)

    # Assert
    assert report.passed, report.counterexample
    assert report.cases > 0


def test_duality_rejects_operators_without_a_dual():
    """Test that momentum operators have no duality check."""
    with pytest.raises(ValueError):
        check_duality(OperatorKind.MOMENTUM_TRIG, 2)


def test_stable_relation():
    """Test L̃ = L + k(p0 − 1)·P up to degree 3."""
    report = check_stable_relation(3)
    assert report.passed, report.counterexample
