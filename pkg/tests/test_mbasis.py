import pytest

from app.mbasis import (
    P0_RING,
    P0_VAR,
    expand_by_set_partitions,
    m_to_p,
    p_product_to_m,
    p_to_m,
)
from app.partitions import bipartition, pairs_up_to
from app.psym import SymFunc, parse_symfunc


def test_p1_p_minus_1_in_monomials():
    """Test p_1 p_{-1} = m_{1,1} + p0."""
    # Act
    expansion = p_product_to_m([1], [1])

    # Assert
    assert expansion == {bipartition([1], [1]): P0_RING.one, bipartition(): P0_VAR}


def test_p1_squared_p_minus_1_in_monomials():
    """Test p_1² p_{-1} = 2m_{11,1} + m_{2,1} + (2p0 − 1)m_1."""
    # Act
    expansion = p_product_to_m([1, 1], [1])

    # Assert
    assert expansion == {
        bipartition([1, 1], [1]): P0_RING(2),
        bipartition([2], [1]): P0_RING.one,
        bipartition([1]): 2 * P0_VAR - 1,
    }


def test_p2_p_minus_1_in_monomials():
    """Test p_2 p_{-1} = m_{2,1} + m_1."""
    assert p_product_to_m([2], [1]) == {
        bipartition([2], [1]): P0_RING.one,
        bipartition([1]): P0_RING.one,
    }


def test_empty_product_is_one():
    """Test the unit of Λ±."""
    assert p_product_to_m([], []) == {bipartition(): P0_RING.one}


@pytest.mark.parametrize("pair", pairs_up_to(3), ids=str)
def test_incremental_expansion_matches_set_partitions(pair):
    """Test the multiplication rule against the set-partition enumeration."""
    assert p_product_to_m(pair.lam, pair.mu) == expand_by_set_partitions(pair.lam, pair.mu)


def test_m_to_p_examples(symbolic):
    """Test m_{1,1} and m_{11,1} in power sums."""
    assert m_to_p([1], [1], symbolic) == parse_symfunc("p_1*p_-1 - p0", symbolic)
    assert m_to_p([1, 1], [1], symbolic) == parse_symfunc(
        "1/2*(p_1^2 - p_2)*p_-1 - (p0-1)*p_1", symbolic
    )


def test_m_to_p_positive_side(symbolic):
    """Test m_{11} = (p_1² − p_2)/2 with no p0 dependence."""
    assert m_to_p([1, 1], [], symbolic) == parse_symfunc("1/2*p_1^2 - 1/2*p_2", symbolic)


def test_p_to_m_inverts_m_to_p(symbolic):
    """Test that the transition matrices are mutually inverse on a rung with p0 terms."""
    # Arrange
    index = bipartition([2, 1], [1])

    # Act
    coefficients = p_to_m(m_to_p(index.lam, index.mu, symbolic))

    # Assert
    assert coefficients == {index: symbolic.one}


def test_numeric_transition(numeric):
    """Test m_{1,1} with p0 fixed."""
    assert m_to_p([1], [1], numeric) == parse_symfunc("p_1*p_-1", numeric) - numeric.p0


def test_p_to_m_rejects_w(symbolic):
    """Test that w is outside the m-basis."""
    with pytest.raises(ValueError):
        p_to_m(SymFunc.w(symbolic))
