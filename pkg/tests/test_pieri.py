import pytest

from app.errors import InvalidBoxError, ResonanceError
from app.exact_arith import K, P0, CoefficientField, eval_at
from app.jack_laurent import expand_in_jack_basis, jack_laurent
from app.partitions import bipartition, pairs_up_to
from app.pieri import (
    PieriKind,
    classical_pieri_coefficient,
    pieri_expand,
    pieri_p_minus_one,
    v_add,
    v_diagrammatic,
    v_remove,
)
from app.psym import SymFunc

# Test data
SMALL_PAIRS = pairs_up_to(1) + [
    bipartition([1, 1], [1]),
    bipartition([2], [1]),
    bipartition([1], [2]),
    bipartition([], [2, 1]),
    bipartition([1], [2, 1]),
]
# μ with a removable box above its last row
STACKED_REMOVAL_DATA = {"lam": [], "mu": [2, 1], "mu_tilde": [1, 1]}


def test_add_coefficient_examples(symbolic):
    """Test the coefficients of P_(1,1) in p_1·P_(1) and of P_(2,1) in p_1·P_(2)."""
    assert v_add([1, 1], [1], [], symbolic) == 2 / (1 - K)
    assert v_add([2, 1], [2], [], symbolic) == 2 * (1 - 2 * K) / ((1 - K) * (2 - K))
    assert v_add([2], [1], [], symbolic) == 1


def test_add_coefficient_does_not_depend_on_mu(symbolic):
    """Test that adding to λ ignores μ."""
    assert v_add([1, 1], [1], [2, 1], symbolic) == v_add([1, 1], [1], [], symbolic)


def test_remove_coefficient_example(symbolic):
    """Test the coefficient of P_{(1),∅} in p_1·P_{(1),(1)}."""
    expected = (
        (1 - K * P0) * (2 + 2 * K - K * P0)
        / ((1 + K - K * P0) * (2 + K - K * P0))
        * (P0 - 1) / (1 + 2 * K - K * P0)
    )
    assert v_remove([], [1], [1], symbolic) == expected


def test_remove_coefficient_reduces_to_monomials_at_k_zero(symbolic):
    """Test p_1·m_{1,1} = … + (p0 − 1)m_1 at k = 0."""
    assert eval_at(v_remove([], [1], [1], symbolic), 0, 7) == 6


@pytest.mark.parametrize("pair", SMALL_PAIRS, ids=str)
def test_pieri_expansion_matches_basis_expansion(symbolic, pair):
    """Test the closed form against expanding p_1·P_{λ,μ} in the P basis."""
    # Arrange
    product = SymFunc.generator(symbolic, 1) * jack_laurent(pair.lam, pair.mu, symbolic).p_form

    # Act
    terms = pieri_expand(pair.lam, pair.mu, symbolic)

    # Assert
    assert expand_in_jack_basis(product) == {term.target: term.coeff for term in terms}


@pytest.mark.parametrize("pair", SMALL_PAIRS, ids=str)
def test_p_minus_one_expansion(symbolic, pair):
    """Test p_{-1}·P_{λ,μ} through the * symmetry."""
    # Arrange
    product = SymFunc.generator(symbolic, -1) * jack_laurent(pair.lam, pair.mu, symbolic).p_form

    # Act
    terms = pieri_p_minus_one(pair.lam, pair.mu, symbolic)

    # Assert
    assert expand_in_jack_basis(product) == {term.target: term.coeff for term in terms}
    assert {term.kind for term in terms} <= {PieriKind.ADDED_TO_MU, PieriKind.REMOVED_FROM_LAM}


def test_remove_coefficient_above_the_last_row(symbolic):
    """Test removing the box (1, 2) of μ = (2,1), where the product over lower rows is not empty."""
    # Arrange
    data = STACKED_REMOVAL_DATA
    product = SymFunc.generator(symbolic, 1) * jack_laurent(data["lam"], data["mu"], symbolic).p_form
    target = bipartition(data["lam"], data["mu_tilde"])

    # Act
    coefficient = v_remove(data["mu_tilde"], data["lam"], data["mu"], symbolic)

    # Assert
    assert coefficient == expand_in_jack_basis(product)[target]
    assert v_diagrammatic(target, data["lam"], data["mu"], symbolic) == coefficient


@pytest.mark.slow
@pytest.mark.parametrize("pair", pairs_up_to(3), ids=str)
def test_pieri_expansion_matches_basis_expansion_up_to_three(symbolic, pair):
    """Test the closed form against the P-basis expansion for every |λ| + |μ| ≤ 3."""
    # Arrange
    product = SymFunc.generator(symbolic, 1) * jack_laurent(pair.lam, pair.mu, symbolic).p_form

    # Act
    terms = pieri_expand(pair.lam, pair.mu, symbolic)

    # Assert
    assert expand_in_jack_basis(product) == {term.target: term.coeff for term in terms}


@pytest.mark.parametrize("pair", pairs_up_to(3), ids=str)
def test_diagrammatic_form_agrees(symbolic, pair):
    """Test the figure-Y coefficients against the coordinate ones."""
    for term in pieri_expand(pair.lam, pair.mu, symbolic):
        assert v_diagrammatic(term.target, pair.lam, pair.mu, symbolic) == term.coeff


def test_diagrammatic_removal_ignores_rectangle(symbolic):
    """Test that enlarging Π leaves the removal coefficient unchanged."""
    # Arrange
    target = bipartition([2, 1], [1])
    baseline = v_diagrammatic(target, [2, 1], [2], symbolic)

    # Act & Assert
    for rectangle in [(3, 1), (2, 3), (4, 4)]:
        assert v_diagrammatic(target, [2, 1], [2], symbolic, rectangle=rectangle) == baseline


def test_diagrammatic_removal_ignores_rectangle_for_stacked_mu(symbolic):
    """Test rectangle invariance when the removed box of μ = (2,1) sits above another row."""
    # Arrange
    target = bipartition([1], [1, 1])
    baseline = v_diagrammatic(target, [1], [2, 1], symbolic)

    # Act & Assert
    assert baseline == v_remove([1, 1], [1], [2, 1], symbolic)
    for rectangle in [(2, 3), (3, 4)]:
        assert v_diagrammatic(target, [1], [2, 1], symbolic, rectangle=rectangle) == baseline


def test_diagrammatic_rejects_unreachable_target(symbolic):
    """Test that a target two boxes away is rejected."""
    with pytest.raises(InvalidBoxError):
        v_diagrammatic(bipartition([3], [1]), [1], [1], symbolic)


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (2, 1), (3,)], ids=str)
def test_classical_pieri_reduction(symbolic, lam):
    """Test that μ = ∅ reproduces the Jack Pieri coefficients."""
    for term in pieri_expand(lam, (), symbolic):
        assert term.kind is PieriKind.ADDED_TO_LAM
        assert classical_pieri_coefficient(term.target.lam, lam, symbolic) == term.coeff


def test_vanishing_denominator_is_a_resonance():
    """Test that k = 1 makes the coefficient of P_(1,1) in p_1·P_(1) singular."""
    with pytest.raises(ResonanceError):
        v_add([1, 1], [1], [], CoefficientField.numeric(1, 3))
