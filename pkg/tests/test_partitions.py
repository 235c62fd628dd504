import pytest

from app.errors import InvalidBoxError
from app.partitions import (
    BiPartition,
    add_box_candidates,
    added_box,
    bipartition,
    build_figure_y,
    conjugate,
    dominance_leq,
    ladder,
    make_partition,
    pairs_up_to,
    partitions_of,
    region_sets,
    remove_box_candidates,
    removed_box,
)

# Test data
FIGURE_LAM = (6, 5, 4, 2, 1)
FIGURE_MU = (7, 3, 2, 1, 1)


def test_make_partition_normalizes_trailing_zeros():
    """Test that trailing zeros are dropped."""
    assert make_partition([2, 1, 0, 0]) == (2, 1)
    assert make_partition([]) == ()


@pytest.mark.parametrize("parts", [[1, 2], [2, -1], [0, 1]])
def test_make_partition_rejects_invalid_parts(parts):
    """Test rejection of increasing or non-positive parts."""
    with pytest.raises(ValueError):
        make_partition(parts)


def test_conjugate():
    """Test transposition of Young diagrams."""
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate(conjugate(FIGURE_LAM)) == FIGURE_LAM
    assert conjugate(()) == ()


def test_partitions_of_in_decreasing_lex_order():
    """Test the canonical enumeration order."""
    assert partitions_of(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    assert partitions_of(0) == ((),)


def test_bipartition_helpers():
    """Test weight, star and text form of a pair."""
    # Arrange
    pair = bipartition([1, 1], [1])

    # Assert
    assert pair.weight == 1
    assert pair.total == 3
    assert pair.star() == BiPartition((1,), (1, 1))
    assert str(pair) == "(1,1|1)"


def test_dominance_requires_equal_weight():
    """Test the partial order on pairs."""
    # Arrange
    top = bipartition([2], [1])

    # Assert
    assert dominance_leq(bipartition([1, 1], [1]), top)
    assert dominance_leq(bipartition([1], []), top)
    assert not dominance_leq(top, bipartition([1], []))
    assert not dominance_leq(bipartition([2], []), top)


def test_ladder_starts_at_top_and_lists_dominated_pairs():
    """Test the triangular support of P_{(1),(1)} and P_{(1,1),(1)}."""
    assert ladder(bipartition([1], [1])) == (bipartition([1], [1]), bipartition())
    assert ladder(bipartition([1, 1], [1])) == (
        bipartition([1, 1], [1]),
        bipartition([1], []),
    )


def test_ladder_is_a_linear_extension_of_dominance():
    """Test that nothing is listed after a pair that dominates it."""
    # Arrange
    steps = ladder(bipartition([2, 1], [2]))

    # Assert
    for position, lower in enumerate(steps):
        for higher in steps[position + 1:]:
            assert not (dominance_leq(lower, higher) and lower != higher)


def test_pairs_up_to_counts():
    """Test the number of pairs with |λ|, |μ| ≤ 2."""
    # 1 + 1 + 2 partitions of 0, 1, 2, so 4 * 4 pairs.
    assert len(pairs_up_to(2)) == 16


def test_box_candidates():
    """Test adding and removing boxes."""
    assert [grown for grown, _ in add_box_candidates((2, 1))] == [(3, 1), (2, 2), (2, 1, 1)]
    assert [shrunk for shrunk, _ in remove_box_candidates((2, 1))] == [(1, 1), (2,)]
    assert added_box((2, 2), (2, 1)) == (2, 2)
    assert removed_box((1, 1), (2, 1)) == (1, 2)
    with pytest.raises(InvalidBoxError):
        added_box((3, 2), (2, 1))
    with pytest.raises(InvalidBoxError):
        removed_box((2, 1), (2, 1))


def test_figure_counts():
    """Test the box counts of figure Y for the reference pair."""
    # Act
    diagram = build_figure_y(FIGURE_LAM, FIGURE_MU)

    # Assert
    assert len(diagram.y_lam) == 18
    assert len(diagram.y_mu) == 14
    assert len(diagram.rectangle) == 35
    assert diagram.y(1) == 6
    assert diagram.y(-1) == -7
    assert diagram.y_prime(1) == 5
    assert diagram.y_prime(-1) == -5


def test_region_above_added_box():
    """Test π₁ when a box is added in row 4, column 3."""
    # Arrange
    diagram = build_figure_y(FIGURE_LAM, FIGURE_MU)

    # Act
    regions = region_sets(diagram, (4, 3), "add")

    # Assert
    assert regions.pi1 == frozenset({(3, 1), (3, 2), (3, 3)})
    assert not regions.pi2 and not regions.pi3


def test_regions_of_removed_box():
    """Test π₂ and π₃ when the box in row 2, column 3 of μ is removed."""
    # Arrange
    diagram = build_figure_y(FIGURE_LAM, FIGURE_MU)

    # Act
    regions = region_sets(diagram, (2, 3), "remove")

    # Assert
    assert regions.pi2 == frozenset({(-3, -5), (-3, -4), (-3, -3)})
    assert len(regions.pi3) == 5


def test_regions_reject_boxes_that_do_not_fit():
    """Test that a box inside the diagram cannot be added or removed."""
    diagram = build_figure_y(FIGURE_LAM, FIGURE_MU)
    with pytest.raises(InvalidBoxError):
        region_sets(diagram, (1, 3), "add")
    with pytest.raises(InvalidBoxError):
        region_sets(diagram, (1, 3), "remove")
    with pytest.raises(InvalidBoxError):
        region_sets(diagram, (2, 3), "remove", rectangle=(4, 5))
