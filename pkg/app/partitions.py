"""Partitions, pairs of partitions, dominance and the diagram geometry of the Pieri rule."""
from dataclasses import dataclass
from functools import lru_cache
from itertools import zip_longest
from typing import Any, Iterable, Mapping, NamedTuple

from sympy.utilities.iterables import partitions as integer_partitions

from .errors import InvalidBoxError

Partition = tuple[int, ...]
# (row, column) for a box of a single partition, (column, row) inside figure Y.
Box = tuple[int, int]


def make_partition(parts: Iterable[int]) -> Partition:
    """Validate and normalize a partition; trailing zeros are dropped."""
    values = [int(p) for p in parts]
    while values and values[-1] == 0:
        values.pop()
    if any(p <= 0 for p in values):
        raise ValueError(f"partition parts must be positive: {values}")
    if any(a < b for a, b in zip(values, values[1:])):
        raise ValueError(f"partition parts must be weakly decreasing: {values}")
    return tuple(values)


def part(lam: Partition, i: int) -> int:
    """λ_i with 1-based rows, zero beyond the length."""
    return lam[i - 1] if 1 <= i <= len(lam) else 0


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for row in lam if row >= j) for j in range(1, lam[0] + 1))


def boxes(lam: Partition) -> list[Box]:
    """Boxes (i, j) of the Young diagram, row by row."""
    return [(i, j) for i, row in enumerate(lam, start=1) for j in range(1, row + 1)]


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n in decreasing lexicographic order."""
    found = []
    for multiplicities in integer_partitions(n):
        found.append(
            tuple(sorted((p for p, m in multiplicities.items() for _ in range(m)), reverse=True))
        )
    return tuple(sorted(found, reverse=True))


def prefix_dominated(small: Partition, big: Partition) -> bool:
    """Partial sums of ``small`` never exceed those of ``big``."""
    total_small = total_big = 0
    for s, b in zip_longest(small, big, fillvalue=0):
        total_small += s
        total_big += b
        if total_small > total_big:
            return False
    return True


class BiPartition(NamedTuple):
    """An index (λ, μ) of the Laurent monomial and Jack–Laurent bases."""

    lam: Partition = ()
    mu: Partition = ()

    @property
    def weight(self) -> int:
        return sum(self.lam) - sum(self.mu)

    @property
    def total(self) -> int:
        return sum(self.lam) + sum(self.mu)

    def star(self) -> "BiPartition":
        return BiPartition(self.mu, self.lam)

    def sort_key(self) -> tuple:
        # Descending on this key is a linear extension of the dominance order.
        return (self.total, self.lam, self.mu)

    def __str__(self) -> str:
        return f"({','.join(map(str, self.lam))}|{','.join(map(str, self.mu))})"


def bipartition(lam: Iterable[int] = (), mu: Iterable[int] = ()) -> BiPartition:
    return BiPartition(make_partition(lam), make_partition(mu))


def dominance_leq(a: BiPartition, b: BiPartition) -> bool:
    """The partial order ⪯ on pairs: equal weight and componentwise prefix dominance."""
    return (
        a.weight == b.weight
        and prefix_dominated(a.lam, b.lam)
        and prefix_dominated(a.mu, b.mu)
    )


def pairs_up_to(max_size: int) -> list[BiPartition]:
    """Every pair with |λ| ≤ max_size and |μ| ≤ max_size, in canonical order."""
    pairs = [
        BiPartition(lam, mu)
        for d in range(max_size + 1)
        for lam in partitions_of(d)
        for e in range(max_size + 1)
        for mu in partitions_of(e)
    ]
    return sorted(pairs, key=BiPartition.sort_key)


@lru_cache(maxsize=None)
def ladder(top: BiPartition) -> tuple[BiPartition, ...]:
    """All pairs ⪯ top, the first element being top itself.

    The order is a linear extension of dominance: anything that precedes an
    element is either above it or incomparable.
    """
    found = []
    for d in range(sum(top.lam) + 1):
        e = d - top.weight
        if e < 0 or e > sum(top.mu):
            continue
        lams = [lam for lam in partitions_of(d) if prefix_dominated(lam, top.lam)]
        mus = [mu for mu in partitions_of(e) if prefix_dominated(mu, top.mu)]
        found.extend(BiPartition(lam, mu) for lam in lams for mu in mus)
    return tuple(sorted(found, key=BiPartition.sort_key, reverse=True))


def add_box_candidates(lam: Partition) -> list[tuple[Partition, Box]]:
    """Every λ̃ = λ + □ together with the added box (row, column)."""
    candidates = []
    for i in range(1, len(lam) + 2):
        j = part(lam, i) + 1
        if i == 1 or part(lam, i - 1) >= j:
            grown = list(lam) + [0] * (i - len(lam))
            grown[i - 1] = j
            candidates.append((tuple(grown), (i, j)))
    return candidates


def remove_box_candidates(mu: Partition) -> list[tuple[Partition, Box]]:
    """Every μ̃ = μ − □ together with the removed box (row, column)."""
    candidates = []
    for i in range(1, len(mu) + 1):
        if part(mu, i + 1) < mu[i - 1]:
            shrunk = list(mu)
            shrunk[i - 1] -= 1
            candidates.append((make_partition(shrunk), (i, mu[i - 1])))
    return candidates


def added_box(lam_tilde: Partition, lam: Partition) -> Box:
    for grown, box in add_box_candidates(lam):
        if grown == tuple(lam_tilde):
            return box
    raise InvalidBoxError(f"{lam_tilde} is not {lam} plus one box")


def removed_box(mu_tilde: Partition, mu: Partition) -> Box:
    for shrunk, box in remove_box_candidates(mu):
        if shrunk == tuple(mu_tilde):
            return box
    raise InvalidBoxError(f"{mu_tilde} is not {mu} minus one box")


@dataclass(frozen=True)
class DiagramY:
    """Figure Y: Y_λ in the upper right, Y_{-μ} in the lower left, Π upper left.

    Boxes are (column j, row i); the row lengths y_i and column lengths y'_j
    are signed, negative on the μ side.
    """

    lam: Partition
    mu: Partition
    rows: Mapping[int, int]
    cols: Mapping[int, int]
    y_lam: frozenset[Box]
    y_mu: frozenset[Box]
    rectangle: frozenset[Box]

    def y(self, i: int) -> int:
        return self.rows.get(i, 0)

    def y_prime(self, j: int) -> int:
        return self.cols.get(j, 0)

    def content(self, box: Box, x: Any, k: Any) -> Any:
        """c_Y(□, x) = y_i − j − k(y'_j − i) + x."""
        j, i = box
        return self.y(i) - j - k * (self.y_prime(j) - i) + x


def build_figure_y(lam: Iterable[int], mu: Iterable[int]) -> DiagramY:
    lam, mu = make_partition(lam), make_partition(mu)
    rows = {i: row for i, row in enumerate(lam, start=1)}
    rows.update({-i: -row for i, row in enumerate(mu, start=1)})
    cols = {j: col for j, col in enumerate(conjugate(lam), start=1)}
    cols.update({-j: -col for j, col in enumerate(conjugate(mu), start=1)})
    y_lam = frozenset((j, i) for i, j in boxes(lam))
    y_mu = frozenset((-j, -i) for i, j in boxes(mu))
    width = mu[0] if mu else 0
    rectangle = frozenset(
        (j, i) for i in range(1, len(lam) + 1) for j in range(-width, 0)
    )
    return DiagramY(lam, mu, rows, cols, y_lam, y_mu, rectangle)


class PieriRegions(NamedTuple):
    pi1: frozenset[Box] = frozenset()
    pi2: frozenset[Box] = frozenset()
    pi3: frozenset[Box] = frozenset()


def region_sets(
    diagram: DiagramY,
    box: Box,
    kind: str,
    rectangle: tuple[int, int] | None = None,
) -> PieriRegions:
    """The regions π₁ (box added to λ) or π₂, π₃ (box removed from μ).

    ``box`` is (row, column) in the partition being changed.  ``rectangle``
    enlarges the rows of Π to (up, down); the defaults are (l(λ), l(μ)).
    """
    i, j = box
    if kind == "add":
        if j != part(diagram.lam, i) + 1 or (i > 1 and part(diagram.lam, i - 1) < j):
            raise InvalidBoxError(f"box {box} cannot be added to {diagram.lam}")
        return PieriRegions(pi1=frozenset((j, r) for r in range(1, i)))
    if kind == "remove":
        if j != part(diagram.mu, i) or part(diagram.mu, i + 1) >= j:
            raise InvalidBoxError(f"box {box} cannot be removed from {diagram.mu}")
        up, down = rectangle or (len(diagram.lam), len(diagram.mu))
        if up < len(diagram.lam) or down < len(diagram.mu):
            raise InvalidBoxError(f"rectangle {rectangle} does not contain the diagram")
        column = -j
        return PieriRegions(
            pi2=frozenset((column, r) for r in range(-down, -i)),
            pi3=frozenset((column, r) for r in range(1, up + 1)),
        )
    raise ValueError(f"unknown region kind {kind!r}")
