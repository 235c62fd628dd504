"""Pieri rule for Jack–Laurent functions: p_{±1}·P_{λ,μ} in closed form."""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .errors import InvalidBoxError, ResonanceError
from .exact_arith import SYMBOLIC, Coefficient, CoefficientField
from .partitions import (
    BiPartition,
    DiagramY,
    added_box,
    add_box_candidates,
    build_figure_y,
    conjugate,
    make_partition,
    part,
    region_sets,
    remove_box_candidates,
    removed_box,
)

logger = logging.getLogger(__name__)


class PieriKind(str, Enum):
    ADDED_TO_LAM = "added-to-lam"
    REMOVED_FROM_MU = "removed-from-mu"
    ADDED_TO_MU = "added-to-mu"
    REMOVED_FROM_LAM = "removed-from-lam"


@dataclass(frozen=True)
class PieriTerm:
    target: BiPartition
    coeff: Coefficient
    kind: PieriKind


def _ratio(numerators: list, denominators: list, field: CoefficientField) -> Coefficient:
    value = field.one
    for num in numerators:
        value = value * num
    for den in denominators:
        if not den:
            raise ResonanceError("a Pieri coefficient has a vanishing denominator")
        value = value / den
    return value


def c_lambda(lam, j: int, i: int, x, field: CoefficientField) -> Coefficient:
    """c_λ(j, i; x) = λ_i − j − k(λ'_j − i) + x."""
    return part(lam, i) - j - field.k * (part(conjugate(lam), j) - i) + x


def c_pair(lam, mu, j: int, i: int, x, field: CoefficientField) -> Coefficient:
    """c_{λμ}(j, i; x) = λ_i + j + k(μ'_j + i) + x."""
    return part(lam, i) + j + field.k * (part(conjugate(mu), j) + i) + x


def v_add(
    lam_tilde: Iterable[int], lam: Iterable[int], mu: Iterable[int], field: CoefficientField = SYMBOLIC
) -> Coefficient:
    """Coefficient of P_{λ̃,μ} in p_1·P_{λ,μ}; it does not depend on μ."""
    lam = make_partition(lam)
    i, j = added_box(make_partition(lam_tilde), lam)
    k = field.k
    numerators, denominators = [], []
    for r in range(1, i):
        numerators += [c_lambda(lam, j, r, 1, field), c_lambda(lam, j, r, -2 * k, field)]
        denominators += [c_lambda(lam, j, r, -k, field), c_lambda(lam, j, r, 1 - k, field)]
    return _ratio(numerators, denominators, field)


def v_remove(
    mu_tilde: Iterable[int], lam: Iterable[int], mu: Iterable[int], field: CoefficientField = SYMBOLIC
) -> Coefficient:
    """Coefficient of P_{λ,μ̃} in p_1·P_{λ,μ}, μ̃ = μ minus the box (i, j)."""
    lam, mu = make_partition(lam), make_partition(mu)
    i, j = removed_box(make_partition(mu_tilde), mu)
    k, p0 = field.k, field.p0
    r_lam, s_mu = len(lam), len(mu)
    numerators, denominators = [], []
    for r in range(i + 1, s_mu + 1):
        numerators += [c_lambda(mu, j, r, 1 + k, field), c_lambda(mu, j, r, -k, field)]
        denominators += [c_lambda(mu, j, r, 1, field), c_lambda(mu, j, r, 0, field)]
    for r in range(1, r_lam + 1):
        numerators += [
            c_pair(lam, mu, j, r, -1 - k * (p0 + 2), field),
            c_pair(lam, mu, j, r, -k * p0, field),
        ]
        denominators += [
            c_pair(lam, mu, j, r, -1 - k * (p0 + 1), field),
            c_pair(lam, mu, j, r, -k * (p0 + 1), field),
        ]
    column = part(conjugate(mu), j)
    numerators += [
        j - 1 + k * (r_lam + column - p0 - 1),
        j + k * (column - s_mu),
    ]
    denominators += [
        j + k * (r_lam + column - p0),
        j - 1 + k * (column - s_mu - 1),
    ]
    return _ratio(numerators, denominators, field)


def v_diagrammatic(
    target: BiPartition,
    lam: Iterable[int],
    mu: Iterable[int],
    field: CoefficientField = SYMBOLIC,
    rectangle: tuple[int, int] | None = None,
) -> Coefficient:
    """The same coefficients read off figure Y through c_Y.

    ``rectangle`` = (up, down) replaces l(λ) and l(μ) in the height of Π; the
    value is independent of it.
    """
    lam, mu = make_partition(lam), make_partition(mu)
    diagram = build_figure_y(lam, mu)
    k, p0 = field.k, field.p0
    if target.mu == mu:
        box = added_box(target.lam, lam)
        regions = region_sets(diagram, box, "add")
        numerators, denominators = [], []
        for cell in sorted(regions.pi1):
            numerators += [diagram.content(cell, -2 * k, k), diagram.content(cell, 1, k)]
            denominators += [diagram.content(cell, -k, k), diagram.content(cell, 1 - k, k)]
        return _ratio(numerators, denominators, field)
    if target.lam == lam:
        box = removed_box(target.mu, mu)
        return _removal_from_figure(diagram, box, field, rectangle)
    raise InvalidBoxError(f"{target} is not reached from ({lam}, {mu}) by one box")


def _removal_from_figure(
    diagram: DiagramY, box, field: CoefficientField, rectangle: tuple[int, int] | None
) -> Coefficient:
    k, p0 = field.k, field.p0
    up, down = rectangle or (len(diagram.lam), len(diagram.mu))
    regions = region_sets(diagram, box, "remove", (up, down))
    numerators, denominators = [], []
    for cell in sorted(regions.pi2):
        numerators += [diagram.content(cell, -1 - k, k), diagram.content(cell, k, k)]
        denominators += [diagram.content(cell, -1, k), diagram.content(cell, 0, k)]
    for cell in sorted(regions.pi3):
        numerators += [
            diagram.content(cell, -1 - k * (p0 + 2), k),
            diagram.content(cell, -k * p0, k),
        ]
        denominators += [
            diagram.content(cell, -1 - k * (p0 + 1), k),
            diagram.content(cell, -k * (p0 + 1), k),
        ]
    column = -box[1]
    height = diagram.y_prime(column)
    numerators += [
        column + 1 + k * (height - up + p0 + 1),
        column + k * (height + down),
    ]
    denominators += [
        column + k * (height - up + p0),
        column + 1 + k * (height + down + 1),
    ]
    return _ratio(numerators, denominators, field)


def pieri_expand(
    lam: Iterable[int], mu: Iterable[int] = (), field: CoefficientField = SYMBOLIC
) -> list[PieriTerm]:
    """p_1·P_{λ,μ} = Σ V·P_{λ̃,μ} + Σ V·P_{λ,μ̃}, zero coefficients omitted."""
    lam, mu = make_partition(lam), make_partition(mu)
    terms = []
    for grown, _ in add_box_candidates(lam):
        coeff = v_add(grown, lam, mu, field)
        if coeff:
            terms.append(PieriTerm(BiPartition(grown, mu), coeff, PieriKind.ADDED_TO_LAM))
    for shrunk, _ in remove_box_candidates(mu):
        coeff = v_remove(shrunk, lam, mu, field)
        if coeff:
            terms.append(PieriTerm(BiPartition(lam, shrunk), coeff, PieriKind.REMOVED_FROM_MU))
    return terms


_STARRED = {
    PieriKind.ADDED_TO_LAM: PieriKind.ADDED_TO_MU,
    PieriKind.REMOVED_FROM_MU: PieriKind.REMOVED_FROM_LAM,
}


def pieri_p_minus_one(
    lam: Iterable[int], mu: Iterable[int] = (), field: CoefficientField = SYMBOLIC
) -> list[PieriTerm]:
    """p_{-1}·P_{λ,μ}, the *-image of p_1·P_{μ,λ}."""
    return [
        PieriTerm(term.target.star(), term.coeff, _STARRED[term.kind])
        for term in pieri_expand(mu, lam, field)
    ]


def classical_pieri_coefficient(
    lam_tilde: Iterable[int], lam: Iterable[int], field: CoefficientField = SYMBOLIC
) -> Coefficient:
    """Jack Pieri coefficient for p_1·P_λ from arm and leg lengths, α = −1/k.

    Product over the boxes s above the new box of b_λ̃(s)/b_λ(s), with
    b(s) = (α·a + l + 1)/(α·a + l + α).
    """
    lam, lam_tilde = make_partition(lam), make_partition(lam_tilde)
    i, j = added_box(lam_tilde, lam)
    alpha = -field.one / field.k
    value = field.one
    for row in range(1, i):
        arm_old = part(lam, row) - j
        arm_new = part(lam_tilde, row) - j
        leg_old = part(conjugate(lam), j) - row
        leg_new = part(conjugate(lam_tilde), j) - row
        b_new = (alpha * arm_new + leg_new + 1) / (alpha * arm_new + leg_new + alpha)
        b_old = (alpha * arm_old + leg_old + 1) / (alpha * arm_old + leg_old + alpha)
        value = value * b_new / b_old
    return value
