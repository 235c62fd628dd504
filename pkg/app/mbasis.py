"""Monomial Laurent symmetric functions m_{λ,μ} and their transition to power sums.

Coefficients of the transition are polynomials in p0 with rational
coefficients; they are computed once in Q[p0] and then mapped into whatever
CoefficientField the caller works in.
"""
import logging
from collections import Counter, defaultdict
from functools import lru_cache
from math import factorial
from typing import Iterable

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError
from sympy.polys.rings import PolyElement, ring
from sympy.utilities.iterables import multiset_partitions

from .errors import SingularTransitionError
from .exact_arith import Coefficient, CoefficientField
from .partitions import BiPartition, Partition, make_partition, partitions_of
from .psym import PMonomial, SymFunc, power_sum_monomial

logger = logging.getLogger(__name__)

P0_RING, P0_VAR = ring("p0", QQ)

MExpansion = dict[BiPartition, PolyElement]


@lru_cache(maxsize=None)
def _power_sum_action(source: BiPartition, a: int) -> tuple[tuple[BiPartition, PolyElement], ...]:
    """p_a · m_source = Σ #(v + a in ψ) · m_ψ, ψ obtained by moving one entry v to v + a."""
    values = sorted(set(source.lam) | {-m for m in source.mu} | {0}, reverse=True)
    image = []
    for v in values:
        lam, mu = list(source.lam), list(source.mu)
        if v > 0:
            lam.remove(v)
        elif v < 0:
            mu.remove(-v)
        moved = v + a
        if moved > 0:
            lam.append(moved)
        elif moved < 0:
            mu.append(-moved)
        target = BiPartition(tuple(sorted(lam, reverse=True)), tuple(sorted(mu, reverse=True)))
        if moved == 0:
            # zero entries of ψ: p0 − l(λ̃) − l(μ̃)
            count = P0_VAR - len(target.lam) - len(target.mu)
        elif moved > 0:
            count = P0_RING(target.lam.count(moved))
        else:
            count = P0_RING(target.mu.count(-moved))
        image.append((target, count))
    return tuple(image)


@lru_cache(maxsize=None)
def _product_expansion(alpha: Partition, beta: Partition) -> tuple[tuple[BiPartition, PolyElement], ...]:
    if beta:
        previous, a = _product_expansion(alpha, beta[:-1]), -beta[-1]
    elif alpha:
        previous, a = _product_expansion(alpha[:-1], ()), alpha[-1]
    else:
        return ((BiPartition(), P0_RING.one),)
    expansion: dict[BiPartition, PolyElement] = defaultdict(lambda: P0_RING.zero)
    for source, coeff in previous:
        for target, count in _power_sum_action(source, a):
            expansion[target] += coeff * count
    return tuple(
        sorted(
            ((bp, c) for bp, c in expansion.items() if c),
            key=lambda item: item[0].sort_key(),
            reverse=True,
        )
    )


def p_product_to_m(alpha: Iterable[int], beta: Iterable[int] = ()) -> MExpansion:
    """Expansion of p_α p_{-β} in the m-basis with Q[p0] coefficients."""
    return dict(_product_expansion(make_partition(alpha), make_partition(beta)))


def expand_by_set_partitions(alpha: Iterable[int], beta: Iterable[int] = ()) -> MExpansion:
    """The same expansion by enumerating set partitions of the signed parts.

    A block with nonzero exponent sum becomes a part of the target; the t0
    blocks summing to zero contribute (p0 − t1)(p0 − t1 − 1)…, t1 being the
    number of nonzero blocks.
    """
    parts = [a for a in make_partition(alpha)] + [-b for b in make_partition(beta)]
    if not parts:
        return {BiPartition(): P0_RING.one}
    expansion: dict[BiPartition, PolyElement] = defaultdict(lambda: P0_RING.zero)
    for blocks in multiset_partitions(len(parts)):
        sums = [sum(parts[t] for t in block) for block in blocks]
        nonzero = [s for s in sums if s]
        zero_blocks = len(sums) - len(nonzero)
        coeff = P0_RING.one
        for s in range(zero_blocks):
            coeff *= P0_VAR - len(nonzero) - s
        for multiplicity in Counter(nonzero).values():
            coeff *= factorial(multiplicity)
        target = BiPartition(
            tuple(sorted((s for s in nonzero if s > 0), reverse=True)),
            tuple(sorted((-s for s in nonzero if s < 0), reverse=True)),
        )
        expansion[target] += coeff
    return {bp: c for bp, c in expansion.items() if c}


@lru_cache(maxsize=None)
def _top_rung_inverse(d: int, e: int) -> tuple[tuple[BiPartition, ...], list[list]]:
    """Inverse of the constant block sending p_α p_{-β} to m_{λ,μ} with |α|=|λ|=d, |β|=|μ|=e."""
    basis = tuple(BiPartition(a, b) for a in partitions_of(d) for b in partitions_of(e))
    position = {bp: i for i, bp in enumerate(basis)}
    size = len(basis)
    rows = [[QQ.zero] * size for _ in range(size)]
    for col, source in enumerate(basis):
        for target, coeff in _product_expansion(source.lam, source.mu):
            row = position.get(target)
            if row is not None:
                rows[row][col] = coeff.coeff(1)
    logger.debug(f"Inverting transition block of bidegree ({d}, {e}), size {size}")
    try:
        inverse = DomainMatrix(rows, (size, size), QQ).inv()
    except DMNonInvertibleMatrixError as exc:
        raise SingularTransitionError(f"transition block ({d}, {e}) is singular") from exc
    return basis, inverse.to_list()


@lru_cache(maxsize=None)
def _m_to_p_raw(index: BiPartition) -> tuple[tuple[PMonomial, PolyElement], ...]:
    """m_index in the p-basis, solved rung by rung from the top."""
    d = sum(index.lam)
    basis, inverse = _top_rung_inverse(d, sum(index.mu))
    col = basis.index(index)
    result: dict[PMonomial, PolyElement] = defaultdict(lambda: P0_RING.zero)
    residual: dict[BiPartition, PolyElement] = defaultdict(lambda: P0_RING.zero)
    for row, source in enumerate(basis):
        x = inverse[row][col]
        if not x:
            continue
        x = P0_RING(x)
        result[power_sum_monomial(source.lam, source.mu)] += x
        for target, coeff in _product_expansion(source.lam, source.mu):
            residual[target] += x * coeff
    residual[index] -= P0_RING.one
    for target, coeff in residual.items():
        if not coeff:
            continue
        if sum(target.lam) == d:
            raise SingularTransitionError(f"top rung of m{index} not cleared at m{target}")
        for monomial, c in _m_to_p_raw(target):
            result[monomial] -= coeff * c
    return tuple((m, c) for m, c in result.items() if c)


@lru_cache(maxsize=1024)
def _m_to_p_cached(index: BiPartition, field: CoefficientField) -> SymFunc:
    return SymFunc(field, {m: field.from_p0_poly(c) for m, c in _m_to_p_raw(index)})


def m_to_p(lam: Iterable[int], mu: Iterable[int] = (), field: CoefficientField | None = None) -> SymFunc:
    """Express m_{λ,μ} as a polynomial in the power sums."""
    index = BiPartition(make_partition(lam), make_partition(mu))
    return _m_to_p_cached(index, field or CoefficientField.symbolic())


def p_to_m(f: SymFunc) -> dict[BiPartition, Coefficient]:
    """Coefficients of f ∈ Λ± in the monomial basis."""
    field = f.field
    expansion: dict[BiPartition, Coefficient] = {}
    for monomial, coeff in f.terms.items():
        if monomial.wexp:
            raise ValueError(f"p_to_m expects an element of Λ±, got a term with {monomial}")
        alpha, beta = monomial.parts()
        for target, poly in _product_expansion(alpha, beta):
            value = coeff * field.from_p0_poly(poly)
            expansion[target] = expansion[target] + value if target in expansion else value
    return {bp: c for bp, c in expansion.items() if c}
