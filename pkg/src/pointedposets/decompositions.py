"""
Intervals of the partition posets as products of smaller family members.

An interval `[U, V]` of the type A or multi-pointed poset splits along the
blocks of `V`; inside one block of `V`, contracting every block of `U` to a
single index gives an element of `A_fixed(λ, 1)` or `MA_interval(λ, ν)`. The
contraction is an explicit isomorphism, which `contraction_mapping` returns and
`verify_decomposition` checks.

Intervals of the type B poset have one factor for the zero block of `V`, of
one of three shapes, and a type A factor for every other pair of blocks:

- `beta(λ)` when `U` and `V` point the same element of their zero blocks,
- `betaB_interval(λ)` when `U` has a nonempty zero block pointed differently,
- `B_prime(λ)` when the zero block of `U` is empty.
"""

from __future__ import annotations

import functools

from pointedposets.errors import NotComparable
from pointedposets.partitions import (
    Block,
    Family,
    FamilySpec,
    PointedPartition,
    canonical_string,
    family_poset,
)
from pointedposets.posetcore import (
    FinitePoset,
    are_isomorphic,
    interval,
    is_isomorphism,
    product_of,
)


@functools.lru_cache(maxsize=256)
def _factor_poset(spec: FamilySpec) -> FinitePoset:
    return family_poset(spec)


def _endpoints(P: FinitePoset, a, b) -> tuple[PointedPartition, PointedPartition]:
    a, b = P.index(a), P.index(b)
    if P.payload is None:
        raise ValueError("The poset carries no partitions; build it with family_poset.")
    if not P.leq(a, b):
        raise NotComparable(
            f"{P.elements[a]} is not below {P.elements[b]}.", P.elements[a], P.elements[b]
        )
    low, high = P.payload[a], P.payload[b]
    if not isinstance(low, PointedPartition) or not isinstance(high, PointedPartition):
        raise ValueError("Decompositions apply to intervals without the extended top.")
    return low, high


def _contracted_blocks(multi: bool, low: PointedPartition, high: Block) -> list[Block]:
    """Blocks of `low` inside `high`; those feeding the pointing of `high` first."""
    parts = [b for b in low.all_blocks() if b.elements <= high.elements]
    feeds = (lambda b: b.pointed <= high.pointed) if multi else (lambda b: bool(b.pointed & high.pointed))
    return sorted(parts, key=lambda b: (not feeds(b), b.key))


def _factor_spec(multi: bool, low: PointedPartition, high: Block) -> FamilySpec:
    parts = _contracted_blocks(multi, low, high)
    if not multi:
        return FamilySpec(Family.A_FIXED, len(parts), 1)
    fed = sum(1 for b in parts if b.pointed <= high.pointed)
    return FamilySpec(Family.MA_INTERVAL, len(parts), fed)


def _contract(multi: bool, low: PointedPartition, high: Block, c: PointedPartition) -> PointedPartition:
    parts = _contracted_blocks(multi, low, high)
    slot = {e: t for t, part in enumerate(parts, start=1) for e in part.elements}
    blocks = []
    for block in c.all_blocks():
        if not block.elements <= high.elements:
            continue
        indices = frozenset(slot[e] for e in block.elements)
        if multi:
            pointed = frozenset(t for t in indices if parts[t - 1].pointed <= block.pointed)
        else:
            pointed = frozenset(slot[e] for e in block.pointed)
        blocks.append(Block(indices, pointed))
    return PointedPartition(len(parts), False, frozenset(blocks))


def decomposition_factors(family: Family, P: FinitePoset, a, b) -> list[FamilySpec]:
    """The family members whose product is isomorphic to `[a, b]`."""
    family = Family(family)
    if family.signed:
        return predicted_shape_B(P, a, b)
    low, high = _endpoints(P, a, b)
    return [_factor_spec(family.multi, low, block) for block in high.all_blocks()]


def contraction_mapping(
    P: FinitePoset, a, b, multi: bool
) -> tuple[FinitePoset, FinitePoset, list[int]]:
    """The interval `[a, b]`, the product of its factors and the contraction between them.

    Returns:
        `(interval, product, mapping)` with `mapping[k]` the product index of the
        interval's element `k`.
    """
    low, high = _endpoints(P, a, b)
    if low.signed:
        raise ValueError("The contraction map is defined for type A and multi-pointed posets.")
    blocks = high.all_blocks()
    factors = [_factor_poset(_factor_spec(multi, low, block)) for block in blocks]
    sub = interval(P, a, b)
    product = product_of(factors)
    mapping = []
    for c in sub.payload:
        position = 0
        for factor, block in zip(factors, blocks):
            image = canonical_string(_contract(multi, low, block, c))
            position = position * len(factor) + factor.index(image)
        mapping.append(position)
    return sub, product, mapping


def interval_decomposition_A(P: FinitePoset, a, b) -> bool:
    """Check `[a, b]` of a type A poset against its product of `A_fixed(λ, 1)`."""
    sub, product, mapping = contraction_mapping(P, a, b, multi=False)
    return is_isomorphism(sub, product, mapping)


def interval_decomposition_MA(P: FinitePoset, a, b) -> bool:
    """Check `[a, b]` of a multi-pointed poset against its product of `MA_interval(λ, ν)`."""
    sub, product, mapping = contraction_mapping(P, a, b, multi=True)
    return is_isomorphism(sub, product, mapping)


def predicted_shape_B(P: FinitePoset, a, b) -> list[FamilySpec]:
    """Factors of an interval of a type B poset: a zero-block factor, then type A ones."""
    low, high = _endpoints(P, a, b)
    if not low.signed:
        raise ValueError("predicted_shape_B applies to signed posets.")
    factors = []
    if high.zero is not None:
        count = sum(1 for block in low.blocks if block.elements <= high.zero.elements) // 2
        if count:
            if low.zero is None:
                factors.append(FamilySpec(Family.B_PRIME, count))
            elif low.zero.pointed == high.zero.pointed:
                factors.append(FamilySpec(Family.BETA, count))
            else:
                factors.append(FamilySpec(Family.BETAB_INTERVAL, count))
    for block in high.pair_representatives():
        count = sum(1 for part in low.blocks if part.elements <= block.elements)
        factors.append(FamilySpec(Family.A_FIXED, count, 1))
    return factors


def verify_decomposition(family: Family, P: FinitePoset, a, b) -> bool:
    """Return True if `[a, b]` is isomorphic to the product of its predicted factors."""
    family = Family(family)
    if family.signed:
        product = product_of([_factor_poset(spec) for spec in predicted_shape_B(P, a, b)])
        return are_isomorphic(interval(P, a, b), product)
    sub, product, mapping = contraction_mapping(P, a, b, multi=family.multi)
    return is_isomorphism(sub, product, mapping)
