"""
Finite ranked posets: Hasse diagrams, Möbius functions, characteristic
polynomials, intervals, products, isomorphism and semimodularity.

A `FinitePoset` is built once from its cover relation. Reachability is stored as
one integer bitset per element (the up-set and the down-set), so order queries
never walk the diagram again.

```python
from pointedposets.posetcore import FinitePoset, characteristic_polynomial

chain = FinitePoset.from_covers(["0", "1", "2"], [(0, 1), (1, 2)])
print(characteristic_polynomial(chain))
# x^2-x
```
"""

from __future__ import annotations

import functools
import itertools
from collections import Counter, deque
from typing import Any, Callable, Iterator, Mapping, NamedTuple, Sequence

from pointedposets.errors import (
    NoMinimum,
    NotComparable,
    NotPure,
    SizeLimitExceeded,
    UnequalMaxRanks,
)
from pointedposets.exactalg import IntPolynomial
from pointedposets.logging import get_prefect_or_default_logger
from pointedposets.settings import get_settings

Ref = int | str


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of `mask`, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FinitePoset:
    """A finite pure poset with a unique minimum, given by its Hasse diagram.

    Elements are addressed by index or by label. Build instances with
    `FinitePoset.from_covers` or `build_poset`.
    """

    __slots__ = (
        "elements",
        "covers",
        "rank",
        "payload",
        "_index",
        "_upper",
        "_lower",
        "_up",
        "_down",
        "_minimum",
        "_mobius",
    )

    def __init__(
        self,
        elements: tuple[str, ...],
        covers: tuple[tuple[int, int], ...],
        rank: tuple[int, ...],
        upper: tuple[tuple[int, ...], ...],
        lower: tuple[tuple[int, ...], ...],
        up: tuple[int, ...],
        down: tuple[int, ...],
        minimum: int,
        payload: tuple[Any, ...] | None,
    ):
        self.elements = elements
        self.covers = covers
        self.rank = rank
        self.payload = payload
        self._index = {label: k for k, label in enumerate(elements)}
        self._upper = upper
        self._lower = lower
        self._up = up
        self._down = down
        self._minimum = minimum
        self._mobius: dict[int, dict[int, int]] = {}

    @classmethod
    def from_covers(
        cls,
        elements: Sequence[str],
        covers: Sequence[tuple[int, int]],
        payload: Sequence[Any] | None = None,
    ) -> FinitePoset:
        """Build a poset from labels and `(lower, upper)` cover index pairs.

        Raises:
            ValueError: If labels repeat, an index is out of range or the covers cycle.
            NoMinimum: If there is not exactly one minimal element.
            NotPure: If some cover does not raise the rank by exactly one.
        """
        elements = tuple(elements)
        size = len(elements)
        if len(set(elements)) != size:
            raise ValueError("Element labels must be distinct.")
        if payload is not None and len(payload) != size:
            raise ValueError(f"Expected {size} payload entries, got {len(payload)}.")
        upper: list[set[int]] = [set() for _ in range(size)]
        lower: list[set[int]] = [set() for _ in range(size)]
        for a, b in covers:
            if not (0 <= a < size and 0 <= b < size) or a == b:
                raise ValueError(f"Invalid cover ({a}, {b}) for {size} elements.")
            upper[a].add(b)
            lower[b].add(a)

        minima = [k for k in range(size) if not lower[k]]
        if len(minima) != 1:
            raise NoMinimum(
                f"Expected a unique minimal element, found {len(minima)}.",
                [elements[k] for k in minima],
            )

        indegree = [len(lower[k]) for k in range(size)]
        order = []
        queue = deque(minima)
        while queue:
            k = queue.popleft()
            order.append(k)
            for j in sorted(upper[k]):
                indegree[j] -= 1
                if indegree[j] == 0:
                    queue.append(j)
        if len(order) != size:
            raise ValueError("The cover relation contains a cycle.")

        rank: list[int | None] = [None] * size
        rank[minima[0]] = 0
        for k in order:
            for j in upper[k]:
                if rank[j] is None:
                    rank[j] = rank[k] + 1
                elif rank[j] != rank[k] + 1:
                    raise NotPure(
                        f"Cover {elements[k]} < {elements[j]} does not raise the rank by one.",
                        elements[k],
                        elements[j],
                    )

        up = [0] * size
        for k in reversed(order):
            mask = 1 << k
            for j in upper[k]:
                mask |= up[j]
            up[k] = mask
        down = [0] * size
        for k in order:
            mask = 1 << k
            for j in lower[k]:
                mask |= down[j]
            down[k] = mask

        logger = get_prefect_or_default_logger(__name__)
        edges = tuple(sorted((a, b) for a in range(size) for b in upper[a]))
        logger.debug(f"Built poset with {size} elements and {len(edges)} covers.")
        return cls(
            elements,
            edges,
            tuple(rank),
            tuple(tuple(sorted(u)) for u in upper),
            tuple(tuple(sorted(l)) for l in lower),
            tuple(up),
            tuple(down),
            minima[0],
            tuple(payload) if payload is not None else None,
        )

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FinitePoset(size={len(self)}, covers={len(self.covers)})"

    def index(self, ref: Ref) -> int:
        """Index of an element given by index or label."""
        if isinstance(ref, str):
            try:
                return self._index[ref]
            except KeyError:
                raise KeyError(f"No element labelled {ref!r}.") from None
        if not 0 <= ref < len(self):
            raise IndexError(f"Element index {ref} out of range.")
        return ref

    @property
    def minimum(self) -> int:
        return self._minimum

    def upper_covers(self, ref: Ref) -> tuple[int, ...]:
        return self._upper[self.index(ref)]

    def lower_covers(self, ref: Ref) -> tuple[int, ...]:
        return self._lower[self.index(ref)]

    def up_set(self, ref: Ref) -> int:
        """Bitset of the elements above (and including) `ref`."""
        return self._up[self.index(ref)]

    def down_set(self, ref: Ref) -> int:
        """Bitset of the elements below (and including) `ref`."""
        return self._down[self.index(ref)]

    def leq(self, a: Ref, b: Ref) -> bool:
        return bool((self._up[self.index(a)] >> self.index(b)) & 1)

    def between(self, a: Ref, b: Ref) -> list[int]:
        """Indices of the closed interval `[a, b]` (empty if `a` is not below `b`)."""
        return list(bits(self._up[self.index(a)] & self._down[self.index(b)]))

    def maximal_elements(self) -> list[int]:
        return [k for k in range(len(self)) if not self._upper[k]]

    @property
    def top(self) -> int | None:
        """The maximum, or None when there are several maximal elements."""
        maxima = self.maximal_elements()
        return maxima[0] if len(maxima) == 1 else None

    @property
    def max_rank(self) -> int:
        return max(self.rank)

    def mobius_row(self, a: Ref) -> dict[int, int]:
        """`mu(a, c)` for every `c >= a`, memoized per lower endpoint."""
        a = self.index(a)
        row = self._mobius.get(a)
        if row is None:
            row = {a: 1}
            above = sorted(bits(self._up[a]), key=lambda k: self.rank[k])
            for c in above[1:]:
                strictly_between = self._down[c] & self._up[a] & ~(1 << c)
                row[c] = -sum(row[d] for d in bits(strictly_between))
            self._mobius[a] = row
        return row


def build_poset(
    elements: Sequence[Any],
    leq: Callable[[Any, Any], bool],
    labels: Sequence[str] | None = None,
) -> FinitePoset:
    """Build a poset from elements and an order predicate.

    The covers are the transitive reduction of `leq`; the payload keeps the
    elements. Labels default to `str(element)`.
    """
    elements = list(elements)
    size = len(elements)
    labels = [str(e) for e in elements] if labels is None else list(labels)
    up = [0] * size
    for a in range(size):
        for b in range(size):
            if a == b or leq(elements[a], elements[b]):
                up[a] |= 1 << b
    covers = []
    for a in range(size):
        strictly_above = up[a] & ~(1 << a)
        for b in bits(strictly_above):
            # b covers a when nothing else of the up-set of a sits below b
            if not any(
                c != b and (up[c] >> b) & 1 for c in bits(strictly_above)
            ):
                covers.append((a, b))
    return FinitePoset.from_covers(labels, covers, payload=elements)


def chain(length: int) -> FinitePoset:
    """The chain with `length` elements."""
    if length < 1:
        raise ValueError(f"A chain needs at least one element, got {length}.")
    return FinitePoset.from_covers(
        [str(k) for k in range(length)], [(k, k + 1) for k in range(length - 1)]
    )


def mobius(P: FinitePoset, a: Ref, b: Ref) -> int:
    """The Möbius function `mu(a, b)`.

    Raises:
        NotComparable: If `a` is not below `b`.
    """
    a, b = P.index(a), P.index(b)
    if not P.leq(a, b):
        raise NotComparable(
            f"{P.elements[a]} is not below {P.elements[b]}.", P.elements[a], P.elements[b]
        )
    return P.mobius_row(a)[b]


def characteristic_polynomial(P: FinitePoset) -> IntPolynomial:
    """`sum(mu(0, a) * x ** (r - rank(a)))`, `r` the rank of the maximal elements.

    Raises:
        UnequalMaxRanks: If the maximal elements do not share one rank.
    """
    ranks = sorted({P.rank[m] for m in P.maximal_elements()})
    if len(ranks) != 1:
        raise UnequalMaxRanks(f"Maximal elements have ranks {ranks}.", ranks)
    top_rank = ranks[0]
    coeffs = [0] * (top_rank + 1)
    for a, value in P.mobius_row(P.minimum).items():
        coeffs[top_rank - P.rank[a]] += value
    return IntPolynomial(tuple(coeffs))


def rank_generating_function(P: FinitePoset) -> IntPolynomial:
    """`sum(x ** rank(a))` over the elements."""
    counts = Counter(P.rank)
    return IntPolynomial(tuple(counts[r] for r in range(P.max_rank + 1)))


def interval(P: FinitePoset, a: Ref, b: Ref) -> FinitePoset:
    """The closed interval `[a, b]` as a poset of its own.

    Raises:
        NotComparable: If `a` is not below `b`.
    """
    a, b = P.index(a), P.index(b)
    if not P.leq(a, b):
        raise NotComparable(
            f"{P.elements[a]} is not below {P.elements[b]}.", P.elements[a], P.elements[b]
        )
    members = P.between(a, b)
    position = {k: j for j, k in enumerate(members)}
    covers = [
        (position[k], position[j])
        for k in members
        for j in P.upper_covers(k)
        if j in position
    ]
    payload = [P.payload[k] for k in members] if P.payload is not None else None
    return FinitePoset.from_covers([P.elements[k] for k in members], covers, payload)


def poset_product(P: FinitePoset, Q: FinitePoset) -> FinitePoset:
    """The componentwise product; element `(i, j)` has index `i * len(Q) + j`."""
    width = len(Q)
    labels = [f"({p}, {q})" for p in P.elements for q in Q.elements]
    covers = []
    for i, j in itertools.product(range(len(P)), range(width)):
        for k in P.upper_covers(i):
            covers.append((i * width + j, k * width + j))
        for k in Q.upper_covers(j):
            covers.append((i * width + j, i * width + k))
    payload = None
    if P.payload is not None and Q.payload is not None:
        payload = [(p, q) for p in P.payload for q in Q.payload]
    return FinitePoset.from_covers(labels, covers, payload)


def product_of(posets: Sequence[FinitePoset]) -> FinitePoset:
    """Product of several posets; the empty product is the one-element poset."""
    if not posets:
        return chain(1)
    return functools.reduce(poset_product, posets)


def to_json(P: FinitePoset) -> dict[str, Any]:
    """Element labels, cover index pairs and ranks."""
    return {
        "elements": list(P.elements),
        "covers": [list(c) for c in P.covers],
        "rank": list(P.rank),
    }


# isomorphism


def _signature(P: FinitePoset, k: int) -> tuple[int, ...]:
    return (
        P.rank[k],
        len(P.upper_covers(k)),
        len(P.lower_covers(k)),
        P.up_set(k).bit_count(),
        P.down_set(k).bit_count(),
    )


def _refine_colours(P: FinitePoset, Q: FinitePoset) -> tuple[list[int], list[int]]:
    """Joint colour refinement of both Hasse diagrams."""
    raw = [[_signature(X, k) for k in range(len(X))] for X in (P, Q)]
    classes = -1
    while True:
        palette = {c: n for n, c in enumerate(sorted(set(raw[0]) | set(raw[1])))}
        colours = [[palette[c] for c in side] for side in raw]
        if len(palette) == classes:
            return colours[0], colours[1]
        classes = len(palette)
        raw = [
            [
                (
                    colours[s][k],
                    tuple(sorted(colours[s][j] for j in X.upper_covers(k))),
                    tuple(sorted(colours[s][j] for j in X.lower_covers(k))),
                )
                for k in range(len(X))
            ]
            for s, X in enumerate((P, Q))
        ]


def find_isomorphism(
    P: FinitePoset, Q: FinitePoset, bound: int | None = None
) -> list[int] | None:
    """An order isomorphism as a list `mapping[p] = q`, or None if there is none.

    Raises:
        SizeLimitExceeded: If either poset is larger than `bound`
            (default `Settings.isomorphism_bound`).
    """
    bound = get_settings().isomorphism_bound if bound is None else bound
    size = len(P)
    if max(size, len(Q)) > bound:
        raise SizeLimitExceeded(
            f"Isomorphism search on {max(size, len(Q))} elements exceeds the bound {bound}.",
            max(size, len(Q)),
            bound,
        )
    if size != len(Q) or len(P.covers) != len(Q.covers) or Counter(P.rank) != Counter(Q.rank):
        return None
    colour_p, colour_q = _refine_colours(P, Q)
    if Counter(colour_p) != Counter(colour_q):
        return None

    by_colour: dict[int, list[int]] = {}
    for k, c in enumerate(colour_q):
        by_colour.setdefault(c, []).append(k)

    # Visit P so that every element after the first touches an earlier one.
    order, seen = [], {P.minimum}
    queue = deque([P.minimum])
    while queue:
        k = queue.popleft()
        order.append(k)
        for j in (*P.upper_covers(k), *P.lower_covers(k)):
            if j not in seen:
                seen.add(j)
                queue.append(j)

    mapping = [-1] * size
    used = [False] * size

    def candidates(v: int) -> list[int]:
        for u in P.lower_covers(v):
            if mapping[u] >= 0:
                return [w for w in Q.upper_covers(mapping[u]) if colour_q[w] == colour_p[v]]
        for u in P.upper_covers(v):
            if mapping[u] >= 0:
                return [w for w in Q.lower_covers(mapping[u]) if colour_q[w] == colour_p[v]]
        return by_colour[colour_p[v]]

    def consistent(v: int, w: int) -> bool:
        above, below = set(Q.upper_covers(w)), set(Q.lower_covers(w))
        return all(mapping[u] < 0 or mapping[u] in above for u in P.upper_covers(v)) and all(
            mapping[u] < 0 or mapping[u] in below for u in P.lower_covers(v)
        )

    stack = [iter(candidates(order[0]))]
    while stack:
        v = order[len(stack) - 1]
        if mapping[v] >= 0:
            used[mapping[v]] = False
            mapping[v] = -1
        for w in stack[-1]:
            if not used[w] and consistent(v, w):
                mapping[v] = w
                used[w] = True
                break
        else:
            stack.pop()
            continue
        if len(stack) == size:
            return mapping
        stack.append(iter(candidates(order[len(stack)])))
    return None


def weakly_equivalent(P: FinitePoset, Q: FinitePoset) -> bool:
    """Compare rank-generating functions, characteristic polynomials and Möbius data."""
    if rank_generating_function(P) != rank_generating_function(Q):
        return False

    def profile(X: FinitePoset):
        try:
            chi = characteristic_polynomial(X)
        except UnequalMaxRanks:
            chi = None
        row = X.mobius_row(X.minimum)
        return chi, sorted((X.rank[k], v) for k, v in row.items())

    return profile(P) == profile(Q)


def are_isomorphic(
    P: FinitePoset,
    Q: FinitePoset,
    bound: int | None = None,
    weak_fallback: bool = False,
) -> bool:
    """Return True if `P` and `Q` are isomorphic as posets.

    Args:
        P (FinitePoset): First poset.
        Q (FinitePoset): Second poset.
        bound (int, optional): Largest size searched exactly.
        weak_fallback (bool): Beyond `bound`, answer with `weakly_equivalent`
            instead of raising.

    Raises:
        SizeLimitExceeded: Beyond `bound` when `weak_fallback` is False.
    """
    try:
        return find_isomorphism(P, Q, bound) is not None
    except SizeLimitExceeded as exc:
        if not weak_fallback:
            raise
        logger = get_prefect_or_default_logger(__name__)
        logger.warning(f"{exc} Falling back to a weak check.")
        return weakly_equivalent(P, Q)


def is_isomorphism(
    P: FinitePoset, Q: FinitePoset, mapping: Sequence[int] | Mapping[int, int]
) -> bool:
    """Return True if `mapping` (P index to Q index) is an order isomorphism."""
    if isinstance(mapping, Mapping):
        mapping = [mapping.get(k, -1) for k in range(len(P))]
    if len(P) != len(Q) or len(mapping) != len(P) or sorted(mapping) != list(range(len(Q))):
        return False
    return {(mapping[a], mapping[b]) for a, b in P.covers} == set(Q.covers)


# semimodularity


class SemimodularityFailure(NamedTuple):
    """Two elements covering `bottom` with no common cover (below `top`, if set)."""

    bottom: str
    first: str
    second: str
    top: str | None


def semimodularity_failure(P: FinitePoset, total: bool = False) -> SemimodularityFailure | None:
    """The first violation of (total) semimodularity, or None.

    Total semimodularity asks every interval to be semimodular: for `X != Y`
    covering `T`, every common upper bound `b` of `X` and `Y` must lie above
    some common cover of both.
    """
    cover_masks = [sum(1 << j for j in P.upper_covers(k)) for k in range(len(P))]
    for t in range(len(P)):
        for x, y in itertools.combinations(P.upper_covers(t), 2):
            common = cover_masks[x] & cover_masks[y]
            if not total:
                if not common:
                    return SemimodularityFailure(P.elements[t], P.elements[x], P.elements[y], None)
                continue
            reached = 0
            for z in bits(common):
                reached |= P.up_set(z)
            missing = P.up_set(x) & P.up_set(y) & ~reached
            if missing:
                b = min(bits(missing), key=lambda k: P.rank[k])
                return SemimodularityFailure(
                    P.elements[t], P.elements[x], P.elements[y], P.elements[b]
                )
    return None


def is_semimodular(P: FinitePoset) -> bool:
    """Whenever distinct `X` and `Y` cover some `T`, some `Z` covers both."""
    return semimodularity_failure(P, total=False) is None


def is_totally_semimodular(P: FinitePoset) -> bool:
    """Every closed interval of `P` is semimodular."""
    return semimodularity_failure(P, total=True) is None
