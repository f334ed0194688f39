"""
Integral reduced homology of order complexes.

The faces of an order complex are the chains of a poset. Boundary matrices are
kept sparse and reduced by a Smith normal form over the integers, which yields
the Betti numbers and the torsion of every degree. Degrees follow the order
complex: the proper part of an interval of rank `r` has its top homology in
degree `r - 2`.

```python
from pointedposets.homology import order_complex, reduced_homology
from pointedposets.posetcore import chain, poset_product

boolean = poset_product(poset_product(chain(2), chain(2)), chain(2))
result = reduced_homology(order_complex(boolean, "proper"))
print(result.betti)
# {-1: 0, 0: 0, 1: 1}
```
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Literal, Sequence

from pointedposets.errors import NotBounded, OutOfRange, SizeLimitExceeded
from pointedposets.logging import get_prefect_or_default_logger
from pointedposets.partitions import Family, FamilySpec
from pointedposets.posetcore import FinitePoset, bits, interval
from pointedposets.reports import CohenMacaulayReport, IntervalReport, Verdict
from pointedposets.settings import get_settings

Face = tuple[int, ...]
SparseRows = dict[int, dict[int, int]]


@dataclass(frozen=True)
class SimplicialComplex:
    """Faces grouped by dimension; `faces[d]` lists the ascending `d`-faces."""

    faces: tuple[tuple[Face, ...], ...] = ()
    labels: tuple[str, ...] = ()

    @classmethod
    def from_facets(cls, facets: Sequence[Sequence[int]]) -> SimplicialComplex:
        """The smallest complex containing `facets`."""
        found: dict[int, set[Face]] = defaultdict(set)
        for facet in facets:
            vertices = tuple(sorted(set(facet)))
            for size in range(1, len(vertices) + 1):
                found[size - 1].update(itertools.combinations(vertices, size))
        top = max(found, default=-1)
        return cls(tuple(tuple(sorted(found[d])) for d in range(top + 1)))

    @property
    def dimension(self) -> int:
        """Top dimension, `-1` for the empty complex."""
        return len(self.faces) - 1

    def face_counts(self) -> list[int]:
        return [len(f) for f in self.faces]

    def reduced_euler_characteristic(self) -> int:
        """`-1 + f_0 - f_1 + ...`, the empty face included."""
        return -1 + sum((-1) ** d * len(f) for d, f in enumerate(self.faces))


@dataclass(frozen=True)
class HomologyResult:
    """Reduced homology over the integers, degree `-1` to the top dimension."""

    betti: dict[int, int]
    torsion: dict[int, tuple[int, ...]] = field(default_factory=dict)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** d * b for d, b in self.betti.items())

    @property
    def torsion_free(self) -> bool:
        return not any(self.torsion.values())

    def nonzero_degrees(self) -> list[int]:
        return [d for d, b in sorted(self.betti.items()) if b]

    def is_concentrated_in(self, degree: int) -> bool:
        """Free in `degree` and zero in every other degree."""
        return self.torsion_free and all(b == 0 for d, b in self.betti.items() if d != degree)

    def rank_in(self, degree: int) -> int:
        return self.betti.get(degree, 0)


def order_complex(P: FinitePoset, mode: Literal["whole", "proper"] = "whole") -> SimplicialComplex:
    """The complex of chains of `P`, or of its proper part.

    Vertices are renumbered by rank, so every chain reads as an ascending tuple.

    Raises:
        NotBounded: In `proper` mode if `P` has no maximum.
    """
    if mode not in ("whole", "proper"):
        raise ValueError(f"Unknown mode {mode!r}; expected 'whole' or 'proper'.")
    members = list(range(len(P)))
    if mode == "proper":
        top = P.top
        if top is None:
            raise NotBounded(f"The proper part needs a maximum; {P!r} has several.")
        members = [k for k in members if k not in (P.minimum, top)]
    members.sort(key=lambda k: (P.rank[k], k))
    position = {k: v for v, k in enumerate(members)}
    above = []
    for k in members:
        mask = 0
        for j in bits(P.up_set(k) & ~(1 << k)):
            if j in position:
                mask |= 1 << position[j]
        above.append(mask)

    found: dict[int, list[Face]] = defaultdict(list)

    def extend(face: Face, mask: int):
        found[len(face) - 1].append(face)
        for w in bits(mask):
            extend(face + (w,), mask & above[w])

    for v in range(len(members)):
        extend((v,), above[v])
    top_dim = max(found, default=-1)
    faces = tuple(tuple(sorted(found[d])) for d in range(top_dim + 1))
    return SimplicialComplex(faces, tuple(P.elements[k] for k in members))


@dataclass(frozen=True)
class BoundaryMatrix:
    """Sparse integer matrix; `entries[row][col]` holds the nonzero entries."""

    shape: tuple[int, int]
    entries: SparseRows

    def to_dense(self) -> list[list[int]]:
        rows, cols = self.shape
        dense = [[0] * cols for _ in range(rows)]
        for r, row in self.entries.items():
            for c, v in row.items():
                dense[r][c] = v
        return dense


def boundary_matrices(C: SimplicialComplex) -> list[BoundaryMatrix]:
    """`∂_d` for `d = 0 .. dimension`; `∂_0` is the augmentation onto the empty face."""
    matrices = []
    previous: dict[Face, int] = {(): 0}
    for d, faces in enumerate(C.faces):
        entries: SparseRows = defaultdict(dict)
        for col, face in enumerate(faces):
            for k in range(len(face)):
                row = previous[face[:k] + face[k + 1 :]]
                entries[row][col] = -1 if k % 2 else 1
        matrices.append(BoundaryMatrix((len(previous), len(faces)), dict(entries)))
        previous = {face: k for k, face in enumerate(faces)}
    return matrices


def _add_row(rows: SparseRows, columns: dict[int, set[int]], target: int, source: int, factor: int):
    row = rows[target]
    for c, v in rows[source].items():
        value = row.get(c, 0) + factor * v
        if value:
            row[c] = value
            columns[c].add(target)
        else:
            row.pop(c, None)
            columns[c].discard(target)
    if not row:
        del rows[target]


def _add_column(rows: SparseRows, columns: dict[int, set[int]], target: int, source: int, factor: int):
    for r in list(columns[source]):
        row = rows[r]
        value = row.get(target, 0) + factor * row[source]
        if value:
            row[target] = value
            columns[target].add(r)
        else:
            row.pop(target, None)
            columns[target].discard(r)


def _choose_pivot(rows: SparseRows) -> tuple[int, int]:
    best = None
    for r, row in rows.items():
        for c, v in row.items():
            if abs(v) == 1:
                return r, c
            if best is None or abs(v) < best[0]:
                best = (abs(v), r, c)
    return best[1], best[2]


def _invariant_chain(diagonal: list[int]) -> tuple[int, ...]:
    """Turn a diagonal into invariant factors `d_1 | d_2 | ...`."""
    factors = sorted(diagonal)
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            g = math.gcd(factors[i], factors[j])
            if g != factors[i]:
                factors[i], factors[j] = g, factors[i] * factors[j] // g
    return tuple(factors)


def smith_invariants(entries: SparseRows) -> tuple[int, ...]:
    """Invariant factors of a sparse integer matrix (its nonzero diagonal)."""
    rows: SparseRows = {r: dict(row) for r, row in entries.items() if any(row.values())}
    for row in rows.values():
        for c in [c for c, v in row.items() if not v]:
            del row[c]
    columns: dict[int, set[int]] = defaultdict(set)
    for r, row in rows.items():
        for c in row:
            columns[c].add(r)

    diagonal = []
    while rows:
        r, c = _choose_pivot(rows)
        while True:
            pivot = rows[r][c]
            clean = True
            for s in list(columns[c]):
                if s != r:
                    _add_row(rows, columns, s, r, -(rows[s][c] // pivot))
                    clean = clean and c not in rows.get(s, {})
            for d in list(rows[r]):
                if d != c:
                    _add_column(rows, columns, d, c, -(rows[r][d] // pivot))
                    clean = clean and d not in rows[r]
            if clean and len(rows[r]) == 1 and columns[c] == {r}:
                break
            # remainders are smaller than the pivot; move the pivot onto the least
            candidates = [(abs(v), r, d) for d, v in rows[r].items() if d != c]
            candidates += [(abs(rows[s][c]), s, c) for s in columns[c] if s != r]
            _, r, c = min(candidates)
        diagonal.append(abs(pivot))
        del rows[r]
        columns[c].discard(r)
    return _invariant_chain(diagonal)


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Invariant factors `d_1 | d_2 | ... | d_k` of an integer matrix.

    ```python
    smith_normal_form([[2, 4], [6, 8]])
    # (2, 4)
    ```
    """
    entries = {
        r: {c: v for c, v in enumerate(row) if v} for r, row in enumerate(matrix)
    }
    return smith_invariants(entries)


def reduced_homology(C: SimplicialComplex) -> HomologyResult:
    """Reduced homology of `C` over the integers, `H̃_{-1}` included."""
    counts = [1] + C.face_counts()  # the empty face in degree -1
    factors = [smith_invariants(m.entries) for m in boundary_matrices(C)]
    ranks = [0] + [len(f) for f in factors] + [0]
    betti, torsion = {}, {}
    for d in range(-1, C.dimension + 1):
        betti[d] = counts[d + 1] - ranks[d + 1] - ranks[d + 2]
        above = factors[d + 1] if d + 1 < len(factors) else ()
        torsion[d] = tuple(f for f in above if f > 1)
    return HomologyResult(betti, torsion)


def proper_part_homology(P: FinitePoset, a, b) -> HomologyResult:
    """Homology of the open interval `(a, b)`."""
    return reduced_homology(order_complex(interval(P, a, b), "proper"))


def maximal_interval_homology(P: FinitePoset) -> list[tuple[str, HomologyResult]]:
    """Proper-part homology of `[0, m]` for every maximal element `m`."""
    return [
        (P.elements[m], proper_part_homology(P, P.minimum, m))
        for m in P.maximal_elements()
        if m != P.minimum
    ]


def interval_report(P: FinitePoset, a: int, b: int) -> IntervalReport:
    """Homology, Möbius number and verdict for one interval of rank at least 2."""
    length = P.rank[b] - P.rank[a]
    result = proper_part_homology(P, a, b)
    mu = P.mobius_row(a)[b]
    problems = []
    if not result.torsion_free:
        problems.append("torsion")
    if not result.is_concentrated_in(length - 2):
        problems.append(f"homology outside degree {length - 2}")
    if mu != result.euler_characteristic:
        problems.append(f"mobius {mu} differs from Euler characteristic {result.euler_characteristic}")
    return IntervalReport(
        name=f"[{P.elements[a]}, {P.elements[b]}]",
        verdict=Verdict.FAIL if problems else Verdict.PASS,
        detail="; ".join(problems),
        bottom=P.elements[a],
        top=P.elements[b],
        rank=length,
        betti=result.betti,
        torsion={d: list(t) for d, t in result.torsion.items() if t},
        mobius=mu,
        euler=result.euler_characteristic,
    )


def interval_pairs(P: FinitePoset, min_length: int = 2) -> list[tuple[int, int]]:
    """Every `(a, b)` with `a <= b` and `rank(b) - rank(a) >= min_length`."""
    return [
        (a, b)
        for a in range(len(P))
        for b in bits(P.up_set(a))
        if P.rank[b] - P.rank[a] >= min_length
    ]


def capped_interval_pairs(P: FinitePoset, name: str = "poset", cap: int | None = None) -> list[tuple[int, int]]:
    """`interval_pairs(P)`, refusing more than `cap` (default `Settings.interval_cap`).

    Raises:
        SizeLimitExceeded: If there are more intervals than `cap`.
    """
    cap = get_settings().interval_cap if cap is None else cap
    pairs = interval_pairs(P)
    if len(pairs) > cap:
        raise SizeLimitExceeded(
            f"{name} has {len(pairs)} intervals to check, above the cap of {cap}.",
            len(pairs),
            cap,
        )
    return pairs


def homology_max_n(family: Family) -> int:
    """Largest `n` whose intervals a Cohen-Macaulay sweep of `family` checks by default."""
    settings = get_settings()
    family = Family(family)
    if family is Family.A_EXTENDED:
        return settings.homology_extended_max_n
    if family.base is Family.A:
        return settings.homology_a_max_n
    if family.multi:
        return settings.homology_ma_max_n
    return settings.homology_b_max_n


def check_homology_bound(spec: FamilySpec):
    """Raise `OutOfRange` if `spec.n` is above `homology_max_n(spec.family)`.

    The bounds are `Settings.homology_*_max_n`, so `POINTEDPOSETS_HOMOLOGY_A_MAX_N=6`
    and the like raise them.
    """
    bound = homology_max_n(spec.family)
    if spec.n > bound:
        raise OutOfRange(f"{spec} is above the homology bound n <= {bound} for {spec.family.value}.")


def summarize_intervals(name: str, reports: list[IntervalReport]) -> CohenMacaulayReport:
    """Collect interval reports into one verdict, failures first."""
    logger = get_prefect_or_default_logger(__name__)
    failed = [r for r in reports if not r.passed]
    for r in failed:
        logger.warning(f"{name}: interval {r.name} fails ({r.detail}).")
    return CohenMacaulayReport(
        name=name,
        verdict=Verdict.FAIL if failed else Verdict.PASS,
        detail=f"{len(failed)} of {len(reports)} intervals fail" if failed else "",
        checked=len(reports),
        intervals=failed + [r for r in reports if r.passed],
    )


def cohen_macaulay_report(
    P: FinitePoset, name: str = "poset", cap: int | None = None
) -> CohenMacaulayReport:
    """Check every interval of rank at least 2: torsion-free homology concentrated
    in the top degree, and Philip Hall's `mu = reduced Euler characteristic`.

    Raises:
        SizeLimitExceeded: If there are more intervals than `cap`
            (default `Settings.interval_cap`).
    """
    pairs = capped_interval_pairs(P, name, cap)
    logger = get_prefect_or_default_logger(__name__)
    logger.info(f"Checking {len(pairs)} intervals of {name}.")
    return summarize_intervals(name, [interval_report(P, a, b) for a, b in pairs])
