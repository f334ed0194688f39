"""
The incidence Hopf algebra of the maximal type A pointed intervals.

Write `a_n` for the isomorphism class of `A_fixed(n, 1)`; `a_1` is the unit.
The coproduct of `a_n` sums `[0, π] ⊗ [π, 1]` over the elements `π` of the
interval. `[0, π]` is the product of `a_λ` over the block sizes `λ` of `π`, and
`[π, 1]` is `a_k` for `k` blocks. The coproduct is computed three ways:
structurally from the enumerated poset, from compositions of `n` weighted by
factorials, and from the rooted-block count.

```python
from pointedposets.hopf import coproduct_structural

print(coproduct_structural(3))
# 1⊗a_3 + 4 a_2⊗a_2 + a_3⊗1
```
"""

from __future__ import annotations

import functools
import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from pointedposets.errors import NonIntegerCoefficient
from pointedposets.exactalg import RationalSeries, exp_of_variable, series_reversion
from pointedposets.partitions import Family, FamilySpec, enumerate_family

Monomial = tuple[int, ...]
"""Sorted generator indices >= 2; the empty tuple is the unit."""

TensorTerms = dict[tuple[Monomial, ...], int]


def monomial(*indices: int) -> Monomial:
    """The monomial `a_i a_j ...`, dropping the unit `a_1`."""
    return tuple(sorted(i for i in indices if i != 1))


def _monomial_text(m: Monomial) -> str:
    if not m:
        return "1"
    counts = Counter(m)
    return " ".join(f"a_{i}" if c == 1 else f"a_{i}^{c}" for i, c in sorted(counts.items()))


@dataclass(frozen=True)
class HopfTensor:
    """Integer combination of `left ⊗ a_right`, `left` a monomial in the `a_λ`, `λ >= 2`."""

    terms: tuple[tuple[tuple[Monomial, int], int], ...] = ()

    @classmethod
    def from_counts(cls, counts: Mapping[tuple[Monomial, int], int]) -> HopfTensor:
        kept = sorted(
            ((tuple(sorted(left)), right), c) for (left, right), c in counts.items() if c
        )
        for (left, right), _ in kept:
            if right < 1 or any(i < 2 for i in left):
                raise ValueError(f"Invalid tensor term {left} ⊗ a_{right}.")
        return cls(tuple(kept))

    def as_dict(self) -> dict[tuple[Monomial, int], int]:
        return dict(self.terms)

    def coefficient(self, left: Monomial, right: int) -> int:
        return self.as_dict().get((tuple(sorted(left)), right), 0)

    def to_json(self) -> list[dict]:
        return [
            {"left": list(left), "right": right, "coeff": str(c)}
            for (left, right), c in self.terms
        ]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        ordered = sorted(self.terms, key=lambda t: (sum(t[0][0]), t[0][0], -t[0][1]))
        for (left, right), c in ordered:
            right_text = "1" if right == 1 else f"a_{right}"
            body = f"{_monomial_text(left)}⊗{right_text}"
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            text = body if magnitude == 1 else f"{magnitude} {body}"
            parts.append((sign, text))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        return out + "".join(f" {s} {t}" for s, t in parts[1:])


def _check_n(n: int):
    if n < 1:
        raise ValueError(f"Expected n >= 1, got {n}.")


def coproduct_structural(n: int) -> HopfTensor:
    """Coproduct of `a_n` read off the elements of `A_fixed(n, 1)`."""
    _check_n(n)
    counts: Counter = Counter()
    for p in enumerate_family(FamilySpec(Family.A_FIXED, n, 1)):
        sizes = [len(b.elements) for b in p.blocks]
        counts[(monomial(*sizes), len(sizes))] += 1
    return HopfTensor.from_counts(counts)


def _integer_partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), 0, -1):
        for rest in _integer_partitions(n - part, part):
            yield (part, *rest)


def _compositions(n: int) -> Iterator[tuple[int, ...]]:
    for cuts in itertools.product((False, True), repeat=n - 1):
        parts, size = [], 1
        for cut in cuts:
            if cut:
                parts.append(size)
                size = 1
            else:
                size += 1
        parts.append(size)
        yield tuple(parts)


def _as_integer(key, value: Fraction) -> int:
    if value.denominator != 1:
        raise NonIntegerCoefficient(f"Coefficient of {key} is {value}, not an integer.", key, value)
    return value.numerator


def coproduct_series(n: int) -> HopfTensor:
    """Coproduct of `a_n` from the composition formula.

    `Δa_n / (n-1)!` sums, over compositions `π_1 + ... + π_k = n`, the products
    `a_{π_1}...a_{π_k} / ((π_1-1)!...(π_k-1)!)` tensored with `a_k / (k-1)!`.
    The sum runs over integer partitions `π_1 >= ... >= π_k` instead, each counted
    `k! / (m_1! m_2! ...)` times, where the `m_j` are the multiplicities of its parts.

    Raises:
        NonIntegerCoefficient: If clearing the factorials leaves a fraction.
    """
    _check_n(n)
    counts = {}
    for parts in _integer_partitions(n):
        k = len(parts)
        multiplicities = Counter(parts).values()
        orderings = Fraction(math.factorial(k), math.prod(math.factorial(c) for c in multiplicities))
        weight = Fraction(1, math.prod(math.factorial(p - 1) for p in parts))
        value = Fraction(math.factorial(n - 1), math.factorial(k - 1)) * orderings * weight
        key = (monomial(*parts), k)
        counts[key] = _as_integer(key, value)
    return HopfTensor.from_counts(counts)


def coproduct_rooted(n: int) -> HopfTensor:
    """Coproduct of `a_n` counting partitions by the block of the root `1`.

    A composition `(π_1, ..., π_k)` puts the root in a block of size `π_1`; there
    are `(n-1)! / ((π_1-1)! π_2! ... π_k!)` such partitions, each non-root
    block is pointed in `π_i` ways, and the `k-1` other blocks are unordered.
    """
    _check_n(n)
    totals: dict[tuple[Monomial, int], Fraction] = {}
    for parts in _compositions(n):
        first, rest = parts[0], parts[1:]
        count = Fraction(
            math.factorial(n - 1),
            math.factorial(first - 1) * math.prod(math.factorial(p) for p in rest),
        )
        value = count * math.prod(rest) / math.factorial(len(rest))
        key = (monomial(*parts), len(parts))
        totals[key] = totals.get(key, Fraction(0)) + value
    return HopfTensor.from_counts({key: _as_integer(key, v) for key, v in totals.items()})


# counit and coassociativity


def counit(m: Monomial) -> int:
    """`ε(1) = 1` and `ε(a_n) = 0` for `n >= 2`, extended multiplicatively."""
    return 0 if m else 1


def counit_left(t: HopfTensor) -> dict[Monomial, int]:
    """`(ε ⊗ id)` applied to `t`."""
    out: Counter = Counter()
    for (left, right), c in t.terms:
        out[monomial(right)] += counit(left) * c
    return {m: c for m, c in out.items() if c}


def counit_right(t: HopfTensor) -> dict[Monomial, int]:
    """`(id ⊗ ε)` applied to `t`."""
    out: Counter = Counter()
    for (left, right), c in t.terms:
        out[left] += counit(monomial(right)) * c
    return {m: c for m, c in out.items() if c}


def satisfies_counit(n: int) -> bool:
    """Both counit axioms on `a_n`."""
    expected = {monomial(n): 1}
    t = coproduct_series(n)
    return counit_left(t) == expected and counit_right(t) == expected


@functools.lru_cache(maxsize=None)
def _generator_coproduct(n: int) -> tuple[tuple[tuple[Monomial, Monomial], int], ...]:
    return tuple(
        ((left, monomial(right)), c) for (left, right), c in coproduct_series(n).terms
    )


def _multiply(a: TensorTerms, b: TensorTerms) -> TensorTerms:
    out: Counter = Counter()
    for ka, ca in a.items():
        for kb, cb in b.items():
            out[tuple(tuple(sorted(x + y)) for x, y in zip(ka, kb))] += ca * cb
    return {k: c for k, c in out.items() if c}


def coproduct_monomial(m: Monomial) -> TensorTerms:
    """`Δ` of a monomial, extended multiplicatively from the generators."""
    result: TensorTerms = {((), ()): 1}
    for index in m:
        result = _multiply(result, dict(_generator_coproduct(index)))
    return result


def is_coassociative(n: int) -> bool:
    """`(Δ ⊗ id)Δa_n == (id ⊗ Δ)Δa_n`."""
    first: Counter = Counter()
    second: Counter = Counter()
    for (left, right), c in _generator_coproduct(n):
        for (x, y), d in coproduct_monomial(left).items():
            first[(x, y, right)] += c * d
        for (x, y), d in coproduct_monomial(right).items():
            second[(left, x, y)] += c * d
    return {k: c for k, c in first.items() if c} == {k: c for k, c in second.items() if c}


# Lambert W


def lambert_series(order: int) -> RationalSeries:
    """The compositional inverse of `x e^x` through degree `order`."""
    frame = ("x",)
    x = RationalSeries.variable("x", frame, (order + 1,))
    return series_reversion(x * exp_of_variable("x", frame, order), order)


def mobius_generators(N: int) -> list[int]:
    """`μ_n = (n-1)!` times the coefficient of `x^n` in Lambert W, for `n = 2..N`."""
    if N < 2:
        raise ValueError(f"Expected N >= 2, got {N}.")
    w = lambert_series(N)
    values = []
    for n in range(2, N + 1):
        value = w.coefficient(n) * math.factorial(n - 1)
        values.append(_as_integer(("x", n), value))
    return values
