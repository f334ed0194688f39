"""
Pointed and multi-pointed partitions of types A, B, beta and betaB.

A family is named by a `FamilySpec`. Its elements are enumerated exhaustively
in a deterministic order (rank, then canonical string), compared with `leq`,
and linked into a Hasse diagram by the one-step gatherings of `upper_covers`.

```python
from pointedposets.partitions import Family, FamilySpec, enumerate_family, parse_partition, leq

elements = enumerate_family(FamilySpec(Family.A, 3))
print(len(elements))
# 10
p = parse_partition("{1*|2*3}", Family.A)
q = parse_partition("{1*23}", Family.A)
print(leq(Family.A, p, q))
# True
```

Canonical strings separate blocks with `|`, mark pointed elements with `*` and
print the zero block of a signed partition first. Ground sets with 10 or more
elements separate the elements of a block with `,`.
"""

from __future__ import annotations

import enum
import itertools
import re
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterator, Mapping, Sequence, Union

from pointedposets.errors import GroundMismatch, LimitExceeded, OutOfRange, ParseError
from pointedposets.exactalg import (
    RationalSeries,
    egf_coefficient,
    exp_of_variable,
    series_exp,
)
from pointedposets.logging import get_prefect_or_default_logger
from pointedposets.posetcore import FinitePoset
from pointedposets.settings import get_settings


class Family(str, enum.Enum):
    """Every poset family the package builds."""

    A = "A"
    A_FIXED = "A_fixed"
    A_EXTENDED = "A_extended"
    MA = "MA"
    MA_FIXED = "MA_fixed"
    MA_INTERVAL = "MA_interval"
    B = "B"
    B_FIXED = "B_fixed"
    B_PRIME = "B_prime"
    BETA = "beta"
    BETAB = "betaB"
    BETAB_INTERVAL = "betaB_interval"

    @property
    def base(self) -> Family:
        """The whole poset this family is a down-set of."""
        return _BASES[self]

    @property
    def signed(self) -> bool:
        return self.base in (Family.B, Family.BETA, Family.BETAB)

    @property
    def multi(self) -> bool:
        return self.base is Family.MA


_BASES = {
    Family.A: Family.A,
    Family.A_FIXED: Family.A,
    Family.A_EXTENDED: Family.A,
    Family.MA: Family.MA,
    Family.MA_FIXED: Family.MA,
    Family.MA_INTERVAL: Family.MA,
    Family.B: Family.B,
    Family.B_FIXED: Family.B,
    Family.B_PRIME: Family.B,
    Family.BETA: Family.BETA,
    Family.BETAB: Family.BETAB,
    Family.BETAB_INTERVAL: Family.BETAB,
}

# (lowest i, or None when the family takes no i)
_I_RANGES = {
    Family.A_FIXED: 1,
    Family.MA_FIXED: 1,
    Family.MA_INTERVAL: 1,
    Family.B_FIXED: 0,
}


@dataclass(frozen=True)
class FamilySpec:
    """A family together with its rank parameter `n` and optional `i`.

    Raises:
        OutOfRange: If `n < 1`, or `i` is missing, superfluous or outside its range.
    """

    family: Family
    n: int
    i: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.n < 1:
            raise OutOfRange(f"Expected n >= 1, got n={self.n}.")
        low = _I_RANGES.get(self.family)
        if low is None:
            if self.i is not None:
                raise OutOfRange(f"Family {self.family.value} takes no i, got i={self.i}.")
        elif self.i is None or not low <= self.i <= self.n:
            raise OutOfRange(
                f"Family {self.family.value} needs {low} <= i <= n={self.n}, got i={self.i}."
            )

    def __str__(self) -> str:
        suffix = "" if self.i is None else f", i={self.i}"
        return f"{self.family.value}(n={self.n}{suffix})"


@dataclass(frozen=True)
class Block:
    """A block with its pointed subset."""

    elements: frozenset[int]
    pointed: frozenset[int] = field(default_factory=frozenset)

    @property
    def key(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted((abs(e), e) for e in self.elements))

    def negated(self) -> Block:
        return Block(
            frozenset(-e for e in self.elements), frozenset(-e for e in self.pointed)
        )

    @property
    def is_self_opposite(self) -> bool:
        return any(-e in self.elements for e in self.elements)


@dataclass(frozen=True)
class PointedPartition:
    """A (multi-)pointed partition of `[n]`, or of `[n]` and `[-n]` when signed.

    Signed partitions keep their zero block apart in `zero` (None when empty);
    `blocks` then holds the opposite pairs, both members of each pair.
    """

    n: int
    signed: bool
    blocks: frozenset[Block]
    zero: Block | None = None

    @property
    def rank(self) -> int:
        if self.signed:
            return self.n - len(self.blocks) // 2
        return self.n - len(self.blocks)

    @property
    def pointed(self) -> frozenset[int]:
        """Every pointed element, the zero block's included."""
        found = set()
        for block in self.all_blocks():
            found |= block.pointed
        return frozenset(found)

    def all_blocks(self) -> list[Block]:
        """Blocks in canonical order, the zero block first."""
        ordered = sorted(self.blocks, key=lambda b: b.key)
        return [self.zero, *ordered] if self.zero is not None else ordered

    def pair_representatives(self) -> list[Block]:
        """One block of each opposite pair: the one whose smallest element is positive."""
        return [b for b in self.all_blocks() if b is not self.zero and b.key[0][1] > 0]

    def __str__(self) -> str:
        return canonical_string(self)


@dataclass(frozen=True)
class ExtendedTop:
    """The maximum added above every element of the type A family."""

    n: int

    @property
    def rank(self) -> int:
        return self.n

    def __str__(self) -> str:
        return "TOP"


Element = Union[PointedPartition, ExtendedTop]


def _zero_mode(family: Family) -> str:
    return {Family.B: "one", Family.BETA: "none", Family.BETAB: "optional"}[family.base]


def check_invariants(family: Family, p: Element):
    """Raise `ValueError` if `p` is not a well-formed element of `family`'s base poset."""
    family = Family(family)
    if isinstance(p, ExtendedTop):
        if family is not Family.A_EXTENDED:
            raise ValueError(f"TOP only belongs to {Family.A_EXTENDED.value}.")
        return
    if p.signed != family.signed:
        raise ValueError(f"Signedness of {p} does not match family {family.value}.")
    seen: list[int] = []
    for block in p.all_blocks():
        if not block.elements:
            raise ValueError("Blocks must be nonempty.")
        if not block.pointed <= block.elements:
            raise ValueError(f"Pointed set {set(block.pointed)} is not inside its block.")
        seen.extend(block.elements)
    ground = set(range(1, p.n + 1))
    if p.signed:
        ground |= {-e for e in ground}
    if len(seen) != len(set(seen)) or set(seen) != ground:
        raise ValueError(f"Blocks of {p} do not partition the ground set.")

    if not p.signed:
        for block in p.blocks:
            if family.multi and not block.pointed:
                raise ValueError("Every block needs a nonempty pointed set.")
            if not family.multi and len(block.pointed) != 1:
                raise ValueError("Every block needs exactly one pointed element.")
        return

    for block in p.blocks:
        if block.is_self_opposite:
            raise ValueError("Only the zero block may contain opposite elements.")
        if block.negated() not in p.blocks:
            raise ValueError(f"Block {set(block.elements)} has no opposite block.")
        if len(block.pointed) != 1:
            raise ValueError("Every non-zero block needs exactly one pointed element.")
    if p.zero is not None:
        if not p.zero.elements or p.zero.negated().elements != p.zero.elements:
            raise ValueError("The zero block must be nonempty and closed under negation.")
        allowed = {"one": {1}, "none": {0}, "optional": {0, 1}}[_zero_mode(family)]
        if len(p.zero.pointed) not in allowed:
            raise ValueError(
                f"A zero block of family {family.value} cannot carry "
                f"{len(p.zero.pointed)} pointed elements."
            )


# ordering


def _block_index(p: PointedPartition) -> dict[int, Block]:
    return {e: block for block in p.all_blocks() for e in block.elements}


def leq(family: Family, p: Element, q: Element) -> bool:
    """Return True if `p <= q` in `family`.

    Type A, B and beta: every block of `p` lies inside a block of `q` and every
    element pointed in `q` is pointed in `p`. Multi-pointed: each block of `q`
    is pointed at the union of the pointed sets of some nonempty family of the
    `p` blocks inside it. betaB adds that an unpointed zero block of `q` forces
    an unpointed zero block in `p`.

    Raises:
        GroundMismatch: If `p` and `q` have different ground sets.
    """
    family = Family(family)
    if p.n != q.n or (
        isinstance(p, PointedPartition)
        and isinstance(q, PointedPartition)
        and p.signed != q.signed
    ):
        raise GroundMismatch(f"Cannot compare {p} and {q}: different ground sets.")
    if isinstance(q, ExtendedTop):
        return True
    if isinstance(p, ExtendedTop):
        return False

    coarse = _block_index(q)
    inside: dict[Block, list[Block]] = {}
    for block in p.all_blocks():
        owners = {coarse[e] for e in block.elements}
        if len(owners) != 1:
            return False
        inside.setdefault(owners.pop(), []).append(block)

    if family.multi:
        for owner, parts in inside.items():
            covered = set()
            for part in parts:
                common = part.pointed & owner.pointed
                if common and common != part.pointed:
                    return False
                covered |= common
            if covered != owner.pointed:
                return False
        return True

    if not q.pointed <= p.pointed:
        return False
    if family.base is Family.BETAB:
        q_unpointed = q.zero is None or not q.zero.pointed
        p_pointed = p.zero is not None and bool(p.zero.pointed)
        if q_unpointed and p_pointed:
            return False
    return True


def upper_covers(family: Family, p: Element) -> list[Element]:
    """Elements of `family`'s base poset covering `p`: the one-step gatherings.

    Plain types merge two blocks and keep either pointed set (or, multi-pointed,
    their union). Signed types merge two opposite pairs in either relative sign,
    or fold one pair into the zero block and choose its pointing.
    """
    family = Family(family)
    if isinstance(p, ExtendedTop):
        return []
    if not p.signed:
        covers: list[Element] = []
        for x, y in itertools.combinations(p.all_blocks(), 2):
            rest = p.blocks - {x, y}
            options = [x.pointed, y.pointed]
            if family.multi:
                options.append(x.pointed | y.pointed)
            for pointed in options:
                covers.append(replace(p, blocks=rest | {Block(x.elements | y.elements, pointed)}))
        if family is Family.A_EXTENDED and len(p.blocks) == 1:
            covers.append(ExtendedTop(p.n))
        return covers
    return _signed_upper_covers(family, p)


def _signed_upper_covers(family: Family, p: PointedPartition) -> list[Element]:
    covers: list[Element] = []
    representatives = p.pair_representatives()
    for x, y in itertools.combinations(representatives, 2):
        rest = p.blocks - {x, x.negated(), y, y.negated()}
        for other in (y, y.negated()):
            elements = x.elements | other.elements
            for pointed in (x.pointed, other.pointed):
                merged = Block(elements, pointed)
                covers.append(replace(p, blocks=rest | {merged, merged.negated()}))

    mode = _zero_mode(family)
    zero_elements = p.zero.elements if p.zero is not None else frozenset()
    zero_pointed = p.zero.pointed if p.zero is not None else frozenset()
    for x in representatives:
        rest = p.blocks - {x, x.negated()}
        elements = zero_elements | x.elements | x.negated().elements
        (e,) = x.pointed
        if mode == "none":
            options = [frozenset()]
        elif mode == "one":
            options = ([zero_pointed] if zero_pointed else []) + [
                frozenset({e}),
                frozenset({-e}),
            ]
        else:
            options = [zero_pointed, frozenset({e}), frozenset({-e})]
        for pointed in options:
            covers.append(replace(p, blocks=rest, zero=Block(elements, pointed)))
    return covers


# enumeration


def _set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in _set_partitions(rest):
        yield [[first], *partition]
        for k in range(len(partition)):
            yield partition[:k] + [[first, *partition[k]]] + partition[k + 1 :]


def _nonempty_subsets(elements: Sequence[int]) -> Iterator[frozenset[int]]:
    for size in range(1, len(elements) + 1):
        for subset in itertools.combinations(elements, size):
            yield frozenset(subset)


def _plain_elements(n: int, multi: bool) -> Iterator[PointedPartition]:
    for partition in _set_partitions(list(range(1, n + 1))):
        choices = [
            list(_nonempty_subsets(b)) if multi else [frozenset({e}) for e in b]
            for b in partition
        ]
        for pointing in itertools.product(*choices):
            yield PointedPartition(
                n,
                False,
                frozenset(Block(frozenset(b), s) for b, s in zip(partition, pointing)),
            )


def _signed_blocks(block: list[int]) -> Iterator[Block]:
    """Every signing of `block` with its smallest element positive, each pointing."""
    first, rest = block[0], block[1:]
    for signs in itertools.product((1, -1), repeat=len(rest)):
        elements = frozenset([first, *(s * e for s, e in zip(signs, rest))])
        for e in sorted(elements, key=abs):
            yield Block(elements, frozenset({e}))


def _signed_elements(n: int, mode: str) -> Iterator[PointedPartition]:
    ground = list(range(1, n + 1))
    for size in range(n + 1):
        for zero_part in itertools.combinations(ground, size):
            rest = [e for e in ground if e not in zero_part]
            zero_elements = frozenset(zero_part) | frozenset(-e for e in zero_part)
            if not zero_elements:
                zero_options: list[Block | None] = [None]
            else:
                signed_points = [frozenset({e}) for e in sorted(zero_elements, key=lambda e: (abs(e), e))]
                points = {
                    "one": signed_points,
                    "none": [frozenset()],
                    "optional": [frozenset(), *signed_points],
                }[mode]
                zero_options = [Block(zero_elements, s) for s in points]
            for partition in _set_partitions(rest):
                for choice in itertools.product(*(list(_signed_blocks(b)) for b in partition)):
                    blocks = frozenset(choice) | frozenset(b.negated() for b in choice)
                    for zero in zero_options:
                        yield PointedPartition(n, True, blocks, zero)


def _base_elements(spec: FamilySpec) -> Iterator[Element]:
    base = spec.family.base
    if base is Family.A:
        yield from _plain_elements(spec.n, multi=False)
        if spec.family is Family.A_EXTENDED:
            yield ExtendedTop(spec.n)
    elif base is Family.MA:
        yield from _plain_elements(spec.n, multi=True)
    else:
        yield from _signed_elements(spec.n, _zero_mode(base))


def top_element(spec: FamilySpec) -> Element | None:
    """The maximum of a bounded family, None when the family has several maxima."""
    n, family = spec.n, spec.family
    whole = frozenset(range(1, n + 1))
    if family is Family.A_EXTENDED:
        return ExtendedTop(n)
    if family is Family.A_FIXED and spec.i == 1:
        return PointedPartition(n, False, frozenset({Block(whole, frozenset({1}))}))
    if family is Family.MA_FIXED and spec.i == n:
        return PointedPartition(n, False, frozenset({Block(whole, whole)}))
    if family is Family.MA_INTERVAL:
        pointed = frozenset(range(1, spec.i + 1))
        return PointedPartition(n, False, frozenset({Block(whole, pointed)}))
    if family in (Family.B_PRIME, Family.BETAB_INTERVAL):
        zero = Block(whole | frozenset(-e for e in whole), frozenset({n}))
        return PointedPartition(n, True, frozenset(), zero)
    return None


def bottom_element(spec: FamilySpec) -> PointedPartition:
    """All singletons, each pointed; the zero block is empty."""
    ground = range(1, spec.n + 1)
    blocks = {Block(frozenset({e}), frozenset({e})) for e in ground}
    if spec.family.signed:
        blocks |= {b.negated() for b in blocks}
    return PointedPartition(spec.n, spec.family.signed, frozenset(blocks))


def is_member(spec: FamilySpec, p: Element) -> bool:
    """Return True if `p`, an element of the base poset, belongs to `spec`'s family."""
    family = spec.family
    if family in (Family.A_FIXED, Family.MA_FIXED, Family.B_FIXED):
        required = set(range(1, spec.i + 1))
        if family.signed:
            required |= {-e for e in required}
        return required <= p.pointed
    if family in (Family.MA_INTERVAL, Family.B_PRIME, Family.BETAB_INTERVAL):
        return leq(family, p, top_element(spec))
    return True


def projected_size(spec: FamilySpec) -> int:
    """Exact size of `spec`'s base poset, read off its exponential generating function.

    Restricted families (fixed points, intervals) are no larger than this.
    """
    n = spec.n
    frame = ("u",)
    u = RationalSeries.variable("u", frame, (n + 1,))
    exp_u = exp_of_variable("u", frame, n)
    base = spec.family.base
    if base is Family.A:
        series = series_exp(u * exp_u, n)
    elif base is Family.MA:
        series = series_exp(exp_u * (exp_u - 1), n)
    else:
        pairs = series_exp(u * series_exp(u * 2, n), n)
        zero = {
            Family.B: 1 + u * exp_u * 2,
            Family.BETA: exp_u,
            Family.BETAB: (1 + u * 2) * exp_u,
        }[base]
        series = zero * pairs
    size = int(egf_coefficient(series, n))
    return size + 1 if spec.family is Family.A_EXTENDED else size


def enumerate_family(spec: FamilySpec, cap: int | None = None) -> list[Element]:
    """Every element of `spec`'s family, sorted by rank then canonical string.

    Args:
        spec (FamilySpec): The family to enumerate.
        cap (int, optional): Largest admissible base size. Defaults to
            `Settings.element_cap`.

    Raises:
        LimitExceeded: If the base poset is larger than `cap`.
    """
    cap = get_settings().element_cap if cap is None else cap
    projected = projected_size(spec)
    if projected > cap:
        raise LimitExceeded(
            f"{spec} would enumerate {projected} elements, above the cap of {cap}.",
            projected,
            cap,
        )
    logger = get_prefect_or_default_logger(__name__)
    logger.debug(f"Enumerating {spec} from a base of {projected} elements.")
    elements = [p for p in _base_elements(spec) if is_member(spec, p)]
    return sorted(elements, key=lambda p: (p.rank, canonical_string(p)))


def graded_counts(spec: FamilySpec, cap: int | None = None) -> list[int]:
    """Number of elements of each rank, rank 0 first."""
    counts = Counter(p.rank for p in enumerate_family(spec, cap))
    return [counts[r] for r in range(max(counts) + 1)]


def family_poset(spec: FamilySpec, cap: int | None = None) -> FinitePoset:
    """The Hasse diagram of `spec`'s family, its payload holding the elements."""
    elements = enumerate_family(spec, cap)
    index = {p: k for k, p in enumerate(elements)}
    covers = [
        (k, index[q])
        for k, p in enumerate(elements)
        for q in upper_covers(spec.family, p)
        if q in index
    ]
    return FinitePoset.from_covers(
        [canonical_string(p) for p in elements], covers, payload=elements
    )


# group actions


def negate(p: Element) -> Element:
    """Apply `e -> -e` to every element of a signed partition."""
    if isinstance(p, ExtendedTop):
        return p
    if not p.signed:
        raise ValueError("Negation acts on signed partitions only.")
    zero = p.zero.negated() if p.zero is not None else None
    return replace(p, blocks=frozenset(b.negated() for b in p.blocks), zero=zero)


def permute(p: Element, sigma: Mapping[int, int] | Sequence[int]) -> Element:
    """Relabel `p` by a permutation of `[n]`, acting on absolute values.

    `sigma` is a mapping `e -> sigma(e)` or the sequence `(sigma(1), ..., sigma(n))`.
    """
    if isinstance(p, ExtendedTop):
        return p
    table = dict(sigma) if isinstance(sigma, Mapping) else dict(zip(range(1, p.n + 1), sigma))
    if sorted(table) != list(range(1, p.n + 1)) or sorted(table.values()) != sorted(table):
        raise ValueError(f"{sigma!r} is not a permutation of 1..{p.n}.")

    def move(block: Block) -> Block:
        image = lambda e: table[abs(e)] if e > 0 else -table[abs(e)]  # noqa: E731
        return Block(frozenset(map(image, block.elements)), frozenset(map(image, block.pointed)))

    zero = move(p.zero) if p.zero is not None else None
    return replace(p, blocks=frozenset(move(b) for b in p.blocks), zero=zero)


# canonical strings


def canonical_string(p: Element) -> str:
    """The canonical text form, e.g. `{1*|2*3}` or `{-2*2|-1*|1*}`."""
    if isinstance(p, ExtendedTop):
        return "TOP"
    separator = "," if p.n >= 10 else ""
    parts = []
    for block in p.all_blocks():
        ordered = sorted(block.elements, key=lambda e: (abs(e), e))
        parts.append(separator.join(f"{e}*" if e in block.pointed else str(e) for e in ordered))
    return "{" + "|".join(parts) + "}"


_TOKEN = re.compile(r"(-?)(\d+)(\*?)")
_DIGIT_TOKEN = re.compile(r"(-?)(\d)(\*?)")


def _parse_block(text: str, start: int, end: int, commas: bool) -> tuple[list[int], set[int]]:
    body = text[start:end]
    if not body:
        raise ParseError("Empty block", text, start)
    elements: list[int] = []
    pointed: set[int] = set()
    pattern = _TOKEN if commas else _DIGIT_TOKEN
    position = start
    pieces = body.split(",") if commas else None
    if pieces is not None:
        for piece in pieces:
            match = pattern.fullmatch(piece)
            if match is None:
                raise ParseError(f"Malformed element {piece!r}", text, position)
            elements.append(_element_value(match, text, position))
            if match.group(3):
                pointed.add(elements[-1])
            position += len(piece) + 1
        return elements, pointed
    while position < end:
        match = pattern.match(text, position, end)
        if match is None:
            raise ParseError(f"Unexpected character {text[position]!r}", text, position)
        elements.append(_element_value(match, text, position))
        if match.group(3):
            pointed.add(elements[-1])
        position = match.end()
    return elements, pointed


def _element_value(match: re.Match, text: str, position: int) -> int:
    value = int(match.group(2))
    if value == 0:
        raise ParseError("Element 0 is not in any ground set", text, position)
    return -value if match.group(1) else value


def parse_partition(text: str, family: Family, n: int | None = None) -> Element:
    """Parse a canonical string into an element of `family`.

    Args:
        text (str): Canonical form such as `{1*2|3*}`; `TOP` for the extended maximum.
        family (Family): The family the element belongs to.
        n (int, optional): Size of the ground set. Inferred from the largest
            absolute value when omitted. Elements are comma separated when
            `n >= 10` or the text holds a comma, and single digits otherwise.

    Raises:
        ParseError: If the text is malformed or does not describe a valid element.
    """
    family = Family(family)
    text = text.strip()
    if text == "TOP":
        if family is not Family.A_EXTENDED or n is None:
            raise ParseError("TOP needs family A_extended and an explicit n", text, 0)
        return ExtendedTop(n)
    if not text.startswith("{"):
        raise ParseError("Expected '{'", text, 0)
    if not text.endswith("}") or len(text) < 2:
        raise ParseError("Expected '}'", text, len(text))

    commas = "," in text or (n is not None and n >= 10)
    blocks: list[tuple[int, Block]] = []
    start = 1
    for boundary in [m.start() for m in re.finditer(r"\|", text)] + [len(text) - 1]:
        elements, pointed = _parse_block(text, start, boundary, commas)
        if len(set(elements)) != len(elements):
            raise ParseError("Repeated element", text, start)
        blocks.append((start, Block(frozenset(elements), frozenset(pointed))))
        start = boundary + 1

    size = n if n is not None else max(abs(e) for _, b in blocks for e in b.elements)
    zero: Block | None = None
    others = []
    for position, block in blocks:
        if family.signed and block.is_self_opposite:
            if zero is not None:
                raise ParseError("Second block containing opposite elements", text, position)
            zero = block
        else:
            others.append(block)
    p = PointedPartition(size, family.signed, frozenset(others), zero)
    try:
        check_invariants(family, p)
    except ValueError as exc:
        raise ParseError(str(exc).rstrip("."), text, 0) from exc
    return p

