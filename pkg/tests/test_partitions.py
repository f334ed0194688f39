"""
Tests for the partitions module.
"""

from __future__ import annotations

import pytest

from pointedposets.errors import GroundMismatch, LimitExceeded, OutOfRange, ParseError
from pointedposets.partitions import (
    Block,
    ExtendedTop,
    Family,
    FamilySpec,
    PointedPartition,
    bottom_element,
    canonical_string,
    check_invariants,
    enumerate_family,
    family_poset,
    graded_counts,
    leq,
    negate,
    parse_partition,
    permute,
    projected_size,
    top_element,
    upper_covers,
)


def part(text: str, family: Family = Family.A, n: int | None = None):
    return parse_partition(text, family, n)


class TestFamilySpec:
    """Tests for `FamilySpec`."""

    @pytest.mark.parametrize(
        "family,n,i",
        [
            (Family.A, 0, None),
            (Family.A, 3, 1),
            (Family.A_FIXED, 3, None),
            (Family.A_FIXED, 3, 0),
            (Family.A_FIXED, 3, 4),
            (Family.B_FIXED, 2, -1),
            (Family.MA_INTERVAL, 2, 0),
        ],
    )
    def test_out_of_range(self, family, n, i):
        with pytest.raises(OutOfRange):
            FamilySpec(family, n, i)

    def test_accepts_strings(self):
        spec = FamilySpec("B_fixed", 3, 0)
        assert spec.family is Family.B_FIXED
        assert str(spec) == "B_fixed(n=3, i=0)"
        assert str(FamilySpec(Family.A, 2)) == "A(n=2)"

    def test_family_properties(self):
        assert Family.B_PRIME.base is Family.B
        assert Family.BETAB_INTERVAL.signed
        assert Family.MA_FIXED.multi
        assert not Family.A_EXTENDED.signed


class TestCounts:
    """Element counts against their generating functions."""

    @pytest.mark.parametrize("n,expected", [(1, 1), (2, 3), (3, 10), (4, 41), (5, 196)])
    def test_type_a(self, n: int, expected: int):
        spec = FamilySpec(Family.A, n)
        assert projected_size(spec) == expected
        assert len(enumerate_family(spec)) == expected

    @pytest.mark.parametrize("n,expected", [(1, 1), (2, 4), (3, 17), (4, 89)])
    def test_multi_pointed(self, n: int, expected: int):
        spec = FamilySpec(Family.MA, n)
        assert projected_size(spec) == expected
        assert len(enumerate_family(spec)) == expected

    @pytest.mark.parametrize("family", [Family.B, Family.BETA, Family.BETAB])
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_signed_enumeration_matches_projection(self, family: Family, n: int):
        spec = FamilySpec(family, n)
        assert len(enumerate_family(spec)) == projected_size(spec)

    def test_type_b_small(self):
        assert projected_size(FamilySpec(Family.B, 1)) == 3
        assert projected_size(FamilySpec(Family.B, 2)) == 13

    def test_extended_adds_top(self):
        elements = enumerate_family(FamilySpec(Family.A_EXTENDED, 3))
        assert len(elements) == 11
        assert elements[-1] == ExtendedTop(3)

    def test_graded(self):
        assert graded_counts(FamilySpec(Family.A, 3)) == [1, 6, 3]
        assert graded_counts(FamilySpec(Family.A_FIXED, 3, 1)) == [1, 4, 1]

    def test_fixed_points_restrict(self):
        elements = enumerate_family(FamilySpec(Family.A_FIXED, 3, 2))
        assert all({1, 2} <= p.pointed for p in elements)

    def test_cap(self):
        with pytest.raises(LimitExceeded) as exc:
            enumerate_family(FamilySpec(Family.A, 5), cap=100)
        assert exc.value.projected == 196
        assert exc.value.cap == 100

    def test_sorted_by_rank(self):
        elements = enumerate_family(FamilySpec(Family.MA, 3))
        ranks = [p.rank for p in elements]
        assert ranks == sorted(ranks)
        assert elements[0] == bottom_element(FamilySpec(Family.MA, 3))


class TestCanonicalStrings:
    """Tests for `canonical_string` and `parse_partition`."""

    @pytest.mark.parametrize(
        "text,family",
        [
            ("{1*|2*3}", Family.A),
            ("{1*2*|3*}", Family.MA),
            ("{-2*2|-1*|1*}", Family.B),
            ("{-12*|1-2*}", Family.B),
            ("{-22|-1*|1*}", Family.BETA),
        ],
    )
    def test_canonical(self, text: str, family: Family):
        p = part(text, family)
        assert canonical_string(p) == text
        assert str(p) == text

    def test_orders_blocks(self):
        assert canonical_string(part("{3*2|1*}")) == "{1*|23*}"

    def test_large_ground_set_uses_commas(self):
        text = "{" + "|".join(f"{k}*" for k in range(1, 11)) + "}"
        assert canonical_string(part(text, Family.A, 10)) == text
        merged = part("{1*,10|2*|3*|4*|5*|6*|7*|8*|9*}")
        assert merged.n == 10
        assert canonical_string(merged).startswith("{1*,10|2*|")

    def test_top(self):
        assert part("TOP", Family.A_EXTENDED, 3) == ExtendedTop(3)
        with pytest.raises(ParseError):
            part("TOP", Family.A, 3)

    @pytest.mark.parametrize(
        "text,position",
        [
            ("1*|2*", 0),
            ("{1*|2*", 6),
            ("{1*||2*}", 4),
            ("{1*|2x}", 5),
            ("{1*1|2*}", 1),
            ("{0*|1*}", 1),
        ],
    )
    def test_parse_errors(self, text: str, position: int):
        with pytest.raises(ParseError) as exc:
            part(text)
        assert exc.value.position == position
        assert exc.value.text == text

    @pytest.mark.parametrize(
        "text,family",
        [
            ("{12|3*}", Family.A),
            ("{1*2*|3*}", Family.A),
            ("{12|3*}", Family.MA),
            ("{1*|3*}", Family.A),
            ("{-1*1|-2*2}", Family.B),
            ("{-1*1}", Family.BETA),
            ("{-2*|1*|2}", Family.B),
        ],
    )
    def test_invalid_elements(self, text: str, family: Family):
        with pytest.raises(ParseError):
            part(text, family)

    def test_explicit_n(self):
        with pytest.raises(ParseError):
            part("{1*|2*}", Family.A, 3)
        assert part("{1*|2*}", Family.A, 2).n == 2


class TestOrder:
    """Tests for `leq` and `upper_covers`."""

    @pytest.mark.parametrize(
        "low,high,expected",
        [
            ("{1*|2*|3*}", "{1*2|3*}", True),
            ("{1*2|3*}", "{1*23}", True),
            ("{12*|3*}", "{1*23}", False),
            ("{12*|3*}", "{123*}", True),
            ("{1*|2*3}", "{1*2|3*}", False),
            ("{1*23}", "{1*23}", True),
        ],
    )
    def test_type_a(self, low: str, high: str, expected: bool):
        assert leq(Family.A, part(low), part(high)) is expected

    @pytest.mark.parametrize(
        "low,high,expected",
        [
            ("{1*|2*|3*}", "{1*2*|3*}", True),
            ("{1*|2*|3*}", "{1*2|3*}", True),
            ("{1*2*|3*}", "{1*2*3}", True),
            ("{1*2*|3*}", "{1*23}", False),
            ("{1*2|3*}", "{1*2*3*}", False),
            ("{12*|3*}", "{1*2*3}", False),
        ],
    )
    def test_multi_pointed(self, low: str, high: str, expected: bool):
        assert leq(Family.MA, part(low, Family.MA), part(high, Family.MA)) is expected

    def test_signed(self):
        bottom = bottom_element(FamilySpec(Family.B, 2))
        folded = part("{-2*2|-1*|1*}", Family.B)
        assert leq(Family.B, bottom, folded)
        assert not leq(Family.B, folded, bottom)
        unpointed = part("{-22|-1*|1*}", Family.BETAB)
        pointed = part("{-2*2|-1*|1*}", Family.BETAB)
        assert not leq(Family.BETAB, pointed, unpointed)

    def test_extended_top(self):
        top = ExtendedTop(2)
        assert leq(Family.A_EXTENDED, part("{12*}"), top)
        assert not leq(Family.A_EXTENDED, top, part("{12*}"))

    def test_ground_mismatch(self):
        with pytest.raises(GroundMismatch):
            leq(Family.A, part("{1*|2*}"), part("{1*|2*|3*}"))

    @pytest.mark.parametrize("family", [Family.A, Family.MA, Family.B, Family.BETA, Family.BETAB])
    def test_covers_are_covers(self, family: Family):
        """Every generated cover is a valid element one rank up, and above."""
        spec = FamilySpec(family, 3)
        for p in enumerate_family(spec):
            for q in upper_covers(family, p):
                check_invariants(family, q)
                assert q.rank == p.rank + 1
                assert leq(family, p, q)

    def test_cover_counts(self):
        bottom = bottom_element(FamilySpec(Family.A, 3))
        assert len(upper_covers(Family.A, bottom)) == 6
        assert len(upper_covers(Family.MA, bottom_element(FamilySpec(Family.MA, 2)))) == 3
        assert upper_covers(Family.A_EXTENDED, part("{1*23}")) == [ExtendedTop(3)]


@pytest.mark.parametrize(
    "spec",
    [
        FamilySpec(Family.A, 4),
        FamilySpec(Family.MA, 3),
        FamilySpec(Family.MA, 4),
        FamilySpec(Family.B, 3),
        FamilySpec(Family.BETA, 3),
        FamilySpec(Family.BETAB, 2),
        FamilySpec(Family.BETAB, 3),
    ],
    ids=str,
)
def test_family_poset_matches_order(spec: FamilySpec):
    """The transitive closure of the generated covers is the order `leq` decides directly."""
    P = family_poset(spec)
    for a, p in enumerate(P.payload):
        for b, q in enumerate(P.payload):
            below = leq(spec.family, p, q)
            assert P.leq(a, b) == below, (p, q)
            if below and a != b:
                assert not leq(spec.family, q, p)


def test_order_is_transitive():
    spec = FamilySpec(Family.BETAB, 2)
    elements = list(enumerate_family(spec))
    for p in elements:
        above = [q for q in elements if leq(spec.family, p, q)]
        for q in above:
            for r in elements:
                if leq(spec.family, q, r):
                    assert leq(spec.family, p, r)


def test_top_elements():
    assert canonical_string(top_element(FamilySpec(Family.A_FIXED, 3, 1))) == "{1*23}"
    assert canonical_string(top_element(FamilySpec(Family.MA_INTERVAL, 3, 2))) == "{1*2*3}"
    assert canonical_string(top_element(FamilySpec(Family.B_PRIME, 2))) == "{-11-22*}"
    assert top_element(FamilySpec(Family.A, 3)) is None
    P = family_poset(FamilySpec(Family.MA_INTERVAL, 3, 1))
    assert P.top is not None


class TestActions:
    """Tests for `negate` and `permute`."""

    def test_negate(self):
        p = part("{-2*2|-1*|1*}", Family.B)
        q = negate(p)
        assert canonical_string(q) == "{-22*|-1*|1*}"
        assert negate(q) == p
        with pytest.raises(ValueError):
            negate(part("{1*|2*}"))

    def test_permute(self):
        p = part("{1*2|3*}")
        assert canonical_string(permute(p, (2, 3, 1))) == "{1*|2*3}"
        assert canonical_string(permute(p, {1: 3, 2: 1, 3: 2})) == "{13*|2*}"
        with pytest.raises(ValueError):
            permute(p, (1, 1, 2))

    def test_permute_signed(self):
        p = part("{-12*|1-2*}", Family.B)
        assert canonical_string(permute(p, (2, 1))) == "{-1*2|1*-2}"

    def test_actions_preserve_order(self, pointed_b2):
        elements = pointed_b2.payload
        for p in elements:
            for q in elements:
                expected = leq(Family.B, p, q)
                assert leq(Family.B, negate(p), negate(q)) is expected
                assert leq(Family.B, permute(p, (2, 1)), permute(q, (2, 1))) is expected


def test_check_invariants_on_hand_built():
    good = PointedPartition(2, False, frozenset({Block(frozenset({1, 2}), frozenset({2}))}))
    check_invariants(Family.A, good)
    bad = PointedPartition(2, False, frozenset({Block(frozenset({1}), frozenset({2})), Block(frozenset({2}))}))
    with pytest.raises(ValueError):
        check_invariants(Family.A, bad)
    with pytest.raises(ValueError):
        check_invariants(Family.A, ExtendedTop(2))
