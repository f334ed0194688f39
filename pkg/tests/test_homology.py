"""
Tests for the homology module.
"""

from __future__ import annotations

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from pointedposets.errors import NotBounded, OutOfRange, SizeLimitExceeded
from pointedposets.homology import (
    HomologyResult,
    SimplicialComplex,
    boundary_matrices,
    check_homology_bound,
    cohen_macaulay_report,
    homology_max_n,
    interval_report,
    maximal_interval_homology,
    order_complex,
    proper_part_homology,
    reduced_homology,
    smith_normal_form,
)
from pointedposets.identities import ClosedFormSpec, expected_top_rank
from pointedposets.partitions import Family, FamilySpec, family_poset
from pointedposets.posetcore import FinitePoset, chain
from pointedposets.settings import override_settings

# six-vertex triangulation of the real projective plane
PROJECTIVE_PLANE = [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
    (1, 2, 4), (1, 3, 4), (1, 3, 5), (2, 3, 5), (2, 4, 5),
]  # fmt: skip


@pytest.fixture(scope="module")
def two_chains() -> FinitePoset:
    """Rank 3, its proper part two disjoint edges."""
    return FinitePoset.from_covers(
        list("0abcd1"), [(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5)]
    )


def oracle_invariants(matrix: list[list[int]]) -> tuple[int, ...]:
    snf = sympy_snf(sympy.Matrix(matrix), domain=sympy.ZZ)
    diagonal = [abs(int(snf[k, k])) for k in range(min(snf.shape))]
    return tuple(sorted(d for d in diagonal if d))


def rational_rank(dense: list[list[int]]) -> int:
    return sympy.Matrix(dense).rank() if dense and dense[0] else 0


class TestSmithNormalForm:
    """Tests for `smith_normal_form` against sympy."""

    @pytest.mark.parametrize(
        "matrix",
        [
            [[2, 4], [6, 8]],
            [[12, 6, 4], [3, 9, 6], [2, 16, 14]],
            [[2, 4, 4], [-6, 6, 12], [10, -4, -16]],
            [[0, 0, 0], [0, 5, 0], [0, 0, 3]],
            [[4, 0], [0, 6]],
            [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 0, 1]],
            [[7, -14, 21], [3, 5, 0], [-1, 2, 8]],
        ],
    )
    def test_against_sympy(self, matrix):
        assert smith_normal_form(matrix) == oracle_invariants(matrix)

    def test_examples(self):
        assert smith_normal_form([[2, 4], [6, 8]]) == (2, 4)
        assert smith_normal_form([[4, 0], [0, 6]]) == (2, 12)
        assert smith_normal_form([[0, 0], [0, 0], [0, 3]]) == (3,)
        assert smith_normal_form([[0, 0]]) == ()
        assert smith_normal_form([]) == ()

    def test_divisibility(self):
        factors = smith_normal_form([[6, 0, 0], [0, 10, 0], [0, 0, 15]])
        assert factors == (1, 30, 30)
        assert all(b % a == 0 for a, b in zip(factors, factors[1:]))


class TestComplexes:
    """Tests for `SimplicialComplex` and `order_complex`."""

    def test_from_facets(self):
        triangle = SimplicialComplex.from_facets([[2, 0, 1]])
        assert triangle.face_counts() == [3, 3, 1]
        assert triangle.dimension == 2
        assert triangle.reduced_euler_characteristic() == 0

    def test_empty(self):
        empty = SimplicialComplex()
        assert empty.dimension == -1
        assert reduced_homology(empty).betti == {-1: 1}

    def test_order_complex_of_chain(self):
        C = order_complex(chain(3))
        assert C.face_counts() == [3, 3, 1]
        assert C.labels == ("0", "1", "2")
        assert order_complex(chain(3), "proper").face_counts() == [1]

    def test_proper_part_needs_top(self, pointed_a3):
        with pytest.raises(NotBounded):
            order_complex(pointed_a3, "proper")
        with pytest.raises(ValueError, match="Unknown mode"):
            order_complex(pointed_a3, "open")

    def test_boundary_squares_to_zero(self, pointed_a3):
        matrices = [sympy.Matrix(m.to_dense()) for m in boundary_matrices(order_complex(pointed_a3))]
        for first, second in zip(matrices, matrices[1:]):
            assert (first * second).is_zero_matrix


class TestReducedHomology:
    """Tests for `reduced_homology`."""

    def test_boolean_lattice(self, boolean_lattice):
        result = reduced_homology(order_complex(boolean_lattice, "proper"))
        assert result.betti == {-1: 0, 0: 0, 1: 1}
        assert result.is_concentrated_in(1)
        assert result.euler_characteristic == -1

    def test_points_and_circle(self):
        points = reduced_homology(SimplicialComplex.from_facets([[0], [1], [2]]))
        assert points.betti == {-1: 0, 0: 2}
        circle = reduced_homology(SimplicialComplex.from_facets([[0, 1], [1, 2], [0, 2]]))
        assert circle.betti == {-1: 0, 0: 0, 1: 1}
        assert circle.nonzero_degrees() == [1]

    def test_contractible(self):
        result = reduced_homology(SimplicialComplex.from_facets([[0, 1, 2], [2, 3]]))
        assert result.nonzero_degrees() == []
        assert result.is_concentrated_in(0)

    def test_projective_plane_torsion(self):
        C = SimplicialComplex.from_facets(PROJECTIVE_PLANE)
        assert C.face_counts() == [6, 15, 10]
        result = reduced_homology(C)
        assert result.betti == {-1: 0, 0: 0, 1: 0, 2: 0}
        assert result.torsion[1] == (2,)
        assert not result.torsion_free
        assert not result.is_concentrated_in(1)

    def test_against_rational_ranks(self, pointed_a3):
        """Betti numbers agree with ranks computed by sympy over the rationals."""
        C = order_complex(pointed_a3)
        ranks = [rational_rank(m.to_dense()) for m in boundary_matrices(C)]
        ranks = [0] + ranks + [0]
        counts = [1] + C.face_counts()
        expected = {d: counts[d + 1] - ranks[d + 1] - ranks[d + 2] for d in range(-1, C.dimension + 1)}
        assert reduced_homology(C).betti == expected

    def test_result_helpers(self):
        result = HomologyResult({-1: 0, 0: 0, 1: 3}, {1: (), 0: ()})
        assert result.rank_in(1) == 3
        assert result.rank_in(7) == 0
        assert result.euler_characteristic == -3
        assert result.torsion_free


class TestPartitionPosets:
    """Homology of the partition posets."""

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_fixed_point_top_degree(self, n: int):
        P = family_poset(FamilySpec(Family.A_FIXED, n, 1))
        result = proper_part_homology(P, P.minimum, P.top)
        assert result.torsion_free
        assert result.is_concentrated_in(n - 3)
        assert result.rank_in(n - 3) == n ** (n - 2)

    @pytest.mark.parametrize(
        "spec,rank",
        [
            (ClosedFormSpec(Family.B_PRIME, 2), 4),
            (ClosedFormSpec(Family.B_PRIME, 3), 36),
            (ClosedFormSpec(Family.A_EXTENDED, 3), 4),
            (ClosedFormSpec(Family.A_EXTENDED, 4), 27),
            *((ClosedFormSpec(Family.MA_INTERVAL, 4, i), None) for i in range(1, 5)),
        ],
        ids=str,
    )
    def test_bounded_top_rank(self, spec: ClosedFormSpec, rank: int | None):
        """The reduced homology of the proper part sits in one degree, with rank `|χ(0)|`."""
        P = family_poset(spec.family_spec)
        degree = P.rank[P.top] - P.rank[P.minimum] - 2
        result = proper_part_homology(P, P.minimum, P.top)
        assert result.torsion_free
        assert result.is_concentrated_in(degree)
        assert result.rank_in(degree) == expected_top_rank(spec)
        if rank is not None:
            assert result.rank_in(degree) == rank

    def test_maximal_intervals_a5(self):
        found = maximal_interval_homology(family_poset(FamilySpec(Family.A, 5)))
        assert len(found) == 5
        assert all(result.is_concentrated_in(2) for _, result in found)
        assert sum(result.rank_in(2) for _, result in found) == 625

    def test_maximal_intervals(self, pointed_a3):
        found = maximal_interval_homology(pointed_a3)
        assert len(found) == 3
        assert sum(result.rank_in(0) for _, result in found) == 9

    @pytest.mark.parametrize(
        "spec",
        [
            FamilySpec(Family.A_FIXED, 4, 1),
            FamilySpec(Family.A_FIXED, 5, 1),
            FamilySpec(Family.A, 3),
            FamilySpec(Family.B_PRIME, 2),
            FamilySpec(Family.B_PRIME, 3),
            FamilySpec(Family.MA_INTERVAL, 3, 1),
            *(FamilySpec(Family.MA_INTERVAL, 4, i) for i in range(1, 5)),
            FamilySpec(Family.A_EXTENDED, 3),
            FamilySpec(Family.A_EXTENDED, 4),
        ],
        ids=str,
    )
    def test_cohen_macaulay(self, spec: FamilySpec):
        report = cohen_macaulay_report(family_poset(spec), name=str(spec))
        assert report.passed, report.detail
        assert report.checked > 0
        assert report.name == str(spec)


class TestCohenMacaulayReport:
    """Tests for `interval_report` and `cohen_macaulay_report`."""

    def test_failing_interval(self, two_chains):
        report = interval_report(two_chains, 0, 5)
        assert not report.passed
        assert report.betti == {-1: 0, 0: 1, 1: 0}
        assert report.mobius == report.euler == 1
        assert report.detail == "homology outside degree 1"
        assert (report.bottom, report.top, report.rank) == ("0", "1", 3)

    def test_failures_first(self, two_chains):
        report = cohen_macaulay_report(two_chains, name="two chains")
        assert not report.passed
        assert report.checked == 5
        assert report.detail == "1 of 5 intervals fail"
        assert report.intervals[0].name == "[0, 1]"
        assert all(r.passed for r in report.intervals[1:])

    def test_cap(self, two_chains):
        with pytest.raises(SizeLimitExceeded) as exc:
            cohen_macaulay_report(two_chains, cap=2)
        assert exc.value.size == 5


class TestHomologyBounds:
    """Tests for `homology_max_n` and `check_homology_bound`."""

    @pytest.mark.parametrize(
        "family,bound",
        [
            (Family.A, 5),
            (Family.A_FIXED, 5),
            (Family.A_EXTENDED, 4),
            (Family.MA_INTERVAL, 4),
            (Family.B_PRIME, 3),
            (Family.BETAB_INTERVAL, 3),
        ],
    )
    def test_defaults(self, family: Family, bound: int):
        assert homology_max_n(family) == bound

    def test_within_bound(self):
        check_homology_bound(FamilySpec(Family.A_FIXED, 5, 1))
        check_homology_bound(FamilySpec(Family.B_PRIME, 3))

    def test_above_bound(self):
        with pytest.raises(OutOfRange, match="homology bound n <= 3"):
            check_homology_bound(FamilySpec(Family.B_PRIME, 4))

    def test_bound_follows_settings(self):
        with override_settings(homology_a_max_n=2):
            assert homology_max_n(Family.A_FIXED) == 2
            with pytest.raises(OutOfRange):
                check_homology_bound(FamilySpec(Family.A_FIXED, 3, 1))
        check_homology_bound(FamilySpec(Family.A_FIXED, 3, 1))
