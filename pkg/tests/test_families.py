"""Family constructions against independent enumeration checks."""

from fractions import Fraction
from itertools import combinations

import pytest

from amls.combinatorics import hyper_tail, kappa
from amls.families import (
    LimitExceededError,
    SetFamily,
    build_covering,
    build_intersection_family,
    family_from_text,
    family_size_bound,
    family_to_text,
    verify_family,
)


def weak_ok(n, p, r, members) -> bool:
    return all(
        any(len(set(target) & set(m)) >= r for m in members)
        for target in combinations(range(n), p)
    )


def strong_ok(n, p, r, members) -> bool:
    return all(
        any(len(set(target) & set(m)) == r for m in members)
        for target in combinations(range(n), p)
    )


def covering_ok(n, k, members) -> bool:
    return all(
        any(set(target) <= set(m) for m in members)
        for target in combinations(range(n), k)
    )


INTERSECTION_PARAMS = [
    (4, 2, 2, 1, False),
    (4, 2, 2, 1, True),
    (5, 2, 2, 2, False),
    (5, 2, 2, 2, True),
    (6, 3, 3, 2, False),
    (7, 3, 4, 2, False),
    (8, 4, 4, 2, True),
    (9, 4, 3, 2, False),
    (10, 5, 4, 2, False),
    (11, 4, 5, 3, True),
    (12, 6, 5, 3, False),
]

COVERING_PARAMS = [(4, 3, 2), (5, 3, 1), (5, 4, 2), (6, 4, 2), (7, 7, 3),
                   (8, 5, 3), (10, 6, 2), (12, 12, 4), (12, 7, 3)]


class TestIntersectionFamilies:
    def test_small_weak_family_is_optimal(self):
        family = build_intersection_family(4, 2, 2, 1)
        assert len(family.members) == 2
        assert weak_ok(4, 2, 1, family.members)

    def test_full_universe_member(self):
        # q = n is inside the allowed range only when r = p
        family = build_intersection_family(6, 3, 6, 3)
        assert family.members == ((0, 1, 2, 3, 4, 5),)
        assert weak_ok(6, 3, 3, family.members)

    def test_strong_equality_forces_all_pairs(self):
        family = build_intersection_family(5, 2, 2, 2, strong=True)
        assert len(family.members) == 10
        assert strong_ok(5, 2, 2, family.members)

    @pytest.mark.parametrize("n,p,q,r,strong", INTERSECTION_PARAMS)
    def test_constructions_are_valid(self, n, p, q, r, strong):
        family = build_intersection_family(n, p, q, r, strong=strong)
        checker = strong_ok if strong else weak_ok
        assert checker(n, p, r, family.members)
        assert all(len(m) == q for m in family.members)
        assert verify_family(family)
        assert family.verified

    @pytest.mark.parametrize("n,p,q,r,strong", INTERSECTION_PARAMS)
    def test_greedy_respects_size_bound(self, n, p, q, r, strong):
        family = build_intersection_family(n, p, q, r, strong=strong)
        assert len(family.members) <= family_size_bound(n, p, q, r)

    def test_strong_families_are_weak(self):
        for n, p, q, r in [(6, 3, 3, 2), (8, 4, 4, 2), (7, 3, 4, 2)]:
            strong = build_intersection_family(n, p, q, r, strong=True)
            assert weak_ok(n, p, r, strong.members)

    def test_r_equals_q_is_a_reverse_covering(self):
        # members X with |T cap X| >= q=|X| are exactly the X contained in T,
        # i.e. complements form a covering of the complements
        family = build_intersection_family(6, 4, 3, 3)
        universe = set(range(6))
        complements = [tuple(sorted(universe - set(m))) for m in family.members]
        assert covering_ok(6, 6 - 4, complements)

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            build_intersection_family(4, 5, 2, 1)
        with pytest.raises(ValueError):
            build_intersection_family(6, 3, 5, 1)  # q > n - p + r
        with pytest.raises(ValueError):
            build_intersection_family(4, 2, 2, 0)
        with pytest.raises(LimitExceededError):
            build_intersection_family(15, 3, 3, 2, limit=14)


class TestCoverings:
    def test_4_3_2_needs_three_members(self):
        family = build_covering(4, 3, 2)
        assert len(family.members) == 3
        assert covering_ok(4, 2, family.members)
        # exhaustively: no two 3-subsets of [4] cover all six pairs
        triples = list(combinations(range(4), 3))
        assert not any(
            covering_ok(4, 2, [a, b]) for a, b in combinations(triples, 2)
        )

    def test_full_set_degenerate(self):
        family = build_covering(6, 6, 3)
        assert family.members == ((0, 1, 2, 3, 4, 5),)

    def test_all_subsets_degenerate(self):
        family = build_covering(5, 2, 2)
        assert family.members == tuple(combinations(range(5), 2))

    def test_singletons_need_two_triples(self):
        family = build_covering(5, 3, 1)
        assert len(family.members) == 2
        assert covering_ok(5, 1, family.members)

    @pytest.mark.parametrize("n,t,k", COVERING_PARAMS)
    def test_constructions_are_valid(self, n, t, k):
        family = build_covering(n, t, k)
        assert covering_ok(n, k, family.members)
        assert all(len(m) == t for m in family.members)
        assert verify_family(family)

    def test_zero_subset_targets(self):
        # the empty set is contained in any member: one suffices
        family = build_covering(5, 3, 0)
        assert family.members == ((0, 1, 2),)
        assert build_covering(6, 0, 0).members == ((),)

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            build_covering(4, 2, 3)  # k > t
        with pytest.raises(LimitExceededError):
            build_covering(20, 10, 3, limit=14)


class TestVerifyFamily:
    def test_accepts_valid(self):
        family = build_intersection_family(4, 2, 2, 1)
        assert verify_family(family)

    def test_rejects_incomplete(self):
        bad = SetFamily(
            n=4, member_size=2, members=((0, 1),), kind="intersection_weak",
            params=(2, 2, 1),
        )
        assert not verify_family(bad)
        assert not bad.verified

    def test_rejects_malformed_members(self):
        bad = SetFamily(
            n=4, member_size=2, members=((0, 5),), kind="covering", params=(2, 1),
        )
        assert not verify_family(bad)

    def test_limit(self):
        big = SetFamily(
            n=17, member_size=1, members=((0,),), kind="covering", params=(1, 0),
        )
        with pytest.raises(LimitExceededError):
            verify_family(big)


class TestSizeBound:
    def test_reference_value(self):
        # kappa = 3/2, bound = 1.5 * 3 * ln(4) * (1 + ln 6)
        import math

        expected = 1.5 * 3 * math.log(4) * (1 + math.log(6))
        assert family_size_bound(4, 2, 2, 1) == pytest.approx(expected, rel=1e-12)

    def test_kappa_reciprocal_identity(self):
        assert kappa(5, 2, 2, 2) == 1 / hyper_tail(5, 2, 2, 2)
        assert Fraction(1) / kappa(8, 3, 4, 2) == hyper_tail(8, 3, 4, 2) - hyper_tail(
            8, 3, 4, 3
        )


class TestSerialization:
    @pytest.mark.parametrize("n,t,k", [(4, 3, 2), (6, 4, 2), (5, 3, 1)])
    def test_covering_round_trip_is_bit_exact(self, n, t, k):
        family = build_covering(n, t, k)
        text = family_to_text(family)
        parsed = family_from_text(text)
        assert parsed.members == family.members
        assert parsed.params == family.params
        assert parsed.kind == family.kind
        assert family_to_text(parsed) == text

    def test_intersection_round_trip(self):
        family = build_intersection_family(7, 3, 4, 2, strong=True)
        parsed = family_from_text(family_to_text(family))
        assert parsed == family  # verified flag is excluded from equality

    def test_header_format(self):
        family = build_covering(4, 3, 2)
        first = family_to_text(family).splitlines()[0]
        assert first == "family covering n=4 q=3 params=3,2"

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            family_from_text("")
        with pytest.raises(ValueError):
            family_from_text("family covering n=x q=3 params=3,2\n")
        with pytest.raises(ValueError):
            family_from_text("not a family\n0 1\n")
        with pytest.raises(ValueError):
            family_from_text("family sideways n=4 q=3 params=3,2\n")
