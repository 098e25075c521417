"""Squashed-order toolkit against brute-force oracles and known values."""

import itertools
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orient4.errors import UsageError
from orient4.sperner import (KSubset, disjoint_pair_matching,
                             family_of, first_m, is_antichain,
                             is_cross_intersecting, kappa, kappa_star,
                             kappa_star_threshold, last_m, shade, shadow,
                             shadow_size_kkt, squashed_compare, squashed_level,
                             squashed_rank, squashed_unrank)


# ----------------------------------------------------------------------------
# brute-force oracles
# ----------------------------------------------------------------------------

def brute_shadow(sets):
    out = set()
    for s in sets:
        for x in s:
            out.add(frozenset(s) - {x})
    return out


def brute_shade(sets, n):
    out = set()
    for s in sets:
        for x in range(1, n + 1):
            if x not in s:
                out.add(frozenset(s) | {x})
    return out


def all_subfamilies(level):
    for r in range(len(level) + 1):
        yield from itertools.combinations(level, r)


def sets_of(fam):
    return [set(s.members) for s in fam]


# ----------------------------------------------------------------------------
# squashed order
# ----------------------------------------------------------------------------

def test_squashed_listing_n5_k3():
    listing = [tuple(sorted(f)) for f in squashed_level(5, 3)]
    assert listing == [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4), (1, 2, 5),
                       (1, 3, 5), (2, 3, 5), (1, 4, 5), (2, 4, 5), (3, 4, 5)]


def test_squashed_compare_examples():
    a = KSubset(5, frozenset({1, 2, 3}))
    b = KSubset(5, frozenset({1, 2, 4}))
    assert squashed_compare(a, b) == -1
    c = KSubset(5, frozenset({2, 3, 5}))
    assert squashed_compare(c, c) == 0
    d = KSubset(5, frozenset({1, 4, 5}))
    e = KSubset(5, frozenset({2, 3, 4}))
    assert squashed_compare(d, e) == 1


def test_squashed_compare_preconditions():
    with pytest.raises(UsageError):
        squashed_compare(KSubset(5, frozenset({1})), KSubset(4, frozenset({1})))
    with pytest.raises(UsageError):
        squashed_compare(KSubset(5, frozenset({1})),
                         KSubset(5, frozenset({1, 2})))


@given(st.integers(1, 7), st.data())
@settings(max_examples=80, deadline=None)
def test_rank_unrank_roundtrip(n, data):
    k = data.draw(st.integers(0, n))
    r = data.draw(st.integers(0, comb(n, k) - 1))
    members = squashed_unrank(r, k)
    assert len(members) == k
    assert squashed_rank(members) == r


@given(st.integers(2, 6), st.data())
@settings(max_examples=80, deadline=None)
def test_compare_matches_rank_order(n, data):
    k = data.draw(st.integers(1, n))
    level = squashed_level(n, k)
    i = data.draw(st.integers(0, len(level) - 1))
    j = data.draw(st.integers(0, len(level) - 1))
    cmp = squashed_compare(KSubset(n, level[i]), KSubset(n, level[j]))
    assert cmp == (i > j) - (i < j)


# ----------------------------------------------------------------------------
# initial / final segments
# ----------------------------------------------------------------------------

def test_first_m_examples():
    fam = first_m(5, 3, 4)
    assert [s.sorted_members() for s in fam] == \
        [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
    assert len(first_m(6, 2, 0)) == 0


def test_last_m_example():
    fam = last_m(6, 3, 13)
    listing = [s.sorted_members() for s in fam]
    assert listing[0] == (1, 4, 5)
    assert listing[1] == (2, 4, 5)
    assert listing[-1] == (4, 5, 6)
    assert len(listing) == 13


def test_first_last_partition_level():
    for n in range(1, 7):
        for k in range(n + 1):
            total = comb(n, k)
            for m in range(total + 1):
                f = {s.members for s in first_m(n, k, m)}
                l = {s.members for s in last_m(n, k, total - m)}
                assert not (f & l)
                assert len(f | l) == total


def test_segment_range_check():
    with pytest.raises(UsageError):
        first_m(5, 2, 11)
    with pytest.raises(UsageError):
        last_m(5, 2, -1)


# ----------------------------------------------------------------------------
# shadow / shade
# ----------------------------------------------------------------------------

def test_shadow_single_set():
    fam = family_of(5, [{1, 2, 3}])
    assert {s.members for s in shadow(fam)} == \
        {frozenset({1, 2}), frozenset({1, 3}), frozenset({2, 3})}


def test_shadow_of_first_four():
    got = {s.members for s in shadow(first_m(5, 3, 4))}
    assert got == brute_shadow([f.members for f in first_m(5, 3, 4)])
    assert got == {frozenset(c) for c in itertools.combinations(range(1, 5), 2)}


def test_shade_complement_of_last13():
    grown = {s.members for s in shade(last_m(6, 3, 13))}
    level4 = {frozenset(c) for c in itertools.combinations(range(1, 7), 4)}
    assert level4 - grown == {frozenset({1, 2, 3, 4}), frozenset({1, 2, 3, 5})}


def test_shadow_rejects_mixed_family():
    with pytest.raises(UsageError):
        shadow(family_of(4, [{1}, {1, 2}]))


def test_shadow_output_sorted_squashed():
    sh = shadow(last_m(6, 3, 7))
    ranks = [squashed_rank(s.members) for s in sh]
    assert ranks == sorted(ranks)


# ----------------------------------------------------------------------------
# cascade shadow size and kappa
# ----------------------------------------------------------------------------

def test_cascade_examples():
    assert shadow_size_kkt(5, 3, 4) == 6
    assert shadow_size_kkt(6, 3, 0) == 0
    assert shadow_size_kkt(6, 3, 13) == 13


def test_cascade_matches_brute_small():
    for n in range(1, 7):
        for k in range(1, n + 1):
            for m in range(comb(n, k) + 1):
                fam = first_m(n, k, m)
                assert shadow_size_kkt(n, k, m) == \
                    len(brute_shadow([s.members for s in fam]))


def test_kkt_is_a_lower_bound_exhaustively():
    # every uniform family on a ground set of size <= 5
    for n in range(2, 6):
        for k in range(1, n + 1):
            level = squashed_level(n, k)
            for fam in all_subfamilies(level):
                assert len(brute_shadow(fam)) >= shadow_size_kkt(n, k, len(fam))


def test_shadow_equals_shade_of_reversed_segment():
    for n in range(1, 7):
        for k in range(1, n):
            for m in range(comb(n, k) + 1):
                lhs = len(shadow(first_m(n, k, m))) if m else 0
                rhs = len(shade(last_m(n, n - k, m))) if m else 0
                assert lhs == rhs


def test_kappa_values():
    assert kappa(6, 3, 13) == 0
    assert kappa(6, 3, 0) == 0
    assert kappa_star(4, 2, 4) == 0


def test_kappa_star_threshold_and_monotone():
    for n in (4, 6):
        r = n // 2
        thresh = kappa_star_threshold(n)
        prev = 0
        for m in range(comb(n, r) + 1):
            ks = kappa_star(n, r, m)
            assert ks <= 0
            assert ks <= prev
            if m < thresh:
                assert ks == 0
            prev = ks
        # once past the threshold the minimum goes strictly negative
        if thresh <= comb(n, r):
            assert kappa_star(n, r, thresh) < 0


# ----------------------------------------------------------------------------
# antichains / cross-intersecting families
# ----------------------------------------------------------------------------

def all_antichains(n):
    ground = list(range(1, n + 1))
    subsets = [frozenset(c) for r in range(n + 1)
               for c in itertools.combinations(ground, r)]
    out = []
    for pick in range(1 << len(subsets)):
        fam = [subsets[i] for i in range(len(subsets)) if (pick >> i) & 1]
        if all(not (a <= b) for a in fam for b in fam if a is not b):
            out.append(fam)
    return out


def test_antichain_predicate():
    assert is_antichain(family_of(4, itertools.combinations(range(1, 5), 2)))
    assert not is_antichain(family_of(4, [{1}, {1, 2}]))
    assert is_antichain(family_of(4, []))


def test_cross_intersecting_middle_levels_n3():
    mid = family_of(3, itertools.combinations(range(1, 4), 2))
    assert is_cross_intersecting(mid, mid)


def test_sperner_bound_exhaustive():
    for n in (2, 3, 4):
        best = max(len(f) for f in all_antichains(n))
        assert best == comb(n, n // 2)


def test_cross_intersecting_maximum_exhaustive():
    # the maximum of |A| + |B| over cross-intersecting antichain pairs,
    # computed by exhaustion, matches the two-middle-binomial formula
    for n, expected in ((3, 6), (4, 10)):
        chains = all_antichains(n)
        best = 0
        for fa in chains:
            for fb in chains:
                if all(a & b for a in fa for b in fb):
                    best = max(best, len(fa) + len(fb))
        assert best == comb(n, (n + 1) // 2) + comb(n, (n + 2) // 2)
        assert best == expected


def test_disjoint_pair_matching():
    a = family_of(4, [{1, 2}])
    b = family_of(4, [{3, 4}])
    assert disjoint_pair_matching(a, b) == 1

    a = family_of(4, itertools.combinations(range(1, 5), 2))
    b = family_of(4, itertools.combinations(range(1, 5), 3))
    assert disjoint_pair_matching(a, b) == 0

    # {1,3} meets {3,4}, so this pair still forms a matching of size 1
    a = family_of(4, [{1, 2}, {1, 3}])
    b = family_of(4, [{3, 4}])
    assert disjoint_pair_matching(a, b) == 1

    # two left sets disjoint from the same right set: not a matching
    a = family_of(4, [{1, 2}, {2}])
    b = family_of(4, [{3, 4}])
    assert disjoint_pair_matching(a, b) is None
