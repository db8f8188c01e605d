import itertools
import random

import pytest
from hypothesis import given, strategies as st

from oracles import brute_is_switchable, brute_switchable_sets
from shankel.indices import Shape, equivalence_class, hamming, s_equivalent
from shankel.switchable import (
    EnumerationBoundExceeded,
    PreconditionError,
    SwitchableSet,
    catalog_maximal,
    catalog_switchable,
    check_avoiding_path,
    closure_mask,
    connected_components,
    enumerate_switchable,
    enumerate_switchable_brute,
    is_switchable,
    maximal_switchable,
    path_avoiding_component,
    path_s_equivalence,
    shortest_path,
)

BRUTE_SHAPES = [Shape((2, 2, 2), 3, 3), Shape((2, 2, 2), 2, 2), Shape((2, 2, 2), 2, 1),
                Shape((2, 2, 2), 1, 1), Shape((2, 3), 1, 1), Shape((2, 3), 2, 2),
                Shape((3, 3), 2, 2)]


def members(sets):
    return {frozenset(S.members) for S in sets}


@pytest.mark.parametrize("sh", BRUTE_SHAPES, ids=str)
def test_enumeration_matches_subset_brute_force(sh):
    assert members(enumerate_switchable(sh)) == set(brute_switchable_sets(sh))


@pytest.mark.parametrize("sh", [Shape((2, 2, 3), 2, 2), Shape((2, 2, 2, 2), 3, 3),
                                Shape((2, 3, 2), 2, 1), Shape((3, 3, 3), 3, 3)], ids=str)
def test_enumeration_matches_class_brute_force(sh):
    fast = enumerate_switchable(sh)
    assert fast == enumerate_switchable_brute(sh)
    assert all(brute_is_switchable(S.members, sh) for S in fast)


def test_counts():
    assert len(enumerate_switchable(Shape((2, 2, 2), 3, 3))) == 5
    assert len(enumerate_switchable(Shape((2, 2, 2), 2, 2))) == 12
    assert len(enumerate_switchable(Shape((2, 2, 2, 2), 3, 3))) == 19


@pytest.mark.parametrize("sh", [Shape((2, 2, 2), 3, 3), Shape((3, 3, 3), 3, 3),
                                Shape((2, 2, 2), 2, 2), Shape((2, 2, 3), 2, 2),
                                Shape((2, 3, 2), 2, 1), Shape((2, 2, 2, 2), 3, 3),
                                Shape((2, 2, 2, 3), 3, 3)], ids=str)
def test_catalog_equals_enumeration(sh):
    assert catalog_switchable(sh) == enumerate_switchable(sh)


def test_catalog_not_applicable():
    assert catalog_switchable(Shape((2, 2, 2), 1, 1)) is None
    assert catalog_maximal(Shape((2, 2, 2, 2), 2, 2)) is None


@pytest.mark.parametrize("sh", [Shape((2, 2, 2), 3, 3), Shape((2, 2, 2), 2, 2),
                                Shape((2, 2, 3), 2, 2), Shape((2, 2, 2, 2), 3, 3)], ids=str)
def test_maximal_catalog(sh):
    assert sorted(maximal_switchable(sh), key=SwitchableSet.sort_key) == \
        sorted(catalog_maximal(sh), key=SwitchableSet.sort_key)


def test_maximal_examples():
    sh = Shape((2, 2, 2), 3, 3)
    got = members(maximal_switchable(sh))
    assert got == {frozenset(sh.indices()), frozenset({(1, 1, 1), (2, 2, 2)})}
    assert len(maximal_switchable(Shape((2, 2, 2), 2, 2))) == 3
    assert len(maximal_switchable(Shape((2, 2, 2, 2), 3, 3))) == 2


@pytest.mark.parametrize("sh", [Shape((2, 2, 2, 2), 3, 3), Shape((2, 2, 3), 2, 2)], ids=str)
def test_is_switchable_matches_raw_rules_on_class_unions(sh):
    classes = [equivalence_class(v, sh) for v in SwitchableSet.full(sh).variables]
    rng = random.Random(5)
    for _ in range(300):
        chosen = [c for c in classes if rng.random() < 0.5]
        idx = [a for c in chosen for a in c]
        assert is_switchable(idx, sh) == brute_is_switchable(idx, sh)
    extra = [(1, 1, 1, 1)] + [a for a in sh.indices() if a[-1] == 2]
    if sh.n == 4:
        assert not is_switchable(extra, sh)


def test_is_switchable_examples():
    sh = Shape((2, 2, 2), 3, 3)
    assert is_switchable([], sh)
    assert is_switchable(sh.indices(), sh)
    assert is_switchable([(1, 1, 1), (2, 2, 2)], sh)
    sh2 = Shape((2, 2, 2), 2, 2)
    assert not is_switchable(equivalence_class((2, 1, 1), sh2), sh2)
    # not closed under equivalence
    assert not is_switchable([(1, 2, 1)], sh2)


def test_from_members_checks():
    sh = Shape((2, 2, 2), 2, 2)
    with pytest.raises(ValueError):
        SwitchableSet.from_members(sh, [(1, 2, 1), (2, 1, 1)])


def test_enumeration_bound():
    with pytest.raises(EnumerationBoundExceeded):
        enumerate_switchable(Shape((2, 2, 3), 2, 2), bound=3)


@pytest.mark.parametrize("sh", [Shape((2, 2, 2), 2, 2), Shape((2, 2, 3), 2, 2)], ids=str)
def test_closure_is_a_closure_operator(sh):
    m = len(SwitchableSet.full(sh).variables)
    rng = random.Random(1)
    for _ in range(100):
        A = rng.getrandbits(m)
        B = A | rng.getrandbits(m)
        cA, cB = closure_mask(A, sh), closure_mask(B, sh)
        assert cA & A == A
        assert closure_mask(cA, sh) == cA
        assert cA & cB == cA
        assert is_switchable(SwitchableSet(sh, cA).members, sh)


def test_components():
    sh = Shape((2, 2, 2), 3, 3)
    assert len(connected_components(SwitchableSet.full(sh))) == 1
    S = SwitchableSet.from_members(sh, [(1, 1, 1), (2, 2, 2)])
    assert [sorted(C.members) for C in connected_components(S)] in (
        [[(1, 1, 1)], [(2, 2, 2)]], [[(2, 2, 2)], [(1, 1, 1)]])


def test_equivalent_indices_are_connected():
    # s-equivalence implies connectedness inside any switchable set
    for sh in [Shape((2, 2, 2), 2, 2), Shape((2, 2, 3), 2, 2), Shape((3, 3, 3), 3, 3)]:
        for S in enumerate_switchable(sh):
            for a, b in itertools.combinations(sorted(S.members), 2):
                if s_equivalent(a, b, sh):
                    assert S.connected(a, b)


def _valid_equivalence_path(path, a, b, S):
    return (path[0] == a and path[-1] == b and all(x in S for x in path)
            and all(hamming(x, y) == 1 for x, y in zip(path, path[1:])))


def test_path_s_equivalence_examples():
    sh = Shape((2, 2, 2), 2, 2)
    full = SwitchableSet.full(sh)
    assert path_s_equivalence((1, 2, 1), (1, 2, 1), full) == [(1, 2, 1)]
    p = path_s_equivalence((1, 2, 1), (2, 1, 1), full)
    assert len(p) == 3 and _valid_equivalence_path(p, (1, 2, 1), (2, 1, 1), full)
    with pytest.raises(PreconditionError):
        path_s_equivalence((1, 1, 1), (2, 1, 1), full)


@pytest.mark.parametrize("sh", [Shape((2, 2, 2), 2, 2), Shape((2, 2, 3), 2, 2),
                                Shape((3, 3, 3), 3, 3), Shape((2, 3, 2), 2, 1),
                                Shape((3, 2, 2), 3, 3)], ids=str)
def test_path_s_equivalence_all_pairs(sh):
    for S in enumerate_switchable(sh):
        for C in S.classes:
            for a, b in itertools.product(sorted(C.members), repeat=2):
                if s_equivalent(a, b, sh):
                    assert _valid_equivalence_path(path_s_equivalence(a, b, S), a, b, S)


def test_path_avoiding_component_examples():
    sh = Shape((2, 2, 2), 3, 3)
    full = SwitchableSet.full(sh)
    p = path_avoiding_component((1, 1, 1), (2, 2, 2), 1, full)
    # any member of the class of (1,2,1) is an equally valid second step
    assert len(p) == 2 and s_equivalent(p[1], (1, 2, 1), sh)
    assert check_avoiding_path(p, (2, 2, 2), 1, full)
    assert path_avoiding_component((1, 1, 1), (2, 2, 1), 1, full) == [(1, 1, 1)]
    with pytest.raises(PreconditionError):
        path_avoiding_component((1, 1, 1), (2, 1, 1), 1, full)


@pytest.mark.parametrize("sh", [Shape((2, 2, 2), 3, 3), Shape((2, 2, 2), 2, 2),
                                Shape((2, 2, 3), 2, 2), Shape((2, 3, 2), 2, 1)], ids=str)
def test_path_avoiding_component_all_inputs(sh):
    for S in enumerate_switchable(sh):
        for C in S.classes:
            for a, b in itertools.permutations(sorted(C.members), 2):
                if hamming(a, b) < 2:
                    continue
                for i in range(1, sh.t + 1):
                    if a[i - 1] != b[i - 1]:
                        p = path_avoiding_component(a, b, i, S)
                        assert p[0] == a and check_avoiding_path(p, b, i, S)


def test_shortest_path_is_shortest():
    sh = Shape((2, 2, 2), 2, 2)
    full = SwitchableSet.full(sh)
    for a, b in itertools.product(sh.indices(), repeat=2):
        assert len(shortest_path(a, b, full.members)) == hamming(a, b) + 1


@given(st.integers(0, 2 ** 9 - 1))
def test_order_is_inclusion(mask):
    sh = Shape((2, 2, 3), 2, 2)
    A = SwitchableSet(sh, closure_mask(mask, sh))
    B = SwitchableSet(sh, closure_mask(mask | 1, sh))
    assert A <= B and (A < B) == (A != B)
    assert set(A.members) <= set(B.members)
