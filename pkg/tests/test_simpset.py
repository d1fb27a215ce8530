import itertools
from math import comb

import pytest

from grset.aset import LinearASet, is_isomorphic, tensor
from grset.genring import make_F, make_from_rig
from grset.rigs import zmod
from grset.simpset import (RangeError, check_simplicial, constant, identity_map, is_free_map, levelwise_tensor,
                           make_std, phi_star, phi_star_map, pushout_product, simp_maps, simplex_count,
                           simplicial_hom, std_inclusion, zero_map)

Z2 = make_from_rig(zmod(2))
Z6 = make_from_rig(zmod(6))


def brute_monotone(m, n):
    return sum(1 for v in itertools.product(range(n + 1), repeat=m + 1) if list(v) == sorted(v))


@pytest.mark.parametrize("n", range(4))
def test_simplex_counts(n):
    X = make_std("delta", n, 3)
    for m in range(4):
        assert simplex_count(n, m) == brute_monotone(m, n) == X.sset.levels[m].size - 1
        assert X.counts()[m] == comb(n + 1, m + 1)


@pytest.mark.parametrize("n", range(1, 4))
def test_boundary_and_horn_counts(n):
    bd = make_std("boundary", n, 3)
    assert bd.counts() == [comb(n + 1, m + 1) if m < n else 0 for m in range(4)]
    for k in range(n + 1):
        horn = make_std("horn", n, 3, k)
        want = [comb(n + 1, m + 1) if m < n - 1 else (n if m == n - 1 else 0) for m in range(4)]
        assert horn.counts() == want


def test_standard_complexes_satisfy_simplicial_identities():
    for X in (make_std("delta", 2, 3), make_std("boundary", 2, 3), make_std("horn", 2, 3, 1)):
        assert check_simplicial(X.sset) == []
    sub, whole = make_std("boundary", 2, 3), make_std("delta", 2, 3)
    assert std_inclusion(sub, whole).is_valid()


def test_range_errors():
    with pytest.raises(RangeError):
        make_std("horn", 2, 3, 5)
    with pytest.raises(RangeError):
        make_std("cube", 1, 2)
    with pytest.raises(RangeError):
        simplicial_hom(make_std("delta", 0, 2).sset, make_std("delta", 0, 2).sset, 2)


def test_maps_out_of_a_simplex_are_its_top_simplices():
    X = make_std("boundary", 2, 2).sset
    for n in (0, 1):
        assert len(simp_maps(make_std("delta", n, 2).sset, X)) == X.levels[n].size


def test_base_change_is_levelwise_free():
    K = make_std("delta", 1, 2).sset
    Y = phi_star(K, Z2)
    assert Y.sizes() == [2 ** (s - 1) for s in K.sizes()]
    assert check_simplicial(Y) == []
    f = phi_star_map(std_inclusion(make_std("boundary", 1, 2), make_std("delta", 1, 2)), Z2)
    assert f.is_valid()


def test_levelwise_tensor_of_pointed_complexes():
    X, Y = make_std("delta", 1, 2).sset, make_std("delta", 0, 2).sset
    T = levelwise_tensor(X, Y).sset
    assert T.sizes() == [(a - 1) * (b - 1) + 1 for a, b in zip(X.sizes(), Y.sizes())]
    assert check_simplicial(T) == []


def test_levelwise_tensor_of_constant_modules():
    M = LinearASet.zmod_module(Z6, (2,))
    N = LinearASet.zmod_module(Z6, (3,))
    T = levelwise_tensor(constant(M, 1), constant(N, 1)).sset
    assert T.sizes() == [1, 1]
    assert is_isomorphic(T.levels[0], tensor(M, N).aset)


def test_hom_at_level_zero_counts_maps():
    # each vertex of the boundary goes to a vertex of the edge or to the basepoint
    X = make_std("boundary", 1, 2).sset
    Y = make_std("delta", 1, 2).sset
    assert simplicial_hom(X, Y, 0).size == len(simp_maps(X, Y)) == 3 ** 2


def test_free_maps():
    bd, delta = make_std("boundary", 2, 2), make_std("delta", 2, 2)
    w = is_free_map(std_inclusion(bd, delta))
    assert w.free and [len(V) for V in w.generators] == [0, 0, 1]
    assert is_free_map(identity_map(delta.sset)).generators == [[], [], []]
    over = phi_star_map(std_inclusion(make_std("boundary", 1, 1), make_std("delta", 1, 1)), Z2)
    w = is_free_map(over)
    assert w.free and [len(V) for V in w.generators] == [0, 1]


def test_non_free_map():
    """``Z/2`` is not free over ``Z/6``, so ``0 -> const(Z/2)`` cannot split."""
    M = constant(LinearASet.zmod_module(Z6, (2,)), 1)
    w = is_free_map(zero_map(M))
    assert not w.free and w.failed_level == 0


def test_pushout_product_of_boundary_inclusions_is_free():
    i = std_inclusion(make_std("boundary", 1, 2), make_std("delta", 1, 2))
    j = std_inclusion(make_std("boundary", 0, 2), make_std("delta", 0, 2))
    P = pushout_product(i, j)
    assert not P.provisional
    assert P.map.is_valid()
    assert is_free_map(P.map).free


def test_pointed_simplicial_sets_are_over_F():
    assert make_std("delta", 0, 1).sset.ring.name == make_F().name
