import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grset.aset import (ASet, ASetMap, LinearASet, PointedSetASet, RingASet, _tuple_codes, check_aset_axioms,
                        coproduct, enumerate_homs, extend_scalars, find_isomorphism, free_aset, induced_map,
                        internal_hom, is_isomorphic, pushout, restrict_scalars, tensor, universal_extension)
from grset.genring import coefficient_hom, identity_hom, make_F, make_F_monoid, make_from_rig, unit_hom
from grset.rigs import FiniteMonoid, boolean, tropical01, zmod

F = make_F()
B = make_from_rig(boolean())
Z2 = make_from_rig(zmod(2))
Z6 = make_from_rig(zmod(6))
TO2 = coefficient_hom(Z6, Z2, {x: x % 2 for x in range(6)})


def pointed(k):
    return PointedSetASet(F, k)


@pytest.mark.parametrize("A", [F, B, Z2, Z6, make_from_rig(tropical01()), make_F_monoid(FiniteMonoid.cyclic(2))],
                         ids=lambda A: A.name)
def test_ring_as_aset_passes(A):
    assert check_aset_axioms(RingASet(A)).passed


def test_pointed_sets_and_modules_pass():
    for k in range(4):
        assert check_aset_axioms(pointed(k)).passed
    assert check_aset_axioms(LinearASet.zmod_module(Z2, (2, 2))).passed


def test_free_sizes():
    for k in range(4):
        assert free_aset(F, k).aset.size == k + 1
    assert free_aset(Z2, 2).aset.size == 4
    for A in (F, B, Z6):
        C = free_aset(A, 1)
        assert C.stabilized
        assert is_isomorphic(C.aset, RingASet(A))


def test_free_object_passes_axioms():
    assert check_aset_axioms(free_aset(B, 2).aset).passed


def test_universal_extension():
    C = free_aset(Z2, 2)
    M = LinearASet.zmod_module(Z2, (2,))
    assert len(enumerate_homs(C.aset, M)) == M.size ** 2 == 4
    ident = universal_extension(C, C.maps["unit"], C.aset)
    assert ident.images == tuple(range(C.aset.size))
    CF = free_aset(F, 2)
    target = pointed(2)
    maps = {universal_extension(CF, imgs, target).images for imgs in itertools.product(range(3), repeat=2)}
    assert len(maps) == len(enumerate_homs(CF.aset, target)) == 9


def test_restrict_scalars():
    N = LinearASet.zmod_module(Z6, (6,))
    same = restrict_scalars(identity_hom(Z6), N)
    assert np.array_equal(same.table(2), N.table(2))
    phi = unit_hom(B)
    down = restrict_scalars(phi, RingASet(B))
    assert np.array_equal(down.table(2), PointedSetASet(phi.source, 1).table(2))
    Z2_over_Z6 = restrict_scalars(TO2, RingASet(Z2))
    assert is_isomorphic(Z2_over_Z6, LinearASet.zmod_module(Z6, (2,)))


def test_extend_scalars():
    M = LinearASet.zmod_module(Z6, (6,))
    assert is_isomorphic(extend_scalars(identity_hom(Z6), M).aset, M)
    phi = unit_hom(Z2)
    up = extend_scalars(phi, PointedSetASet(phi.source, 2)).aset
    assert up.size == 4
    assert is_isomorphic(up, LinearASet.free_module(Z2, 2))
    psi = unit_hom(B)
    M2 = PointedSetASet(psi.source, 1)
    assert len(enumerate_homs(extend_scalars(psi, M2).aset, RingASet(B))) == \
        len(enumerate_homs(M2, restrict_scalars(psi, RingASet(B))))


def test_tensor_examples():
    for p, q in itertools.product(range(1, 4), repeat=2):
        assert tensor(pointed(p), pointed(q)).aset.size == p * q + 1
    for A, M in [(B, RingASet(B)), (Z6, LinearASet.zmod_module(Z6, (2,))), (Z6, LinearASet.zmod_module(Z6, (3,)))]:
        assert is_isomorphic(tensor(RingASet(A), M).aset, M)
    T = tensor(LinearASet.zmod_module(Z2, (2, 2)), LinearASet.zmod_module(Z2, (2,)))
    assert is_isomorphic(T.aset, LinearASet.zmod_module(Z2, (2, 2)))


def test_internal_hom_examples():
    N = LinearASet.zmod_module(Z6, (2, 3))
    assert is_isomorphic(internal_hom(RingASet(Z6), N), N)
    assert internal_hom(LinearASet.zmod_module(Z2, (2, 2)), LinearASet.zmod_module(Z2, (2,))).size == 4
    for p, q in itertools.product(range(4), repeat=2):
        assert internal_hom(pointed(p), pointed(q)).size == (q + 1) ** p


def test_coproduct_examples():
    M = LinearASet.zmod_module(Z2, (2,))
    assert is_isomorphic(coproduct(M, LinearASet.zmod_module(Z2, ())).aset, M)
    assert is_isomorphic(coproduct(M, M).aset, LinearASet.zmod_module(Z2, (2, 2)))
    for p, q in itertools.product(range(3), repeat=2):
        assert coproduct(pointed(p), pointed(q)).aset.size == p + q + 1


def test_pushout_of_pointed_sets_is_a_wedge_quotient():
    # glue the one non-base point of 1+ into two different pointed sets
    one = pointed(1)
    f = ASetMap(one, pointed(2), (0, 1))
    g = ASetMap(one, pointed(3), (0, 1))
    P = pushout(f, g)
    assert P.aset.size == (2 + 3 - 1) + 1


def test_induced_map_from_coproduct():
    M = LinearASet.zmod_module(Z2, (2,))
    C = coproduct(M, M)
    target = LinearASet.zmod_module(Z2, (2, 2))
    h = induced_map(C, target, [1, 2])
    assert h.preserves_action() and h.is_bijective()


def test_vectorized_tables_match_pointwise_action():
    cases = [free_aset(Z2, 2).aset, coproduct(LinearASet.zmod_module(Z6, (2,)), LinearASet.zmod_module(Z6, (3,))).aset,
             tensor(pointed(2), pointed(1)).aset, free_aset(make_F_monoid(FiniteMonoid.cyclic(2)), 2).aset]
    for M in cases:
        for n in (0, 1, 2):
            digits = _tuple_codes(M.size, n)
            assert np.array_equal(M.values(n, digits), ASet.values(M, n, digits))


@settings(max_examples=10, deadline=None)
@given(st.sampled_from([(2,), (3,), (6,), (2, 3)]), st.sampled_from([(2,), (3,), (6,)]))
def test_hom_into_modules_counts_like_linear_algebra(a, b):
    """``|Hom(prod Z/a_i, prod Z/b_j)| = prod gcd(a_i, b_j)``."""
    import math
    M, N = LinearASet.zmod_module(Z6, a), LinearASet.zmod_module(Z6, b)
    want = math.prod(math.gcd(x, y) for x in a for y in b)
    assert internal_hom(M, N).size == want == len(enumerate_homs(M, N))


def test_find_isomorphism_rejects_different_sizes():
    assert find_isomorphism(pointed(1), pointed(2)) is None


@pytest.mark.parametrize("A", [F, B, Z2, make_F_monoid(FiniteMonoid.cyclic(2)), make_from_rig(zmod(3))],
                         ids=lambda A: A.name)
def test_generating_naturality_matches_all_families(A):
    for k in (1, 2):
        assert is_isomorphic(free_aset(A, k).aset, free_aset(A, k, naturality="all").aset)


def test_free_over_monoid_ring_counts():
    # F{C2}: a generator times one of the two units, plus zero
    for k in range(3):
        assert free_aset(make_F_monoid(FiniteMonoid.cyclic(2)), k).aset.size == 2 * k + 1
