import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grset import specplus as sp
from grset.aset import LinearASet, PointedSetASet, RingASet, find_isomorphism, is_isomorphic, restrict_scalars
from grset.genring import coefficient_hom, identity_hom, make_F, make_from_rig
from grset.rigs import boolean, tropical01, zmod

Z2, Z6 = make_from_rig(zmod(2)), make_from_rig(zmod(6))
TO2 = coefficient_hom(Z6, Z2, {x: x % 2 for x in range(6)})


def residues(ideal):
    return sorted(x[0] for x in ideal.elements())


def prime_divisors(n):
    return [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]


def coprime_part(n, s):
    """The largest divisor of ``n`` sharing no prime with ``s``."""
    return math.prod(p ** _val(n, p) for p in prime_divisors(n) if s % p)


def _val(n, p):
    k = 0
    while n % p == 0:
        n, k = n // p, k + 1
    return k


def test_ideals_of_z6():
    got = sorted(residues(I) for I in sp.all_ideals(Z6))
    assert got == [[0], [0, 1, 2, 3, 4, 5], [0, 2, 4], [0, 3]]
    assert sorted(residues(p) for p in sp.enumerate_plus_primes(Z6)) == [[0, 2, 4], [0, 3]]


@pytest.mark.parametrize("n", [2, 3, 4, 6, 8, 12])
def test_ideals_are_divisor_multiples(n):
    want = sorted(sorted(range(0, n, d)) for d in range(1, n + 1) if n % d == 0)
    assert sorted(residues(I) for I in sp.all_ideals(make_from_rig(zmod(n)))) == want


@pytest.mark.parametrize("n", [2, 3, 4, 6, 12])
def test_primes_are_classical(n):
    want = sorted(sorted(range(0, n, p)) for p in prime_divisors(n))
    X = sp.topology(make_from_rig(zmod(n)))
    assert sorted(residues(p) for p in X.primes) == want
    assert X.is_topology() and X.basis_ok() and X.is_sober() and X.is_compact()
    assert X.is_discrete()


@pytest.mark.parametrize("A", [make_F(), make_from_rig(boolean()), make_from_rig(tropical01())], ids=str)
def test_spectra_of_semifield_like_rings_are_points(A):
    X = sp.topology(A)
    assert len(X.points) == 1
    assert X.is_sober() and X.is_compact()


def test_basic_opens_of_z6():
    X = sp.topology(Z6)
    by_res = {tuple(residues(p)): i for i, p in enumerate(X.primes)}
    assert X.Dplus((3,)) == {by_res[(0, 2, 4)]}
    assert X.Dplus((1,)) == X.points
    assert X.Dplus((0,)) == frozenset()
    dot = X.to_dot()
    assert dot.startswith("graph") or dot.startswith("digraph")


@pytest.mark.parametrize("n,s", [(6, 3), (6, 2), (12, 2), (12, 3), (4, 2), (4, 3)])
def test_localization_sizes(n, s):
    R = RingASet(make_from_rig(zmod(n)))
    assert sp.invert(R, (s,)).size == coprime_part(n, s)


def test_stalks_of_z12():
    A = make_from_rig(zmod(12))
    F = sp.sheafify(RingASet(A))
    sizes = sorted(F.stalks[i].size for i in F.space.points)
    assert sizes == [3, 4]


def test_localization_passes_module_axioms():
    from grset.aset import check_aset_axioms
    assert check_aset_axioms(sp.invert(RingASet(Z6), (3,))).passed


def test_section_routes_agree():
    for M in (RingASet(Z6), restrict_scalars(TO2, RingASet(Z2)), RingASet(make_from_rig(zmod(12)))):
        F = sp.sheafify(M)
        for U in F.space.open_sets:
            a, b = F.sections(U), F.sections_local(U)
            assert sorted(a.sections) == sorted(b.sections)
        assert F.sheaf_condition()


def test_structure_sheaf_sections():
    F = sp.sheafify(RingASet(Z6))
    for s in range(6):
        want = coprime_part(6, s) if s else 1
        assert F.sections(F.space.Dplus((s,))).size == want
    assert is_isomorphic(F.global_sections(), RingASet(Z6))


def test_psi_on_z6_at_three():
    rep = sp.psi_iso_check(RingASet(Z6), (3,))
    assert rep.bijective and rep.left_size == rep.right_size == 2
    assert all(g["ok"] for g in rep.gluing)


def test_psi_with_nilpotent_and_empty_open():
    Z4 = make_from_rig(zmod(4))
    rep = sp.psi_iso_check(RingASet(Z4), (2,))
    assert rep.bijective and rep.left_size == rep.right_size == 1
    assert all(g["ok"] for g in rep.gluing)


@settings(max_examples=12, deadline=None)
@given(st.sampled_from([2, 3, 4, 6, 12]), st.integers(0, 11))
def test_psi_is_bijective_for_cyclic_rings(n, s):
    A = make_from_rig(zmod(n))
    rep = sp.psi_iso_check(RingASet(A), (s % n,), glue=False)
    assert rep.bijective
    assert rep.left_size == coprime_part(n, s % n) if s % n else rep.left_size == 1


def test_qc_roundtrip():
    for M in (RingASet(Z6), LinearASet.zmod_module(Z6, (2, 3)), PointedSetASet(make_F(), 2)):
        assert sp.qc_roundtrip(M) is not None


def test_quasi_coherence_detects_constant_presheaf():
    M = RingASet(Z6)
    X = sp.topology(Z6)
    assert sp.is_quasi_coherent(sp.presheaf_of(sp.sheafify(M, X)), M)
    assert not sp.is_quasi_coherent(sp.constant_presheaf(M, X), M)


def test_pushforward_along_identity():
    F = sp.sheafify(RingASet(Z6))
    P = sp.pushforward_qc(identity_hom(Z6), F, F.space)
    for V in F.space.open_sets:
        assert is_isomorphic(P.sections(V), F.sections(V))


def test_pushforward_along_reduction_mod_two():
    """Pushing forward the structure sheaf of ``Z/2`` matches sheafifying ``Z/2`` over ``Z/6``."""
    F = sp.sheafify(RingASet(Z2))
    base = sp.topology(Z6)
    P = sp.pushforward_qc(TO2, F, base)
    G = sp.sheafify(restrict_scalars(TO2, RingASet(Z2)), base)
    for V in base.open_sets:
        assert find_isomorphism(P.sections(V), G.sections(V)) is not None
    assert P.sections(base.Dplus((3,))).size == 2
    assert P.sections(base.Dplus((2,))).size == 1
