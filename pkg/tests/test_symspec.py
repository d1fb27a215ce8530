import random
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grset import symspec as ss
from grset.simpset import RangeError, make_std

S3 = ss.sphere(3, 2)
POINT = ss.point_pss(2)


def noncells(seq):
    """Non-basepoint cells per level and dimension."""
    return [[size - 1 for size in level] for level in seq.sizes()]


def test_sphere_sizes_and_laws():
    # a k-simplex of S^1 = Delta(1)/dDelta(1) is a surjection [k] -> [1]; there are k of them
    assert noncells(S3.seq) == [[k ** n for k in range(3)] for n in range(4)]
    assert ss.check_symseq(S3.seq) == []
    assert ss.check_smod(S3) == []
    assert ss.associativity_failures(S3) == []


def test_sphere_is_commutative_and_unital():
    T, m = ss.sphere_multiplication(S3)
    assert m.failures() == []
    t = ss.twist(S3.seq, S3.seq, T, T)
    assert ss.is_identity(ss.compose_maps(t, t))
    assert ss.compose_maps(t, m).maps == m.maps
    assert ss.sphere_unit(S3).failures() == []


def test_unit_for_the_sequence_tensor():
    one = ss.unit_seq(3, 2)
    for X in (S3.seq, ss.free_orbit(2, ss.circle(2), 3)):
        assert ss.seq_tensor_decomp(one, X).sizes() == X.sizes()
        assert ss.seq_tensor_decomp(X, one).sizes() == X.sizes()


def test_tensor_size_formula():
    """``|(M (x) N)^n|`` sums ``C(n, p) |M^p| |N^(n-p)|`` over nonbasepoint cells."""
    rng = random.Random(3)
    M, N = ss.random_symseq(rng), ss.random_symseq(rng)
    m, nn = noncells(M), noncells(N)
    want = [[sum(comb(n, p) * m[p][k] * nn[n - p][k] for p in range(n + 1)) for k in range(3)] for n in range(4)]
    assert noncells(ss.seq_tensor_decomp(M, N)) == want


def test_free_orbit_and_free_module_sizes():
    X = ss.circle(2)
    assert noncells(ss.free_orbit(2, X, 3))[2] == [factorial(2) * k for k in range(3)]
    for n in range(3):
        F = ss.free_module(n, POINT, S3)
        assert ss.check_smod(F) == []
        got = noncells(F.seq)
        for level in range(4):
            p = level - n
            want = [factorial(level) // factorial(p) * k ** p if p >= 0 else 0 for k in range(3)]
            assert got[level] == want


def test_free_module_out_of_range():
    with pytest.raises(RangeError):
        ss.free_module(4, POINT, S3)
    with pytest.raises(RangeError):
        ss.evaluate(S3, 5)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_tensor_models_agree_and_twist_is_involutive(seed):
    rng = random.Random(seed)
    M, N = ss.random_symseq(rng, L=2), ss.random_symseq(rng, L=2)
    MN, NM = ss.seq_tensor_decomp(M, N), ss.seq_tensor_decomp(N, M)
    MNi, NMi = ss.seq_tensor_induced(M, N), ss.seq_tensor_induced(N, M)
    assert ss.check_symseq(MN) == []
    assert ss.decomp_to_induced(M, N, MN, MNi).is_iso()
    tw = ss.twist(M, N, MN, NM)
    assert tw.failures() == []
    assert ss.is_identity(ss.compose_maps(tw, ss.twist(N, M, NM, MN)))
    left = ss.compose_maps(tw, ss.decomp_to_induced(N, M, NM, NMi))
    right = ss.compose_maps(ss.decomp_to_induced(M, N, MN, MNi), ss.twist_induced(M, N, MNi, NMi))
    assert left.maps == right.maps


@pytest.mark.parametrize("m,n", [(0, 1), (1, 2), (0, 2), (2, 3)])
def test_latching_formulas_agree(m, n):
    assert ss.latching(ss.free_module(m, ss.circle(2), S3), n).formulas_agree


def test_module_latching_pattern_of_free_modules():
    """The latching map of ``F_m`` over the sphere is an iso above level ``m`` and zero at or below."""
    S = ss.sphere(3, 2)
    X = make_std("delta", 0, 2).sset
    for m in range(4):
        F = ss.free_module(m, X, S)
        for n in range(4):
            L = ss.module_latching(F, n)
            assert (L.map_is_iso if n > m else L.map_is_zero), (m, n)


def test_plain_tensor_latching_differs_from_module_latching():
    """Below the free level the sequence-tensor latching object can map nontrivially."""
    F = ss.free_module(0, make_std("delta", 0, 2).sset, S3)
    L = ss.latching(F, 2)
    assert not L.map_is_iso
    assert ss.module_latching(F, 2).map_is_iso


def test_shifts():
    r = ss.shift_right(S3)
    assert r.seq.sizes() == S3.seq.sizes()[1:]
    assert ss.check_smod(r) == []
    l = ss.shift_left(ss.truncate(S3, 2))
    assert ss.check_smod(l) == []
    assert noncells(l.seq) == [[0] * 3] + [[n * k ** (n - 1) for k in range(3)] for n in range(1, 4)]


def test_adjunction_counts():
    S2 = ss.sphere(2, 2)
    Bd = make_std("boundary", 1, 2).sset
    for n, X in [(0, POINT), (1, Bd)]:
        lhs, rhs = ss.free_adjunction_counts(n, X, S2)
        assert lhs == rhs
    lhs, rhs = ss.shift_adjunction_counts(ss.truncate(S3, 1), ss.truncate(S3, 2))
    assert lhs == rhs
    M = ss.from_pss([POINT, ss.wedge([POINT, POINT], 2), ss.zero_pss(2)])
    lhs, rhs = ss.tensor_hom_counts(M, ss.unit_seq(2, 2), S2.seq)
    assert lhs == rhs


def test_hom_from_unit_recovers_levels():
    for n in range(3):
        assert ss.hom_of_unit_check(S3.seq, n)


def test_loop_adjoint_shape():
    out = ss.omega_adjoint(S3, 0)
    assert len(out) == 1 and len(out[0]) == S3.seq.levels[0].levels[0].size
