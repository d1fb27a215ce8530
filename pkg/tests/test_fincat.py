import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grset.fincat import (EndpointError, PartialBijection, PartialFn, compose, enumerate_maps, identity,
                          is_in_F, iter_partial_fns, kernel_cokernel, permutation, transpose)

from conftest import partial_bijections, partial_fns


def relational_compose(g, f):
    """Composition as relations on graphs: pairs (i, k) with i -> j -> k."""
    rel_f = {(i, j) for i, j in enumerate(f.graph) if j is not None}
    rel_g = {(j, k) for j, k in enumerate(g.graph) if k is not None}
    out = {i: k for i, j in rel_f for j2, k in rel_g if j == j2}
    return tuple(out.get(i) for i in range(f.source))


def test_compose_examples():
    f = PartialFn(2, 2, (1, None))
    g = PartialFn(2, 2, (None, 0))
    assert compose(g, f).graph == (0, None)
    h = PartialFn(3, 2, (0, 0, 1))
    p = PartialFn(2, 1, (0, None))
    assert compose(p, h).domain == (0, 1)


def test_identity_is_neutral():
    for f in iter_partial_fns(2, 3):
        assert compose(identity(3), f) == f
        assert compose(f, identity(2)) == f


def test_compose_rejects_mismatched_endpoints():
    with pytest.raises(EndpointError):
        compose(PartialFn(2, 1, (0, 0)), PartialFn(1, 3, (0,)))


def test_compose_matches_relational_oracle_exhaustively():
    for a, b, c in itertools.product(range(3), repeat=3):
        for f in iter_partial_fns(a, b):
            for g in iter_partial_fns(b, c):
                assert compose(g, f).graph == relational_compose(g, f)


@given(partial_fns(max_size=3, source=2, target=3), partial_fns(max_size=3, source=3, target=2),
       partial_fns(max_size=3, source=2, target=2))
def test_compose_is_associative(f, g, h):
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)


def test_transpose_examples():
    assert transpose(PartialBijection(2, 2, (1, None))).graph == (None, 0)


@settings(max_examples=100)
@given(partial_bijections())
def test_transpose_is_involutive(f):
    assert transpose(transpose(f)) == f


def test_transpose_reverses_composition():
    sizes = range(4)
    for a, b, c in itertools.product(sizes, repeat=3):
        for f in enumerate_maps("partial_bij", a, b):
            for g in enumerate_maps("partial_bij", b, c):
                assert transpose(compose(g, f)) == compose(transpose(f), transpose(g))


def test_kernel_cokernel_examples():
    kc = kernel_cokernel(identity(2))
    assert kc.kernel.source == 0 and kc.cokernel.target == 0
    zero = PartialFn(2, 2, (None, None))
    kc = kernel_cokernel(zero)
    assert kc.kernel.source == 2 and kc.cokernel == identity(2)
    f = PartialFn(3, 2, (1, 1, None))
    kc = kernel_cokernel(f)
    assert kc.kernel.graph == (2,)
    assert kc.cokernel.graph == (0, None)


def test_is_in_F_examples():
    assert all(is_in_F(identity(n)) is not None for n in range(5))
    assert is_in_F(PartialFn(2, 1, (0, 0))) is None


def injective_away_from_basepoint(f):
    seen = [j for j in f.graph if j is not None]
    return len(seen) == len(set(seen))


def test_is_in_F_agrees_with_injectivity_exhaustively():
    for m, n in itertools.product(range(4), repeat=2):
        for f in iter_partial_fns(m, n):
            assert (is_in_F(f) is not None) == injective_away_from_basepoint(f)


def brute_partial_bijections(m, n):
    count = 0
    for graph in itertools.product([None, *range(n)], repeat=m):
        hit = [j for j in graph if j is not None]
        count += len(hit) == len(set(hit))
    return count


@pytest.mark.parametrize("m,n", [(1, 1), (2, 2), (2, 3), (3, 2), (0, 4)])
def test_partial_bijection_counts(m, n):
    assert len(enumerate_maps("partial_bij", m, n)) == brute_partial_bijections(m, n)


def test_enumeration_small_cases():
    assert len(enumerate_maps("partial_bij", 1, 1)) == 2
    assert len(enumerate_maps("partial_bij", 2, 2)) == 7
    assert len(enumerate_maps("monotone", 1, 0)) == 1
    assert len(enumerate_maps("partial_fn", 2, 3)) == 16


@given(st.permutations(list(range(4))))
def test_permutation_composes_with_its_transpose(images):
    p = permutation(images)
    assert compose(transpose(p), p) == identity(4)
