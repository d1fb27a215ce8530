import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grset.fincat import PartialFn, compose, identity
from grset.genring import ElemFamily, make_F, make_from_rig, random_partial_fn
from grset.normalform import (Con, Leaf, Mul, StructureError, check, count_contractions, depth, evaluate,
                              is_normal, normalize, random_expression)
from grset.rigs import boolean, zmod

Z6 = make_from_rig(zmod(6))


def leaf(f, *comps):
    return Leaf(ElemFamily(f, tuple(tuple(c) for c in comps)))


def test_normal_input_is_fixed():
    f = PartialFn(2, 1, (0, 0))
    e = Con(leaf(f, (2, 3)), leaf(identity(2), (1,), (5,)), f)
    out, steps = normalize(e, Z6)
    assert steps == 0 and out == e


def test_double_contraction_merges():
    f = PartialFn(2, 1, (0, 0))
    inner = Con(leaf(f, (2, 3)), leaf(identity(2), (1,), (5,)), f)
    e = Con(inner, leaf(identity(2), (4,), (1,)), f)
    out, steps = normalize(e, Z6)
    assert is_normal(out) and count_contractions(out) == 1
    assert isinstance(out.right, Mul)
    assert evaluate(Z6, out) == evaluate(Z6, e)


def test_contraction_free_input_gets_unit_denominator():
    e = leaf(PartialFn(2, 1, (0, 0)), (2, 3))
    out, _ = normalize(e, Z6)
    assert is_normal(out)
    assert evaluate(Z6, out) == evaluate(Z6, e)


def test_structure_errors():
    with pytest.raises(StructureError):
        check(Mul(leaf(identity(1), (1,)), leaf(identity(2), (1,), (1,))))


@pytest.mark.parametrize("A", [Z6, make_from_rig(boolean()), make_F()], ids=lambda A: A.name)
def test_seeded_expressions_keep_their_value(A):
    rng = random.Random(f"nf-{A.name}")
    for _ in range(60):
        h = random_partial_fn(rng.randint(0, 3), rng.randint(0, 3), rng)
        e = random_expression(A, h, 4, rng)
        out, _ = normalize(e, A)
        assert is_normal(out)
        assert out.fn == h
        assert evaluate(A, out) == evaluate(A, e)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(0, 4))
def test_normalize_preserves_evaluation(seed, d):
    rng = random.Random(seed)
    h = random_partial_fn(rng.randint(0, 3), rng.randint(0, 3), rng)
    e = random_expression(Z6, h, d, rng)
    assert depth(e) <= d
    out, _ = normalize(e, Z6)
    assert evaluate(Z6, out) == evaluate(Z6, e)
    assert count_contractions(out) == 1


def test_composite_map_bookkeeping():
    f = PartialFn(2, 1, (0, 0))
    g = PartialFn(3, 2, (0, 1, None))
    e = Mul(leaf(f, (1, 2)), leaf(g, (1,), (5,)))
    assert check(e) == compose(f, g)
