import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grset.axioms import check_axioms, hom_check, is_commutative, is_totally_commutative
from grset.fincat import PartialFn, identity, iter_partial_fns
from grset.genring import (ArityError, ElemFamily, GRHom, NotEnumerableError, coefficient_hom, families,
                           make_F, make_F_monoid, make_from_rig, make_Zreal_rational, scalar_mul,
                           symmetric_elements, transpose_elem, unit_hom)
from grset.rigs import FiniteMonoid, FiniteRig, TableValidationError, boolean, tropical01, zmod

from conftest import partial_fns

Z6 = make_from_rig(zmod(6))
B = make_from_rig(boolean())
BALL = make_Zreal_rational()


def fam(f, *comps):
    return ElemFamily(f, tuple(tuple(c) for c in comps))


def test_multiply_examples():
    F = make_F()
    f = PartialFn(2, 1, (0, 0))
    assert B.multiply((1,), fam(f, (1, 0))) == (1, 0)
    g = PartialFn(2, 1, (0, 0))
    got = BALL.multiply((Fraction(1),), fam(g, (Fraction(3, 5), Fraction(4, 5))))
    assert got == (Fraction(3, 5), Fraction(4, 5))
    assert sum(x * x for x in got) == 1
    # delta_i <| (delta_{k_j})_j relabels to delta_{k_i}
    h = PartialFn(4, 2, (0, 0, 1, 1))
    out = F.multiply(F.delta(2, 1), fam(h, F.delta(2, 0), F.delta(2, 1)))
    assert out == F.delta(4, 3)


def test_contract_examples():
    f = PartialFn(2, 1, (0, 0))
    assert Z6.contract((2, 3), fam(f, (1, 1))) == (5,)
    c = (Fraction(3, 5), Fraction(4, 5))
    assert BALL.contract(c, fam(f, c)) == (Fraction(1),)


def rig_contract_oracle(R, c, f, comps):
    """Fiber sums of products, straight from the rig tables."""
    out = []
    for j, fib in enumerate(f.fibers()):
        acc = R.zero
        for p, i in enumerate(fib):
            acc = R.add[acc][R.mul[c[i]][comps[j][p]]]
        out.append(acc)
    return tuple(out)


def test_rig_operations_match_table_oracle():
    R = zmod(6)
    rng = random.Random(5)
    for m, n in itertools.product(range(4), repeat=2):
        for f in iter_partial_fns(m, n):
            comps = tuple(tuple(rng.randrange(6) for _ in fib) for fib in f.fibers())
            c = tuple(rng.randrange(6) for _ in range(m))
            a = tuple(rng.randrange(6) for _ in range(n))
            assert Z6.contract(c, ElemFamily(f, comps)) == rig_contract_oracle(R, c, f, comps)
            want = tuple(0 if f.graph[i] is None else R.mul[a[f.graph[i]]][
                comps[f.graph[i]][f.fibers()[f.graph[i]].index(i)]] for i in range(m))
            assert Z6.multiply(a, ElemFamily(f, comps)) == want


@pytest.mark.parametrize("A", [make_F(), B, Z6, make_F_monoid(FiniteMonoid.cyclic(2))], ids=lambda A: A.name)
def test_unit_laws(A):
    for n in range(3):
        for a in A.carrier(n):
            assert A.multiply(A.one, ElemFamily(PartialFn(n, 1, (0,) * n), (a,))) == a
            assert A.contract(a, A.ones(n)) == a


def test_arity_mismatch_raises():
    with pytest.raises(ArityError):
        Z6.multiply((1, 1), fam(identity(1), (1,)))


def test_transpose_and_symmetric_elements():
    assert transpose_elem(Z6, Z6.one) == Z6.one
    assert all(transpose_elem(Z6, a) == a for a in Z6.carrier(1))
    assert symmetric_elements(Z6) == Z6.carrier(1)
    F = make_F()
    assert symmetric_elements(F) == [(0,), (1,)]
    C2 = make_F_monoid(FiniteMonoid.cyclic(2))
    for a in C2.carrier(1):
        assert transpose_elem(C2, transpose_elem(C2, a)) == a
    sym = symmetric_elements(Z6)
    assert all(scalar_mul(Z6, x, y) in sym for x in sym for y in sym)
    with pytest.raises(NotEnumerableError):
        symmetric_elements(BALL)


def test_carrier_sizes():
    F = make_F()
    C2 = make_F_monoid(FiniteMonoid.cyclic(2))
    for n in range(5):
        assert len(F.carrier(n)) == n + 1
        assert len(C2.carrier(n)) == 2 * n + 1
        assert len(Z6.carrier(n)) == 6 ** n


@pytest.mark.parametrize("A", [make_F(), make_from_rig(tropical01()), B], ids=lambda A: A.name)
def test_small_rings_pass_axioms(A):
    report = check_axioms(A, 3)
    assert report.passed, report.to_dict()


def test_corrupted_boolean_table_fails_with_witness():
    bad = FiniteRig((0, 1), ((0, 1), (0, 1)), ((0, 0), (0, 1)), name="bad", validate=False)
    report = check_axioms(make_from_rig(bad), 2)
    assert not report.passed
    assert all(r.witness for r in report.failures())
    with pytest.raises(TableValidationError):
        FiniteRig((0, 1), ((0, 1), (0, 1)), ((0, 0), (0, 1)))


def test_sampled_ball_suite_is_seeded():
    a = check_axioms(BALL, 2, samples=50, seed=3).to_dict()
    b = check_axioms(BALL, 2, samples=50, seed=3).to_dict()
    assert a == b and a["passed"]


def test_commutativity():
    for A in (make_F_monoid(FiniteMonoid.cyclic(2)), Z6, B):
        total, _ = is_totally_commutative(A, 2)
        assert total
        assert is_commutative(A, 1)[0]


def test_homomorphisms():
    Z2 = make_from_rig(zmod(2))
    assert hom_check(coefficient_hom(Z6, Z2, {x: x % 2 for x in range(6)}))[0]
    for A in (B, Z6, make_from_rig(tropical01())):
        assert hom_check(unit_hom(A))[0]
    square = GRHom(Z6, Z6, lambda a: tuple(x * x % 6 for x in a))
    ok, witness = hom_check(square)
    assert not ok and witness["law"] == "contraction"


@settings(max_examples=60)
@given(partial_fns(max_size=3), st.randoms(use_true_random=False))
def test_multiply_then_contract_matches_composite(f, rnd):
    """``(a <| b) // c`` recomputed through explicit fiber sums in Z/6."""
    comps = tuple(tuple(rnd.randrange(6) for _ in fib) for fib in f.fibers())
    a = tuple(rnd.randrange(6) for _ in range(f.target))
    ab = Z6.multiply(a, ElemFamily(f, comps))
    c = tuple(rnd.randrange(6) for _ in range(f.source))
    ones = ElemFamily(PartialFn(f.source, 1, (0,) * f.source), ((1,) * f.source,))
    total = Z6.contract(tuple(x * y % 6 for x, y in zip(ab, c)), ones)
    assert total == (sum(x * y for x, y in zip(ab, c)) % 6,)


def test_families_enumerates_product():
    f = PartialFn(3, 2, (0, 0, 1))
    assert len(list(families(B, f))) == 2 ** 3
