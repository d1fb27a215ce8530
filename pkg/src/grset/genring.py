"""Generalized rings: carriers ``A_n`` with multiplication and contraction.

Elements of ``A_n`` are tuples of length ``n``.  A family over a partial
function ``f: m -> n`` has one component in ``A_{f^{-1}(j)}`` for every
``j`` in ``n``; the points of each fiber are taken in increasing order.

Three concrete kinds of carrier are provided, all sharing the coordinate
formulas ``(a <| b)_i = a_{f(i)} * b_i`` and
``(c // b)_j = sum_{f(i) = j} c_i * b_i``:

* finite commutative rigs, where ``A_n`` is every tuple,
* ``F{M}`` for a finite commutative monoid ``M``, where ``A_n`` is the tuples
  with at most one non-zero coordinate (``F`` itself is ``F{1}``),
* the rational points of the unit l2-ball, membership-tested and exact.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .fincat import (PartialBijection, PartialFn, compose, empty_map, fiber_product,
                     identity, restrict_to_fiber, to_point)
from .rigs import FiniteMonoid, FiniteRig


class ArityError(ValueError):
    """Operands whose arities do not fit the underlying map."""


class NotEnumerableError(RuntimeError):
    """The carrier can only be tested for membership, not listed."""


@dataclass(frozen=True)
class ElemFamily:
    """A family ``(b_j)`` over a partial function ``fn: m -> n``."""

    fn: PartialFn
    comps: tuple

    def __post_init__(self):
        if len(self.comps) != self.fn.target:
            raise ArityError(f"{len(self.comps)} components for a map into {self.fn.target}")
        for j, fib in enumerate(self.fn.fibers()):
            if len(self.comps[j]) != len(fib):
                raise ArityError(f"component {j} has arity {len(self.comps[j])}, fiber has {len(fib)}")

    def __iter__(self):
        return iter(self.comps)


def as_family(a: tuple) -> ElemFamily:
    """View ``a`` in ``A_n`` as a family over the total map ``n -> [1]``."""
    return ElemFamily(to_point(len(a)), (tuple(a),))


class GenRing:
    """Common interface and coordinate formulas for the shipped instances.

    Subclasses supply the coefficient arithmetic (``cmul``, ``csum``), the
    coefficient zero and one, and the carrier (``carrier`` / ``contains``).
    """

    name = "A"
    enumerable = True
    czero = 0
    cone = 1

    # coefficient arithmetic -------------------------------------------------
    def cmul(self, x, y):
        raise NotImplementedError

    def csum(self, terms):
        raise NotImplementedError

    # carriers ---------------------------------------------------------------
    def carrier(self, n: int) -> list:
        raise NotImplementedError

    def contains(self, a) -> bool:
        raise NotImplementedError

    def sample(self, n: int, rng: random.Random):
        return rng.choice(self.carrier(n))

    @property
    def one(self):
        return (self.cone,)

    def zero(self, n: int):
        return self.transport(empty_map(0, n), ())

    def ones(self, n: int) -> ElemFamily:
        """The family ``(1)_{j in n}`` over the identity of ``n``."""
        return ElemFamily(identity(n), tuple((self.cone,) for _ in range(n)))

    # structure ----------------------------------------------------------------
    def transport(self, f: PartialBijection, a: tuple) -> tuple:
        if len(a) != f.source:
            raise ArityError(f"element of arity {len(a)} moved along a map from {f.source}")
        out = [self.czero] * f.target
        for i, y in enumerate(f.graph):
            if y is not None:
                out[y] = a[i]
        return tuple(out)

    def multiply(self, a: tuple, b: ElemFamily) -> tuple:
        f = b.fn
        if len(a) != f.target:
            raise ArityError(f"multiplying A_{len(a)} by a family over {f}")
        out = [self.czero] * f.source
        for j, fib in enumerate(f.fibers()):
            comp = b.comps[j]
            for p, i in enumerate(fib):
                out[i] = self.cmul(a[j], comp[p])
        return tuple(out)

    def contract(self, c: tuple, b: ElemFamily) -> tuple:
        f = b.fn
        if len(c) != f.source:
            raise ArityError(f"contracting A_{len(c)} against a family over {f}")
        return tuple(self.csum([self.cmul(c[i], b.comps[j][p]) for p, i in enumerate(fib)])
                     for j, fib in enumerate(f.fibers()))

    def __repr__(self):
        return f"<GenRing {self.name}>"


class RigRing(GenRing):
    """The generalized ring of a finite commutative rig: ``A_n = R^n``."""

    def __init__(self, rig: FiniteRig, name: str | None = None):
        self.rig = rig
        self.name = name or rig.name or "rig"
        self.czero = rig.zero
        self.cone = rig.one
        self._cache = {}

    def cmul(self, x, y):
        return self.rig.mul[x][y]

    def csum(self, terms):
        acc = self.rig.zero
        for t in terms:
            acc = self.rig.add[acc][t]
        return acc

    def carrier(self, n):
        if n not in self._cache:
            self._cache[n] = list(itertools.product(range(self.rig.size), repeat=n))
        return self._cache[n]

    def contains(self, a):
        return isinstance(a, tuple) and all(isinstance(x, int) and 0 <= x < self.rig.size for x in a)

    def label(self, a):
        return tuple(self.rig.labels[x] for x in a)


class MonoidRing(GenRing):
    """``F{M}``: elements of ``A_n`` are ``0`` or ``x`` placed at one point.

    Coefficient ``0`` is zero and coefficient ``k >= 1`` is the monoid element
    with index ``k - 1``.  With the trivial monoid this is ``F``, whose
    elements are the basis vectors ``delta_i`` and ``0``.
    """

    def __init__(self, monoid: FiniteMonoid, name: str | None = None):
        self.monoid = monoid
        self.name = name or f"F{{M{monoid.size}}}"
        self.czero = 0
        self.cone = monoid.unit + 1
        self._cache = {}

    def cmul(self, x, y):
        if x == 0 or y == 0:
            return 0
        return self.monoid.mul[x - 1][y - 1] + 1

    def csum(self, terms):
        nonzero = [t for t in terms if t != 0]
        if len(nonzero) > 1:
            raise ArityError("a sum with two non-zero terms has no value in F{M}")
        return nonzero[0] if nonzero else 0

    def carrier(self, n):
        if n not in self._cache:
            out = [(0,) * n]
            for i in range(n):
                for k in range(1, self.monoid.size + 1):
                    out.append(tuple(k if p == i else 0 for p in range(n)))
            self._cache[n] = out
        return self._cache[n]

    def contains(self, a):
        return (isinstance(a, tuple) and all(isinstance(x, int) and 0 <= x <= self.monoid.size for x in a)
                and sum(1 for x in a if x) <= 1)

    def delta(self, n: int, i: int, k: int | None = None):
        k = self.cone if k is None else k
        return tuple(k if p == i else 0 for p in range(n))


class BallRing(GenRing):
    """Rational points of the unit l2-ball: ``sum a_j^2 <= 1``, exact arithmetic."""

    name = "Zreal_Q"
    enumerable = False
    czero = Fraction(0)
    cone = Fraction(1)

    def cmul(self, x, y):
        return x * y

    def csum(self, terms):
        return sum(terms, Fraction(0))

    def carrier(self, n):
        raise NotEnumerableError("the rational ball has infinitely many points")

    def contains(self, a):
        return isinstance(a, tuple) and all(isinstance(x, Fraction) for x in a) and sum(x * x for x in a) <= 1

    def sample(self, n, rng):
        if n == 0:
            return ()
        mode = rng.random()
        if mode < 0.1:
            return tuple(Fraction(0) for _ in range(n))
        if mode < 0.5:
            point = _sphere_point(n, rng)
            if mode < 0.3:
                return point
            scale = Fraction(rng.randint(0, 12), 12)
            return tuple(scale * x for x in point)
        coords = [Fraction(rng.randint(-12, 12), rng.randint(1, 12)) for _ in range(n)]
        norm2 = sum(x * x for x in coords)
        k = 1
        while norm2 > k * k:
            k += 1
        return tuple(x / k for x in coords)


def _sphere_point(n, rng):
    """A rational point on the unit sphere via inverse stereographic projection."""
    if n == 1:
        return (Fraction(rng.choice((-1, 1))),)
    t = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n - 1)]
    s = sum(x * x for x in t)
    return tuple(2 * x / (1 + s) for x in t) + ((s - 1) / (1 + s),)


# fiberwise operations -------------------------------------------------------

def subfamily(e: ElemFamily, f: PartialFn, j: int) -> ElemFamily:
    """Restrict ``e`` (over ``g: k -> m``) to the fiber of ``f: m -> n`` at ``j``."""
    g_j, _ = restrict_to_fiber(f, e.fn, j)
    fib = f.fiber(j)
    return ElemFamily(g_j, tuple(e.comps[x] for x in fib))


def fiber_multiply(A: GenRing, b: ElemFamily, e: ElemFamily) -> ElemFamily:
    """``b <| e`` for ``b`` over ``f: m -> n`` and ``e`` over ``g: k -> m``; over ``f o g``."""
    f, g = b.fn, e.fn
    comps = tuple(A.multiply(b.comps[j], subfamily(e, f, j)) for j in range(f.target))
    return ElemFamily(compose(f, g), comps)


def fiber_contract(A: GenRing, a: ElemFamily, c: ElemFamily, g: PartialFn) -> ElemFamily:
    """``a // c`` for ``a`` over ``g o f`` and ``c`` over ``f``; the result lies over ``g``."""
    f = c.fn
    h = compose(g, f)
    if a.fn != h:
        raise ArityError(f"contraction needs a family over {h}, got {a.fn}")
    comps = tuple(A.contract(a.comps[i], subfamily(c, g, i)) for i in range(g.target))
    return ElemFamily(g, comps)


def tilde_pair(a: ElemFamily, c: ElemFamily):
    """Fiber identification for ``c`` over ``f: n -> m`` and ``a`` over ``g: k -> m``.

    Returns ``(a~, c~)`` over the projections ``n x_m k -> n`` and
    ``n x_m k -> k``, with ``a~_x = a_{f(x)}`` and ``c~_y = c_{g(y)}``.
    """
    f, g = c.fn, a.fn
    _, p1, p2 = fiber_product(f, g)
    a_t = tuple(a.comps[f.graph[x]] if f.graph[x] is not None else () for x in range(f.source))
    c_t = tuple(c.comps[g.graph[y]] if g.graph[y] is not None else () for y in range(g.source))
    return ElemFamily(p1, a_t), ElemFamily(p2, c_t)


def tilde_const(a: tuple, n: int) -> ElemFamily:
    """``a`` in ``A_k`` repeated over the projection ``n x k -> n``."""
    k = len(a)
    p = PartialFn(n * k, n, tuple(x for x in range(n) for _ in range(k)))
    return ElemFamily(p, tuple(tuple(a) for _ in range(n)))


def tilde_const_right(c: tuple, k: int) -> ElemFamily:
    """``c`` in ``A_n`` repeated over the projection ``n x k -> k``."""
    n = len(c)
    p = PartialFn(n * k, k, tuple(y for _ in range(n) for y in range(k)))
    return ElemFamily(p, tuple(tuple(c) for _ in range(k)))


def transpose_elem(A: GenRing, a: tuple) -> tuple:
    """``a^t = 1 // a`` for ``a`` in ``A_[1]``."""
    if len(a) != 1:
        raise ArityError("the transpose is defined on A_[1]")
    return A.contract(A.one, ElemFamily(identity(1), (tuple(a),)))


def scalar_mul(A: GenRing, x: tuple, y: tuple) -> tuple:
    """The monoid product ``x <| y`` on ``A_[1]``."""
    return A.multiply(x, ElemFamily(identity(1), (tuple(y),)))


def symmetric_elements(A: GenRing) -> list:
    if not A.enumerable:
        raise NotEnumerableError(f"{A.name} has no enumerable A_[1]")
    return [a for a in A.carrier(1) if transpose_elem(A, a) == a]


def random_partial_fn(m: int, n: int, rng: random.Random, total: bool = False) -> PartialFn:
    if total and n == 0 and m > 0:
        raise ValueError("no total map into the empty set")
    choices = list(range(n)) if total else [None, *range(n)]
    return PartialFn(m, n, tuple(rng.choice(choices) for _ in range(m)))


def random_family(A: GenRing, f: PartialFn, rng: random.Random) -> ElemFamily:
    return ElemFamily(f, tuple(A.sample(len(fib), rng) for fib in f.fibers()))


def families(A: GenRing, f: PartialFn):
    """Every family over ``f`` in product order (first component slowest)."""
    for comps in itertools.product(*(A.carrier(len(fib)) for fib in f.fibers())):
        yield ElemFamily(f, comps)


# homomorphisms -----------------------------------------------------------------

@dataclass(frozen=True)
class GRHom:
    """A homomorphism given by a function on elements of every arity."""

    source: GenRing
    target: GenRing
    func: Callable

    def __call__(self, a):
        return self.func(a)

    def on_family(self, b: ElemFamily) -> ElemFamily:
        return ElemFamily(b.fn, tuple(self.func(x) for x in b.comps))


def coefficient_hom(source: GenRing, target: GenRing, table) -> GRHom:
    """The homomorphism applying ``table`` to every coordinate."""
    table = dict(table) if not callable(table) else table
    apply = table if callable(table) else table.__getitem__
    return GRHom(source, target, lambda a: tuple(apply(x) for x in a))


def unit_hom(A: GenRing) -> GRHom:
    """The unique homomorphism ``F -> A``: ``delta_i`` goes to ``1`` moved to slot ``i``."""
    F = make_F()

    def phi(a):
        n = len(a)
        for i, x in enumerate(a):
            if x:
                return A.transport(PartialBijection(1, n, (i,)), A.one)
        return A.zero(n)

    return GRHom(F, A, phi)


def identity_hom(A: GenRing) -> GRHom:
    return GRHom(A, A, lambda a: a)


# constructors -----------------------------------------------------------------

def make_F() -> MonoidRing:
    return MonoidRing(FiniteMonoid.trivial(), name="F")


def make_F_monoid(M: FiniteMonoid, name: str | None = None) -> MonoidRing:
    return MonoidRing(M, name=name)


def make_from_rig(R: FiniteRig, name: str | None = None) -> RigRing:
    return RigRing(R, name=name)


def make_Zreal_rational() -> BallRing:
    return BallRing()
