"""Formal expressions in multiplication and contraction, and their normal form.

An expression denotes a family over a partial function.  Elements of
``A_n`` are families over the total map ``n -> [1]``.  Three node kinds:

* ``Leaf(family)``
* ``Mul(x, y)``: fiberwise ``x <| y``; ``x`` over ``f: m -> n``, ``y`` over
  ``g: k -> m``, result over ``f o g``
* ``Con(x, y, g)``: fiberwise ``x // y``; ``y`` over ``f``, ``x`` over
  ``g o f``, result over ``g``

The right-linearity rewrite introduces ``Tilde`` nodes, which reindex a
family onto a fiber product and count as part of a pure chain.

``normalize`` pushes every contraction to the root with four oriented
rewrites, innermost first::

    (d // c) // a   ->  d // (a <| c)
    d // (a // c)   ->  (d <| c) // a
    d <| (a // c)   ->  (d <| a) // c
    (d // c) <| a   ->  (d <| a~) // c~

Each rewrite either merges two contractions or moves one strictly closer
to the root, so the process terminates; a step budget guards it anyway.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .fincat import PartialFn, compose, fiber_product
from .genring import (ElemFamily, GenRing, fiber_contract, fiber_multiply, random_family,
                      random_partial_fn, tilde_pair)


class StructureError(ValueError):
    """An expression whose operands do not compose as maps."""


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Leaf:
    family: ElemFamily

    @property
    def fn(self):
        return self.family.fn


@dataclass(frozen=True)
class Mul:
    left: object
    right: object

    @property
    def fn(self):
        return compose(self.left.fn, self.right.fn)


@dataclass(frozen=True)
class Con:
    left: object
    right: object
    over: PartialFn

    @property
    def fn(self):
        return self.over


def check(e) -> PartialFn:
    """Validate the map bookkeeping of ``e`` and return its map."""
    if isinstance(e, (Leaf, Tilde)):
        if isinstance(e, Tilde):
            check(e.inner)
        return e.fn
    if isinstance(e, Mul):
        f, g = check(e.left), check(e.right)
        if g.target != f.source:
            raise StructureError(f"cannot multiply a family over {f} by one over {g}")
        return compose(f, g)
    if isinstance(e, Con):
        x, y = check(e.left), check(e.right)
        if y.target != e.over.source or compose(e.over, y) != x:
            raise StructureError(f"contraction needs the left side over {e.over} o {y}, got {x}")
        return e.over
    raise StructureError(f"not an expression: {e!r}")


def evaluate(A: GenRing, e) -> ElemFamily:
    if isinstance(e, Leaf):
        return e.family
    if isinstance(e, Mul):
        return fiber_multiply(A, evaluate(A, e.left), evaluate(A, e.right))
    if isinstance(e, Con):
        return fiber_contract(A, evaluate(A, e.left), evaluate(A, e.right), e.over)
    if isinstance(e, Tilde):
        return _eval_tilde(A, e)
    raise StructureError(f"not an expression: {e!r}")


def leaf_element(a: tuple) -> Leaf:
    return Leaf(ElemFamily(PartialFn(len(a), 1, (0,) * len(a)), (tuple(a),)))


def is_pure(e) -> bool:
    if isinstance(e, Leaf):
        return True
    if isinstance(e, Tilde):
        return is_pure(e.inner)
    if isinstance(e, Mul):
        return is_pure(e.left) and is_pure(e.right)
    return False


def is_normal(e) -> bool:
    return isinstance(e, Con) and is_pure(e.left) and is_pure(e.right)


def count_contractions(e) -> int:
    inner = sum(count_contractions(k) for k in _children(e))
    return inner + (1 if isinstance(e, Con) else 0)


def _rewrite_root(e):
    """Apply one rewrite at the root of ``e`` if any matches, else ``None``."""
    if isinstance(e, Con) and isinstance(e.left, Con):
        inner = e.left                      # (d // c) // a
        d, c, a = inner.left, inner.right, e.right
        return Con(d, Mul(a, c), e.over)
    if isinstance(e, Con) and isinstance(e.right, Con):
        inner = e.right                     # d // (a // c)
        d, a, c = e.left, inner.left, inner.right
        return Con(Mul(d, c), a, e.over)
    if isinstance(e, Mul) and isinstance(e.right, Con):
        inner = e.right                     # d <| (a // c)
        d, a, c = e.left, inner.left, inner.right
        return Con(Mul(d, a), c, compose(d.fn, inner.over))
    if isinstance(e, Mul) and isinstance(e.left, Con):
        inner = e.left                      # (d // c) <| a
        d, c, a = inner.left, inner.right, e.right
        return _right_linear(d, c, a, inner.over)
    return None


def _right_linear(d, c, a, g):
    """``(d // c) <| a = (d <| a~) // c~`` with ``a~, c~`` on the fiber product."""
    return Con(Mul(d, Tilde(a, c.fn, "left")), Tilde(c, a.fn, "right"), compose(g, a.fn))


@dataclass(frozen=True)
class Tilde:
    """Reindexing of a family onto a fiber product.

    For ``side == "left"`` the inner family ``a`` over ``g: k -> m`` is moved
    onto the projection ``n x_m k -> n`` of ``other = f: n -> m``, with
    component ``a_{f(x)}`` at ``x``.  For ``side == "right"`` the inner family
    ``c`` over ``f`` moves onto ``n x_m k -> k`` of ``other = g``.
    """

    inner: object
    other: PartialFn
    side: str

    @property
    def fn(self):
        f, g = (self.other, self.inner.fn) if self.side == "left" else (self.inner.fn, self.other)
        _, p1, p2 = fiber_product(f, g)
        return p1 if self.side == "left" else p2


def _eval_tilde(A, t: Tilde) -> ElemFamily:
    inner = evaluate(A, t.inner)
    if t.side == "left":
        return tilde_pair(inner, _placeholder(t.other))[0]
    return tilde_pair(_placeholder(t.other), inner)[1]


def _placeholder(f: PartialFn) -> ElemFamily:
    """A family over ``f`` used only for its map by :func:`tilde_pair`."""
    return ElemFamily(f, tuple((0,) * len(fib) for fib in f.fibers()))


def _children(e):
    if isinstance(e, Leaf):
        return ()
    if isinstance(e, Tilde):
        return (e.inner,)
    return (e.left, e.right)


def _rebuild(e, kids):
    if isinstance(e, Mul):
        return Mul(*kids)
    if isinstance(e, Con):
        return Con(kids[0], kids[1], e.over)
    if isinstance(e, Tilde):
        return Tilde(kids[0], e.other, e.side)
    return e


def normalize(e, A: GenRing, budget: int = 10_000):
    """Rewrite ``e`` into a single root contraction of two pure chains.

    A contraction-free input ``x`` over ``h`` becomes ``x // 1`` with the
    all-ones family over the identity of the source of ``h``.  Returns the
    normal form and the number of rewrite steps used.
    """
    check(e)
    steps = 0

    def walk(node):
        nonlocal steps
        if isinstance(node, Leaf):
            return node
        node = _rebuild(node, tuple(walk(k) for k in _children(node)))
        while True:
            out = _rewrite_root(node)
            if out is None:
                return node
            steps += 1
            if steps > budget:
                raise BudgetExceeded(f"normal form not reached within {budget} steps")
            node = _rebuild(out, tuple(walk(k) for k in _children(out)))

    out = walk(e)
    if not isinstance(out, Con):
        n = out.fn.source
        out = Con(out, Leaf(A.ones(n)), out.fn)
    return out, steps


# random expressions -------------------------------------------------------

def random_factorization(h: PartialFn, rng: random.Random, max_mid: int = 3):
    """Random ``f, g`` with ``f o g = h``, the middle set having at most ``max_mid`` points."""
    for _ in range(100):
        mid = rng.randint(0, max_mid)
        f = random_partial_fn(mid, h.target, rng)
        graph = []
        for i in range(h.source):
            want = h.graph[i]
            opts = [j for j in range(mid) if f.graph[j] == want]
            if want is None:
                opts.append(None)
            if not opts:
                break
            graph.append(rng.choice(opts))
        else:
            return f, PartialFn(h.source, mid, tuple(graph))
    g = PartialFn(h.source, h.source, tuple(range(h.source)))
    return h, g


def random_expression(A: GenRing, h: PartialFn, depth: int, rng: random.Random, max_arity: int = 3):
    """A random expression over ``h`` of depth at most ``depth``."""
    if depth <= 0 or rng.random() < 0.2:
        return Leaf(random_family(A, h, rng))
    if rng.random() < 0.5:
        f, g = random_factorization(h, rng, max_arity)
        return Mul(random_expression(A, f, depth - 1, rng, max_arity),
                   random_expression(A, g, depth - 1, rng, max_arity))
    m = rng.randint(0, max_arity)
    f = random_partial_fn(m, h.source, rng)
    return Con(random_expression(A, compose(h, f), depth - 1, rng, max_arity),
               random_expression(A, f, depth - 1, rng, max_arity), h)


def depth(e) -> int:
    kids = _children(e)
    return 0 if not kids else 1 + max(depth(k) for k in kids)
