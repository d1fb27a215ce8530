"""Axiom checkers for generalized rings.

For enumerable carriers every operation is tabulated once per map (elements
are replaced by their index in the carrier) and each identity is evaluated
on whole blocks of operands with numpy gathers.  Map configurations are
visited up to relabelling of the finite sets involved; the checker verifies
separately (the ``relabelling`` family) that both operations commute with
relabellings, which is what makes that reduction sound.

The arity bound caps the size of every finite set occurring in a
configuration, including fiber products and cartesian products, so no
carrier above the bound is ever touched.

Carriers that are only membership-tested are checked on seeded random
samples instead, with every intermediate result tested for membership.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .fincat import (PartialFn, compose, fiber_product, identity, iter_partial_bijections,
                     restrict_to_fiber, to_point)
from .genring import (ElemFamily, GenRing, GRHom, as_family, families, fiber_contract,
                      fiber_multiply, random_family, random_partial_fn, tilde_const,
                      tilde_const_right, tilde_pair)

LAWS = {
    "associativity": "(a<|b)<|e = a<|(b<|e)",
    "unit": "1<|a = a, a<|(1) = a = a//(1)",
    "left-adjunction": "(d//c)//a = d//(a<|c)",
    "right-adjunction": "d//(a//c) = (d<|c)//a",
    "left-linear": "d<|(a//c) = (d<|a)//c",
    "right-linear": "(d//c)<|a = (d<|a~)//c~",
    "functoriality": "transport(id) = id, transport(gf) = transport(g)transport(f)",
    "relabelling": "multiplication and contraction commute with relabelling",
    "pointed": "A_0 = {0}",
    "closure": "operations land in the carrier",
}

RING_AXIOMS = ("associativity", "unit", "left-adjunction", "right-adjunction",
               "left-linear", "right-linear")


@dataclass
class AxiomResult:
    law: str
    passed: bool
    cases: int
    exhaustive: bool
    witness: dict | None = None
    identity: str | None = None

    def to_dict(self):
        return {"law": self.law, "identity": self.identity or LAWS.get(self.law, self.law), "passed": self.passed,
                "cases": self.cases, "exhaustive": self.exhaustive, "witness": self.witness}


@dataclass
class AxiomReport:
    subject: str
    bound: int
    results: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def failures(self):
        return [r for r in self.results.values() if not r.passed]

    def add(self, result: AxiomResult):
        self.results[result.law] = result

    def to_dict(self):
        return {"subject": self.subject, "bound": self.bound, "passed": self.passed,
                "laws": [self.results[k].to_dict() for k in self.results]}


def _show(x):
    """JSON-friendly rendering of elements, families and maps."""
    if isinstance(x, ElemFamily):
        return {"map": list(_show(y) for y in x.fn.graph), "components": [_show(c) for c in x.comps]}
    if isinstance(x, PartialFn):
        return [None if y is None else y for y in x.graph]
    if isinstance(x, tuple):
        return [_show(y) for y in x]
    if hasattr(x, "numerator") and not isinstance(x, (int, bool)):
        return str(x)
    return x


# configurations up to relabelling ---------------------------------------------------

def _graphs(m, n):
    return list(itertools.product((None, *range(n)), repeat=m))


def _relabel(graph, ps, pt):
    out = [None] * len(graph)
    for i, y in enumerate(graph):
        out[ps[i]] = None if y is None else pt[y]
    return tuple(out)


@lru_cache(maxsize=None)
def config_reps(shape: tuple, nsets: int, bound: int) -> tuple:
    """Orbit representatives of map configurations.

    ``shape`` lists ``(source_set, target_set)`` for each map; the finite
    sets range over sizes ``0..bound`` and are relabelled independently.
    Returns tuples ``(sizes, maps)``.
    """
    reps = []
    for sizes in itertools.product(range(bound + 1), repeat=nsets):
        seen = set()
        spaces = [_graphs(sizes[s], sizes[t]) for s, t in shape]
        perms = [list(itertools.permutations(range(k))) for k in sizes]
        for graphs in itertools.product(*spaces):
            if graphs in seen:
                continue
            maps = tuple(PartialFn(sizes[s], sizes[t], g) for (s, t), g in zip(shape, graphs))
            reps.append((sizes, maps))
            for pp in itertools.product(*perms):
                seen.add(tuple(_relabel(g, pp[s], pp[t]) for (s, t), g in zip(shape, graphs)))
    return tuple(reps)


CHAIN = ((0, 1), (1, 2))      # X -u-> Y -v-> Z
COSPAN = ((0, 2), (1, 2))     # X -f-> Z <-g- Y


class _ClosureFailure(Exception):
    def __init__(self, witness):
        self.witness = witness


class Tables:
    """Operation tables of an enumerable generalized ring up to a bound."""

    def __init__(self, A: GenRing, bound: int):
        self.A = A
        self.bound = bound
        self.elems = {n: list(A.carrier(n)) for n in range(bound + 1)}
        self.index = {n: {a: i for i, a in enumerate(self.elems[n])} for n in self.elems}
        self.size = {n: len(v) for n, v in self.elems.items()}
        self._fam = {}
        self._mul = {}
        self._con = {}

    def code(self, a):
        return self.index[len(a)][a]

    def fam_layout(self, f: PartialFn):
        if f not in self._fam:
            radices = [self.size[len(fib)] for fib in f.fibers()]
            strides = [int(np.prod(radices[j + 1:], dtype=np.int64)) for j in range(len(radices))]
            count = int(np.prod(radices, dtype=np.int64))
            grids = np.indices(radices, dtype=np.int64).reshape(len(radices), -1).T if radices else \
                np.zeros((1, 0), dtype=np.int64)
            self._fam[f] = (np.array(strides, dtype=np.int64), count, grids)
        return self._fam[f]

    def fam_count(self, f):
        return self.fam_layout(f)[1]

    def fam_comps(self, f):
        return self.fam_layout(f)[2]

    def fam_encode(self, f, comps):
        strides = self.fam_layout(f)[0]
        if comps.shape[-1] == 0:
            return np.zeros(comps.shape[:-1], dtype=np.int64)
        return (comps * strides).sum(axis=-1)

    def family(self, f, code) -> ElemFamily:
        row = self.fam_comps(f)[int(code)]
        fibs = f.fibers()
        return ElemFamily(f, tuple(self.elems[len(fibs[j])][int(row[j])] for j in range(f.target)))

    def element(self, n, code):
        return self.elems[n][int(code)]

    def _lookup(self, x, what):
        idx = self.index.get(len(x), {}).get(x)
        if idx is None:
            raise _ClosureFailure({"operation": what[0], "operands": _show(what[1:]), "result": _show(x)})
        return idx

    def mul(self, f: PartialFn):
        """``T[a, b] = a <| b`` for ``a`` in ``A_n``, ``b`` over ``f: m -> n``."""
        if f not in self._mul:
            fams = list(families(self.A, f))
            table = np.empty((self.size[f.target], len(fams)), dtype=np.int64)
            for ai, a in enumerate(self.elems[f.target]):
                for bi, b in enumerate(fams):
                    table[ai, bi] = self._lookup(self.A.multiply(a, b), ("multiply", a, b))
            self._mul[f] = table
        return self._mul[f]

    def con(self, f: PartialFn):
        """``T[c, b] = c // b`` for ``c`` in ``A_m``, ``b`` over ``f: m -> n``."""
        if f not in self._con:
            fams = list(families(self.A, f))
            table = np.empty((self.size[f.source], len(fams)), dtype=np.int64)
            for ci, c in enumerate(self.elems[f.source]):
                for bi, b in enumerate(fams):
                    table[ci, bi] = self._lookup(self.A.contract(c, b), ("contract", c, b))
            self._con[f] = table
        return self._con[f]

    def fmul(self, f: PartialFn, g: PartialFn):
        """Fiberwise ``b <| e`` with ``b`` over ``f: m -> n``, ``e`` over ``g: k -> m``."""
        h = compose(f, g)
        bc = self.fam_comps(f)
        ec = self.fam_comps(g)
        parts = []
        for j in range(f.target):
            g_j, _ = restrict_to_fiber(f, g, j)
            fib = list(f.fiber(j))
            sub = self.fam_encode(g_j, ec[:, fib])
            parts.append(self.mul(g_j)[bc[:, j][:, None], sub[None, :]])
        if not parts:
            return np.zeros((len(bc), len(ec)), dtype=np.int64)
        return self.fam_encode(h, np.stack(parts, axis=-1))

    def fcon(self, g: PartialFn, f: PartialFn):
        """Fiberwise ``a // c`` with ``a`` over ``g o f``, ``c`` over ``f``; lands over ``g``."""
        h = compose(g, f)
        ac = self.fam_comps(h)
        cc = self.fam_comps(f)
        parts = []
        for i in range(g.target):
            f_i, _ = restrict_to_fiber(g, f, i)
            fib = list(g.fiber(i))
            sub = self.fam_encode(f_i, cc[:, fib])
            parts.append(self.con(f_i)[ac[:, i][:, None], sub[None, :]])
        if not parts:
            return np.zeros((len(ac), len(cc)), dtype=np.int64)
        return self.fam_encode(g, np.stack(parts, axis=-1))

    def tildes(self, f: PartialFn, g: PartialFn):
        """Codes of ``a~`` (from ``a`` over ``g``) and ``c~`` (from ``c`` over ``f``)."""
        _, p1, p2 = fiber_product(f, g)
        gc = self.fam_comps(g)
        fc = self.fam_comps(f)
        ta = np.zeros((len(gc), f.source), dtype=np.int64)
        for x in range(f.source):
            if f.graph[x] is not None:
                ta[:, x] = gc[:, f.graph[x]]
        tc = np.zeros((len(fc), g.source), dtype=np.int64)
        for y in range(g.source):
            if g.graph[y] is not None:
                tc[:, y] = fc[:, g.graph[y]]
        return p1, p2, self.fam_encode(p1, ta), self.fam_encode(p2, tc)


def _first_mismatch(lhs, rhs):
    bad = np.argwhere(lhs != rhs)
    return None if len(bad) == 0 else tuple(int(v) for v in bad[0])


def _transport_table(T: Tables, f):
    return np.array([T.code(T.A.transport(f, a)) for a in T.elems[f.source]], dtype=np.int64)


# exhaustive laws -----------------------------------------------------------------

def _law_associativity(T):
    cases = 0
    for _, (g, f) in config_reps(CHAIN, 3, T.bound):
        # g: k -> m, f: m -> n
        h = compose(f, g)
        lhs = T.mul(g)[T.mul(f)[:, :, None], np.arange(T.fam_count(g))[None, None, :]]
        rhs = T.mul(h)[np.arange(T.size[f.target])[:, None, None], T.fmul(f, g)[None, :, :]]
        cases += lhs.size
        bad = _first_mismatch(lhs, rhs)
        if bad:
            a, b, e = T.element(f.target, bad[0]), T.family(f, bad[1]), T.family(g, bad[2])
            return cases, {"a": _show(a), "b": _show(b), "e": _show(e),
                           "lhs": _show(T.element(g.source, lhs[bad])),
                           "rhs": _show(T.element(g.source, rhs[bad]))}
    return cases, None


def _law_unit(T):
    A = T.A
    cases = 0
    one = T.code(A.one)
    for n in range(T.bound + 1):
        idx = np.arange(T.size[n])
        left = T.mul(to_point(n))[one, idx]
        ones = T.fam_encode(identity(n), np.full((1, n), T.code(A.one), dtype=np.int64))[0]
        right = T.mul(identity(n))[idx, ones]
        contr = T.con(identity(n))[idx, ones]
        cases += 3 * len(idx)
        for name, arr in (("1<|a", left), ("a<|(1)", right), ("a//(1)", contr)):
            bad = np.nonzero(arr != idx)[0]
            if len(bad):
                a = T.element(n, bad[0])
                return cases, {"form": name, "a": _show(a), "got": _show(T.element(n, arr[bad[0]]))}
    return cases, None


def _law_left_adjunction(T):
    cases = 0
    for _, (f, g) in config_reps(CHAIN, 3, T.bound):
        # c over f: n -> m, a over g: m -> k, d in A_n
        h = compose(g, f)
        dc = T.con(f)
        lhs = T.con(g)[dc[:, :, None], np.arange(T.fam_count(g))[None, None, :]]
        prod = T.fmul(g, f)                           # [a, c] over g o f
        rhs = T.con(h)[np.arange(T.size[f.source])[:, None, None], prod.T[None, :, :]]
        cases += lhs.size
        bad = _first_mismatch(lhs, rhs)
        if bad:
            return cases, {"d": _show(T.element(f.source, bad[0])), "c": _show(T.family(f, bad[1])),
                           "a": _show(T.family(g, bad[2]))}
    return cases, None


def _law_right_adjunction(T):
    cases = 0
    for _, (f, g) in config_reps(CHAIN, 3, T.bound):
        # c over f: n -> m, a over g o f, d in A_m
        h = compose(g, f)
        ac = T.fcon(g, f)                             # [a, c] over g
        lhs = T.con(g)[np.arange(T.size[f.target])[:, None, None], ac.T[None, :, :]]
        dc = T.mul(f)                                 # [d, c] in A_n
        rhs = T.con(h)[dc[:, :, None], np.arange(T.fam_count(h))[None, None, :]]
        cases += lhs.size
        bad = _first_mismatch(lhs, rhs)
        if bad:
            return cases, {"d": _show(T.element(f.target, bad[0])), "c": _show(T.family(f, bad[1])),
                           "a": _show(T.family(h, bad[2]))}
    return cases, None


def _law_left_linear(T):
    cases = 0
    for _, (f, g) in config_reps(CHAIN, 3, T.bound):
        # c over f: n -> k, a over g o f, d in A_m where g: k -> m
        h = compose(g, f)
        ac = T.fcon(g, f)                             # [a, c] over g
        lhs = T.mul(g)[np.arange(T.size[g.target])[:, None, None], ac.T[None, :, :]]
        da = T.mul(h)                                 # [d, a] in A_n
        rhs = T.con(f)[da[:, None, :], np.arange(T.fam_count(f))[None, :, None]]
        cases += lhs.size
        bad = _first_mismatch(lhs, rhs)
        if bad:
            return cases, {"d": _show(T.element(g.target, bad[0])), "c": _show(T.family(f, bad[1])),
                           "a": _show(T.family(h, bad[2]))}
    return cases, None


def _law_right_linear(T):
    cases = 0
    for _, (f, g) in config_reps(COSPAN, 3, T.bound):
        # c over f: n -> m, a over g: k -> m, d in A_n
        pairs, _, _ = fiber_product(f, g)
        if len(pairs) > T.bound:
            continue
        p1, p2, ta, tc = T.tildes(f, g)
        lhs = T.mul(g)[T.con(f)[:, :, None], np.arange(T.fam_count(g))[None, None, :]]
        da = T.mul(p1)[np.arange(T.size[f.source])[:, None, None], ta[None, None, :]]
        rhs = T.con(p2)[da, tc[None, :, None]]
        cases += lhs.size
        bad = _first_mismatch(lhs, rhs)
        if bad:
            return cases, {"d": _show(T.element(f.source, bad[0])), "c": _show(T.family(f, bad[1])),
                           "a": _show(T.family(g, bad[2]))}
    return cases, None


def _law_functoriality(T):
    A = T.A
    cases = 0
    for n in range(T.bound + 1):
        for a in T.elems[n]:
            cases += 1
            if A.transport(identity(n), a) != a:
                return cases, {"a": _show(a), "map": "identity"}
    sizes = range(T.bound + 1)
    for m, n, k in itertools.product(sizes, repeat=3):
        for f in iter_partial_bijections(m, n):
            tf = _transport_table(T, f)
            for g in iter_partial_bijections(n, k):
                tg = _transport_table(T, g)
                tgf = _transport_table(T, compose(g, f))
                cases += len(tf)
                bad = np.nonzero(tg[tf] != tgf)[0]
                if len(bad):
                    return cases, {"a": _show(T.element(m, bad[0])), "f": _show(f), "g": _show(g)}
    return cases, None


def _swap(n, i):
    p = list(range(n))
    p[i], p[i + 1] = p[i + 1], p[i]
    return PartialFn(n, n, tuple(p))


def _relabel_family(T, f, sigma_src, tau_tgt):
    """Map family codes over ``f`` to codes over ``tau o f o sigma^{-1}``.

    Components are moved along the bijections of fibers induced by
    ``sigma`` (renumbered increasingly), and reindexed by ``tau``.
    """
    A = T.A
    inv = [None] * f.source
    for i, s in enumerate(sigma_src.graph):
        inv[s] = i
    f2 = PartialFn(f.source, f.target,
                   tuple(None if f.graph[inv[x]] is None else tau_tgt.graph[f.graph[inv[x]]]
                         for x in range(f.source)))
    count = T.fam_count(f)
    out = np.empty(count, dtype=np.int64)
    fibs = f.fibers()
    fibs2 = f2.fibers()
    for code in range(count):
        fam = T.family(f, code)
        comps = [None] * f.target
        for j in range(f.target):
            new_fib = fibs2[tau_tgt.graph[j]]
            pos = {x: p for p, x in enumerate(new_fib)}
            move = PartialFn(len(fibs[j]), len(new_fib), tuple(pos[sigma_src.graph[x]] for x in fibs[j]))
            comps[tau_tgt.graph[j]] = A.transport(move, fam.comps[j])
        out[code] = T.fam_encode(f2, np.array([[T.code(c) for c in comps]], dtype=np.int64)
                                 if f.target else np.zeros((1, 0), dtype=np.int64))[0]
    return f2, out


def _law_relabelling(T):
    """Multiplication and contraction are natural for adjacent transpositions."""
    cases = 0
    sizes = range(T.bound + 1)
    for m, n in itertools.product(sizes, repeat=2):
        for f in (PartialFn(m, n, g) for g in _graphs(m, n)):
            moves = [(_swap(m, i), identity(n)) for i in range(m - 1)]
            moves += [(identity(m), _swap(n, j)) for j in range(n - 1)]
            for sigma, tau in moves:
                f2, fam_map = _relabel_family(T, f, sigma, tau)
                ts = _transport_table(T, sigma)
                tt = _transport_table(T, tau)
                a = np.arange(T.size[n])[:, None]
                b = np.arange(T.fam_count(f))[None, :]
                lhs = T.mul(f2)[tt[a], fam_map[b]]
                rhs = ts[T.mul(f)[a, b]]
                c = np.arange(T.size[m])[:, None]
                lhs2 = T.con(f2)[ts[c], fam_map[b]]
                rhs2 = tt[T.con(f)[c, b]]
                cases += lhs.size + lhs2.size
                for kind, l, r in (("multiply", lhs, rhs), ("contract", lhs2, rhs2)):
                    bad = _first_mismatch(l, r)
                    if bad:
                        return cases, {"operation": kind, "map": _show(f), "source_swap": _show(sigma),
                                       "target_swap": _show(tau), "operands": list(bad)}
    return cases, None


_EXHAUSTIVE = {
    "associativity": _law_associativity,
    "unit": _law_unit,
    "left-adjunction": _law_left_adjunction,
    "right-adjunction": _law_right_adjunction,
    "left-linear": _law_left_linear,
    "right-linear": _law_right_linear,
    "functoriality": _law_functoriality,
    "relabelling": _law_relabelling,
}


def _check_exhaustive(A, bound, laws):
    report = AxiomReport(A.name, bound)
    T = Tables(A, bound)
    ok0 = T.elems[0] == [()] and A.zero(0) == ()
    report.add(AxiomResult("pointed", ok0, 1, True, None if ok0 else {"A_0": _show(T.elems[0])}))
    closure_witness = None
    for law in laws:
        try:
            cases, witness = _EXHAUSTIVE[law](T)
        except _ClosureFailure as exc:
            closure_witness = closure_witness or exc.witness
            report.add(AxiomResult(law, False, 0, True, {"closure": exc.witness}))
            continue
        report.add(AxiomResult(law, witness is None, int(cases), True, witness))
    report.add(AxiomResult("closure", closure_witness is None, 0, True, closure_witness))
    return report


# sampled laws ----------------------------------------------------------------------

class _Audited(GenRing):
    """Wraps a ring and records any operation result outside the carrier."""

    def __init__(self, A):
        self.inner = A
        self.name = A.name
        self.czero, self.cone = A.czero, A.cone
        self.violations = []
        self.checked = 0

    def cmul(self, x, y):
        return self.inner.cmul(x, y)

    def csum(self, terms):
        return self.inner.csum(terms)

    def contains(self, a):
        return self.inner.contains(a)

    def sample(self, n, rng):
        return self.inner.sample(n, rng)

    def _audit(self, x):
        self.checked += 1
        if not self.inner.contains(x):
            self.violations.append(_show(x))
        return x

    def multiply(self, a, b):
        return self._audit(self.inner.multiply(a, b))

    def contract(self, c, b):
        return self._audit(self.inner.contract(c, b))


def _random_chain(rng, bound):
    x, y, z = (rng.randint(0, bound) for _ in range(3))
    return random_partial_fn(x, y, rng), random_partial_fn(y, z, rng)


def _sample_case(A, law, rng, bound):
    """One random instance of ``law``; returns ``(lhs, rhs, operands)``."""
    if law == "associativity":
        g, f = _random_chain(rng, bound)
        a, b, e = A.sample(f.target, rng), random_family(A, f, rng), random_family(A, g, rng)
        return A.multiply(A.multiply(a, b), e), A.multiply(a, fiber_multiply(A, b, e)), (a, b, e)
    if law == "unit":
        n = rng.randint(0, bound)
        a = A.sample(n, rng)
        lhs = (A.multiply(A.one, as_family(a)), A.multiply(a, A.ones(n)), A.contract(a, A.ones(n)))
        return lhs, (a, a, a), (a,)
    if law == "left-adjunction":
        f, g = _random_chain(rng, bound)
        d, c, a = A.sample(f.source, rng), random_family(A, f, rng), random_family(A, g, rng)
        return A.contract(A.contract(d, c), a), A.contract(d, fiber_multiply(A, a, c)), (d, c, a)
    if law == "right-adjunction":
        f, g = _random_chain(rng, bound)
        h = compose(g, f)
        d, c, a = A.sample(f.target, rng), random_family(A, f, rng), random_family(A, h, rng)
        return A.contract(d, fiber_contract(A, a, c, g)), A.contract(A.multiply(d, c), a), (d, c, a)
    if law == "left-linear":
        f, g = _random_chain(rng, bound)
        h = compose(g, f)
        d, c, a = A.sample(g.target, rng), random_family(A, f, rng), random_family(A, h, rng)
        return A.multiply(d, fiber_contract(A, a, c, g)), A.contract(A.multiply(d, a), c), (d, c, a)
    if law == "right-linear":
        while True:
            n, k, m = (rng.randint(0, bound) for _ in range(3))
            f, g = random_partial_fn(n, m, rng), random_partial_fn(k, m, rng)
            if len(fiber_product(f, g)[0]) <= bound:
                break
        d, c, a = A.sample(n, rng), random_family(A, f, rng), random_family(A, g, rng)
        at, ct = tilde_pair(a, c)
        return A.multiply(A.contract(d, c), a), A.contract(A.multiply(d, at), ct), (d, c, a)
    raise KeyError(law)


def _check_sampled(A, bound, samples, seed, laws):
    report = AxiomReport(A.name, bound)
    audited = _Audited(A)
    for law in laws:
        if law not in RING_AXIOMS:
            continue
        rng = random.Random(f"{seed}:{law}")
        witness = None
        for _ in range(samples):
            lhs, rhs, ops = _sample_case(audited, law, rng, bound)
            if lhs != rhs:
                witness = {"operands": _show(ops), "lhs": _show(lhs), "rhs": _show(rhs)}
                break
        report.add(AxiomResult(law, witness is None, samples, False, witness))
    ok = not audited.violations
    report.add(AxiomResult("closure", ok, audited.checked, False,
                           None if ok else {"outside": audited.violations[:3]}))
    return report


def check_axioms(A: GenRing, arity_bound: int = 3, samples: int = 1000, seed: int = 0,
                 laws=None) -> AxiomReport:
    """Check the generalized-ring axioms.

    Enumerable instances are checked exhaustively up to ``arity_bound``
    together with functoriality and relabelling naturality; other instances
    get ``samples`` seeded random cases per law.
    """
    if A.enumerable:
        laws = laws or (*RING_AXIOMS, "functoriality", "relabelling")
        return _check_exhaustive(A, arity_bound, laws)
    return _check_sampled(A, arity_bound, samples, seed, laws or RING_AXIOMS)


# commutativity -------------------------------------------------------------------

def is_totally_commutative(A: GenRing, bound: int = 3):
    """``c <| a~ = a <| c~`` for ``a`` in ``A_k``, ``c`` in ``A_n`` with ``n*k <= bound``.

    Returns ``(verdict, witness)``.
    """
    for n in range(bound + 1):
        for k in range(bound + 1):
            if n * k > bound:
                continue
            for c in A.carrier(n):
                for a in A.carrier(k):
                    lhs = A.multiply(c, tilde_const(a, n))
                    rhs = A.multiply(a, tilde_const_right(c, k))
                    if lhs != _swap_grid(rhs, k, n):
                        return False, {"a": _show(a), "c": _show(c), "lhs": _show(lhs), "rhs": _show(rhs)}
    return True, None


def _swap_grid(x, rows, cols):
    """Reindex a ``rows x cols`` grid (row-major) as ``cols x rows``."""
    return tuple(x[r * cols + q] for q in range(cols) for r in range(rows))


def is_commutative(A: GenRing, bound: int = 1):
    """The commutativity identity on scalars, exhaustively with ``n*m <= bound``.

    For ``a, b`` in ``A_n``, ``c, d`` in ``A_m`` and scalars ``x_ij``:
    ``(a <| d~ <| x) // (b <| c~) = (d <| a~ <| x^T) // (c <| b~)``.
    """
    for n in range(bound + 1):
        for m in range(bound + 1):
            if n * m > bound:
                continue
            grid_nm = n * m
            for xs in itertools.product(A.carrier(1), repeat=grid_nm):
                # x[i][j], i in m, j in n; on the n x m side it sits at j*m + i
                x_nm = ElemFamily(identity(grid_nm), tuple(xs[i * n + j] for j in range(n) for i in range(m)))
                x_mn = ElemFamily(identity(grid_nm), tuple(xs[i * n + j] for i in range(m) for j in range(n)))
                for a, b in itertools.product(A.carrier(n), repeat=2):
                    for c, d in itertools.product(A.carrier(m), repeat=2):
                        top = to_point(grid_nm)
                        left = A.multiply(A.multiply(a, tilde_const(d, n)), x_nm)
                        lden = A.multiply(b, tilde_const(c, n))
                        lhs = A.contract(left, ElemFamily(top, (lden,)))
                        right = A.multiply(A.multiply(d, tilde_const(a, m)), x_mn)
                        rden = A.multiply(c, tilde_const(b, m))
                        rhs = A.contract(right, ElemFamily(top, (rden,)))
                        if lhs != rhs:
                            return False, {"a": _show(a), "b": _show(b), "c": _show(c), "d": _show(d),
                                           "x": _show(xs), "lhs": _show(lhs), "rhs": _show(rhs)}
    return True, None


# homomorphisms ------------------------------------------------------------------------

def hom_check(phi: GRHom, bound: int = 2):
    """Exhaustively test that ``phi`` preserves the unit, both operations and transport."""
    B, A = phi.source, phi.target
    if phi(B.one) != A.one:
        return False, {"law": "unit", "image": _show(phi(B.one))}
    sizes = range(bound + 1)
    for m, n in itertools.product(sizes, repeat=2):
        for f in (PartialFn(m, n, g) for g in _graphs(m, n)):
            fams = list(families(B, f))
            for b in fams:
                pb = phi.on_family(b)
                for a in B.carrier(n):
                    if phi(B.multiply(a, b)) != A.multiply(phi(a), pb):
                        return False, {"law": "multiplication", "a": _show(a), "b": _show(b)}
                for c in B.carrier(m):
                    if phi(B.contract(c, b)) != A.contract(phi(c), pb):
                        return False, {"law": "contraction", "c": _show(c), "b": _show(b)}
        for f in iter_partial_bijections(m, n):
            for a in B.carrier(m):
                if phi(B.transport(f, a)) != A.transport(f, phi(a)):
                    return False, {"law": "naturality", "a": _show(a), "map": _show(f)}
    return True, None
