"""A-sets: pointed sets with an action ``<b, (m_j), d>_n`` of a generalized ring.

Elements of a finite A-set are the integers ``0 .. size-1`` with ``0`` the
basepoint.  Every A-set exposes ``act(b, ms, d)`` and, for enumerable rings,
the dense action table of each arity (``table(n)[b, m-code, d]``), which is
what the axiom checks and the hom searches consume.

Free objects, extension of scalars, tensor products and coproducts are
quotients of a universe of terms ``<b, g, d>_n`` over a generating set,
computed by :class:`TermQuotient` further down.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .axioms import AxiomReport, AxiomResult, Tables, _show
from .fincat import PartialFn, identity, iter_partial_fns, to_point
from .genring import (ElemFamily, GenRing, GRHom, MonoidRing, NotEnumerableError, RigRing,
                      families, tilde_const)


class ASetError(ValueError):
    pass


class CutoffError(RuntimeError):
    """A flattened term could not be reduced below the arity cutoff."""


# shared ring tables ------------------------------------------------------------

_TABLES: dict = {}


def ring_tables(A: GenRing, bound: int) -> Tables:
    """Cached :class:`Tables` for ``A`` covering arities up to ``bound``."""
    if not A.enumerable:
        raise NotEnumerableError(f"{A.name} has no finite carriers")
    T = _TABLES.get(id(A))
    if T is None or T.A is not A or T.bound < bound:
        T = Tables(A, bound)
        _TABLES[id(A)] = T
    return T


def _tuple_codes(size: int, n: int) -> np.ndarray:
    """Digits of every code in ``size**n``, most significant first; shape ``(size**n, n)``."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.indices((size,) * n, dtype=np.int64).reshape(n, -1).T


def _encode_tuples(digits: np.ndarray, size: int) -> np.ndarray:
    n = digits.shape[-1]
    if n == 0:
        return np.zeros(digits.shape[:-1], dtype=np.int64)
    strides = size ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (digits * strides).sum(axis=-1)


# A-sets ---------------------------------------------------------------------------

class ASet:
    """A finite A-set on ``range(size)`` with basepoint ``0``."""

    ring: GenRing
    size: int
    labels: tuple

    def act(self, b: tuple, ms, d: tuple) -> int:
        raise NotImplementedError

    def label(self, m: int):
        return self.labels[m]

    def elements(self):
        return range(self.size)

    def table(self, n: int) -> np.ndarray:
        """``table(n)[bi, code(m_0..m_{n-1}), di]`` for all of ``A_n x M^n x A_n``."""
        cache = self.__dict__.setdefault("_tables", {})
        if n not in cache:
            cache[n] = self._build_table(n)
        return cache[n]

    def _build_table(self, n):
        return self.values(n, _tuple_codes(self.size, n))

    def values(self, n: int, digits: np.ndarray) -> np.ndarray:
        """Action on the given tuples only: ``out[bi, row, di]`` for ``digits[row]`` in ``M^n``."""
        cache = self.__dict__.get("_tables", {})
        if n in cache:
            return cache[n][:, _encode_tuples(digits, self.size), :]
        elems = ring_tables(self.ring, n).elems[n]
        tuples = [tuple(int(x) for x in row) for row in digits]
        out = np.empty((len(elems), len(tuples), len(elems)), dtype=np.int64)
        for bi, b in enumerate(elems):
            for mi, ms in enumerate(tuples):
                for di, d in enumerate(elems):
                    out[bi, mi, di] = self.act(b, ms, d)
        return out

    def smul(self, a: tuple, m: int) -> int:
        """``a . m = <a, m, 1>`` for ``a`` in ``A_[1]``."""
        return self.act(tuple(a), (m,), self.ring.one)

    def rmul(self, m: int, a: tuple) -> int:
        """``m . a = <1, m, a>``."""
        return self.act(self.ring.one, (m,), tuple(a))

    def __repr__(self):
        return f"<{type(self).__name__} over {self.ring.name}, {self.size} elements>"


class PointedSetASet(ASet):
    """A pointed set with its unique action of ``F``: ``m_i`` when ``b = d = delta_i``."""

    def __init__(self, A: MonoidRing, k: int, labels=None):
        if not isinstance(A, MonoidRing) or A.monoid.size != 1:
            raise ASetError("the pointed-set action is defined over F")
        self.ring = A
        self.size = k + 1
        self.labels = tuple(labels) if labels is not None else ("0", *(f"x{i}" for i in range(1, k + 1)))

    def act(self, b, ms, d):
        nz = [i for i, x in enumerate(b) if x]
        if len(nz) == 1 and tuple(b) == tuple(d):
            return ms[nz[0]]
        return 0


class RingASet(ASet):
    """``B_[1]`` as an A-set through ``phi: A -> B``: ``<b, x, d> = (phi(b) <| x) // phi(d)``.

    Without ``phi`` this is ``A_[1]`` over ``A`` itself.
    """

    def __init__(self, A: GenRing, phi: GRHom | None = None):
        self.phi = phi
        self.ring = A if phi is None else phi.source
        self.target = A if phi is None else phi.target
        B = self.target
        elems = list(B.carrier(1))
        zero = B.zero(1)
        elems.remove(zero)
        self.carrier = [zero, *elems]
        self.index = {x: i for i, x in enumerate(self.carrier)}
        self.size = len(self.carrier)
        self.labels = tuple(self.carrier)
        self._linear = None
        if phi is None and isinstance(A, RigRing):
            rig = A.rig
            idx = [self.index[(x,)] for x in range(rig.size)]
            coord = [x[0] for x in self.carrier]
            add = [[idx[rig.add[x][y]] for y in coord] for x in coord]
            smul = [[idx[rig.mul[c][x]] for x in coord] for c in range(rig.size)]
            self._linear = LinearASet(A, self.labels, add, smul)

    def values(self, n, digits):
        if self._linear is not None:
            return self._linear.values(n, digits)
        return super().values(n, digits)

    def _phi(self, a):
        return tuple(a) if self.phi is None else self.phi(tuple(a))

    def act(self, b, ms, d):
        B = self.target
        n = len(ms)
        xs = ElemFamily(identity(n), tuple(self.carrier[m] for m in ms))
        y = B.multiply(self._phi(b), xs)
        return self.index[B.contract(y, ElemFamily(to_point(n), (self._phi(d),)))]


class LinearASet(ASet):
    """An A-set whose action is ``sum_j (b_j d_j) m_j`` for a rig ``A``.

    Given by an addition table and a scalar table ``smul[c, m]`` with ``c`` a
    coefficient of the rig.  Tables are built vectorised.
    """

    def __init__(self, A: RigRing, labels, add, smul):
        if not isinstance(A, RigRing):
            raise ASetError("linear A-sets need a rig")
        self.ring = A
        self.labels = tuple(labels)
        self.size = len(self.labels)
        self.add = np.asarray(add, dtype=np.int64)
        self.smul_table = np.asarray(smul, dtype=np.int64)

    def act(self, b, ms, d):
        acc = 0
        for bj, mj, dj in zip(b, ms, d):
            acc = self.add[acc, self.smul_table[self.ring.rig.mul[bj][dj], mj]]
        return int(acc)

    def values(self, n, digits):
        T = ring_tables(self.ring, n)
        coeffs = np.array(T.elems[n], dtype=np.int64).reshape(len(T.elems[n]), n)
        mul = np.array(self.ring.rig.mul, dtype=np.int64)
        out = np.zeros((len(coeffs), len(digits), len(coeffs)), dtype=np.int64)
        for j in range(n):
            c = mul[coeffs[:, j][:, None], coeffs[:, j][None, :]]          # (b, d)
            term = self.smul_table[c[:, None, :], digits[:, j][None, :, None]]
            out = self.add[out, term]
        return out

    @classmethod
    def free_module(cls, A: RigRing, k: int):
        """``R^k`` with coordinatewise operations."""
        size = A.rig.size
        elems = list(itertools.product(range(size), repeat=k))
        zero = (A.rig.zero,) * k
        elems.remove(zero)
        elems = [zero, *elems]
        index = {e: i for i, e in enumerate(elems)}
        add = [[index[tuple(A.rig.add[x][y] for x, y in zip(e, f))] for f in elems] for e in elems]
        smul = [[index[tuple(A.rig.mul[c][x] for x in e)] for e in elems] for c in range(size)]
        return cls(A, elems, add, smul)

    @classmethod
    def zmod_module(cls, A: RigRing, moduli):
        """``prod Z/d_i`` over ``A = Z/n`` with every ``d_i`` dividing ``n``."""
        n = A.rig.size
        if any(n % m for m in moduli):
            raise ASetError(f"moduli {moduli} must divide {n}")
        elems = list(itertools.product(*(range(m) for m in moduli)))
        index = {e: i for i, e in enumerate(elems)}
        add = [[index[tuple((x + y) % m for x, y, m in zip(e, f, moduli))] for f in elems] for e in elems]
        smul = [[index[tuple((A.rig.labels[c] * x) % m for x, m in zip(e, moduli))] for e in elems]
                for c in range(n)]
        return cls(A, elems, add, smul)


class RestrictedASet(ASet):
    """``phi_* N``: the carrier of ``N`` with ``<b, m, d> = <phi(b), m, phi(d)>``."""

    def __init__(self, phi: GRHom, N: ASet):
        if N.ring is not phi.target:
            raise ASetError("restriction needs an A-set over the target of the homomorphism")
        self.phi = phi
        self.base = N
        self.ring = phi.source
        self.size = N.size
        self.labels = N.labels

    def act(self, b, ms, d):
        return self.base.act(self.phi(tuple(b)), ms, self.phi(tuple(d)))

    def _build_table(self, n):
        TA = ring_tables(self.ring, n)
        TB = ring_tables(self.phi.target, n)
        image = np.array([TB.code(self.phi(a)) for a in TA.elems[n]], dtype=np.int64)
        return self.base.table(n)[image[:, None, None], np.arange(self.size ** n)[None, :, None],
                                  image[None, None, :]]


class HomASet(ASet):
    """``Hom_A(M, N)``: the action-preserving maps with the pointwise action."""

    def __init__(self, M: ASet, N: ASet, bound: int = 2):
        if M.ring is not N.ring:
            raise ASetError("internal Hom needs A-sets over one ring")
        self.ring = M.ring
        self.source, self.target = M, N
        self.maps = enumerate_homs(M, N, bound)
        self.index = {phi: i for i, phi in enumerate(self.maps)}
        self.size = len(self.maps)
        self.labels = tuple(self.maps)

    def act(self, b, ms, d):
        phis = [self.maps[m] for m in ms]
        image = tuple(self.target.act(b, [phi[x] for phi in phis], d) for x in range(self.source.size))
        if image not in self.index:
            raise ASetError(f"pointwise action left the hom set: {image}")
        return self.index[image]

    def evaluate(self, phi: int, m: int) -> int:
        return self.maps[phi][m]


# maps --------------------------------------------------------------------------------

@dataclass(frozen=True)
class ASetMap:
    source: ASet
    target: ASet
    images: tuple

    def __call__(self, m: int) -> int:
        return self.images[m]

    def preserves_action(self, bound: int = 2) -> bool:
        return _preserves(self.source, self.target, np.asarray(self.images, dtype=np.int64), bound)

    def is_bijective(self) -> bool:
        return self.source.size == self.target.size and len(set(self.images)) == self.source.size


def _preserves(M: ASet, N: ASet, img: np.ndarray, bound: int) -> bool:
    if img[0] != 0:
        return False
    for n in range(1, bound + 1):
        TM = M.table(n)
        TN = N.table(n)
        mapped = _encode_tuples(img[_tuple_codes(M.size, n)], N.size)
        if not np.array_equal(img[TM], TN[:, mapped, :]):
            return False
    return True


# axioms --------------------------------------------------------------------------------

_ASET_LAWS = {
    "unit": "<1, m, 1>_1 = m",
    "pointed": "<(), (), ()>_0 = 0",
    "associativity": "<b <| b', m_i, d <| d'>_m = <b, <b'_j, m_i, d'_j>_{f^-1(j)}, d>_n",
    "naturality-left": "<b, m_f(i), d <| a>_m = <b // a, m_j, d>_n",
    "naturality-right": "<d <| a, m_f(i), b>_m = <d, m_j, b // a>_n",
    "commutativity": "<d <| d'~, m_ji, b <| b'~>_nxm = <d' <| d~, m_ij, b' <| b~>_mxn",
}


def _cases(blocks, limit, samples, rng):
    """Yield cases from blocks ``(key, factors)``: all of them, or a uniform sample."""
    total = sum(int(np.prod([len(x) for x in factors], dtype=np.int64)) for _, factors in blocks)
    if total <= limit:
        for key, factors in blocks:
            for combo in itertools.product(*factors):
                yield key, combo
        return
    weights = [int(np.prod([len(x) for x in factors], dtype=np.int64)) for _, factors in blocks]
    for _ in range(samples):
        key, factors = rng.choices(blocks, weights=weights)[0]
        yield key, tuple(rng.choice(x) for x in factors)


def check_aset_axioms(M: ASet, bound: int = 2, samples: int = 2000, seed: int = 0,
                      limit: int = 200_000) -> AxiomReport:
    """Check the A-set laws for arities up to ``bound``.

    A law whose case space has at most ``limit`` cases is checked on all of
    them; otherwise ``samples`` seeded random cases are drawn.
    """
    A = M.ring
    T = ring_tables(A, max(bound, 1))
    report = AxiomReport(f"A-set over {A.name} ({M.size} elements)", bound)
    elems = list(range(M.size))

    res = AxiomResult("unit", True, 0, True, None, _ASET_LAWS["unit"])
    for m in elems:
        res.cases += 1
        if M.act(A.one, (m,), A.one) != m:
            res.passed, res.witness = False, {"m": _show(M.label(m))}
            break
    report.add(res)
    got = M.act((), (), ())
    report.add(AxiomResult("pointed", got == 0, 1, True,
                           None if got == 0 else {"value": _show(M.label(got))}, _ASET_LAWS["pointed"]))

    maps = [f for m in range(bound + 1) for n in range(bound + 1) for f in iter_partial_fns(m, n)]

    def run(law, blocks, fn):
        rng = random.Random(f"{seed}:{law}")
        total = sum(int(np.prod([len(x) for x in fs], dtype=np.int64)) for _, fs in blocks)
        res = AxiomResult(law, True, 0, total <= limit, None, _ASET_LAWS[law])
        for key, combo in _cases(blocks, limit, samples, rng):
            res.cases += 1
            lhs, rhs, wit = fn(key, combo)
            if lhs != rhs:
                res.passed = False
                res.witness = {**wit, "lhs": _show(M.label(lhs)), "rhs": _show(M.label(rhs))}
                break
        report.add(res)

    def tuples(n):
        return list(itertools.product(elems, repeat=n))

    # associativity
    blocks = []
    for f in maps:
        fams = list(families(A, f))
        blocks.append((f, [T.elems[f.target], T.elems[f.target], fams, fams, tuples(f.source)]))

    def assoc(f, combo):
        b, d, bp, dp, ms = combo
        lhs = M.act(A.multiply(b, bp), ms, A.multiply(d, dp))
        inner = [M.act(bp.comps[j], [ms[i] for i in fib], dp.comps[j]) for j, fib in enumerate(f.fibers())]
        rhs = M.act(b, inner, d)
        return lhs, rhs, {"f": repr(f), "b": _show(b), "d": _show(d), "m": _show(ms)}

    run("associativity", blocks, assoc)

    blocks = []
    for f in maps:
        fams = list(families(A, f))
        blocks.append((f, [T.elems[f.source], T.elems[f.target], fams, tuples(f.target)]))

    def pulled(f, ms):
        return [0 if y is None else ms[y] for y in f.graph]

    def nat_left(f, combo):
        b, d, a, ms = combo
        lhs = M.act(b, pulled(f, ms), A.multiply(d, a))
        rhs = M.act(A.contract(b, a), ms, d)
        return lhs, rhs, {"f": repr(f), "b": _show(b), "d": _show(d), "a": _show(a.comps), "m": _show(ms)}

    def nat_right(f, combo):
        b, d, a, ms = combo
        lhs = M.act(A.multiply(d, a), pulled(f, ms), b)
        rhs = M.act(d, ms, A.contract(b, a))
        return lhs, rhs, {"f": repr(f), "b": _show(b), "d": _show(d), "a": _show(a.comps), "m": _show(ms)}

    run("naturality-left", blocks, nat_left)
    run("naturality-right", blocks, nat_right)

    blocks = []
    for n in range(1, bound + 1):
        for m in range(1, bound + 1):
            if n * m <= bound:
                blocks.append(((n, m), [T.elems[n], T.elems[n], T.elems[m], T.elems[m], tuples(n * m)]))

    def comm(nm, combo):
        n, m = nm
        d, b, dp, bp, ms = combo
        lhs = M.act(A.multiply(d, tilde_const(dp, n)), ms, A.multiply(b, tilde_const(bp, n)))
        swapped = [ms[j * m + i] for i in range(m) for j in range(n)]
        rhs = M.act(A.multiply(dp, tilde_const(d, m)), swapped, A.multiply(bp, tilde_const(b, m)))
        return lhs, rhs, {"n": n, "m": m, "d": _show(d), "b": _show(b), "d'": _show(dp), "b'": _show(bp)}

    run("commutativity", blocks, comm)
    return report


# generators, homs and isomorphisms -------------------------------------------------

def _closure(M: ASet, seeds) -> np.ndarray:
    """Elements reachable from ``seeds`` by actions of arity 1 and 2."""
    T1, T2 = M.table(1), M.table(2)
    have = np.zeros(M.size, dtype=bool)
    have[0] = True
    have[list(seeds)] = True
    while True:
        cur = np.flatnonzero(have)
        pairs = (cur[:, None] * M.size + cur[None, :]).ravel()
        new = np.zeros(M.size, dtype=bool)
        new[T1[:, cur, :].ravel()] = True
        new[T2[:, pairs, :].ravel()] = True
        if not (new & ~have).any():
            return have
        have |= new


def generating_set(M: ASet) -> list:
    """A small generating set, chosen greedily by the size of the generated subset."""
    gens = []
    have = _closure(M, [])
    while not have.all():
        best, best_cover = None, -1
        for m in np.flatnonzero(~have):
            cover = int(_closure(M, gens + [int(m)]).sum())
            if cover > best_cover:
                best, best_cover = int(m), cover
        gens.append(best)
        have = _closure(M, gens)
    return gens


def _generation_plan(M: ASet, gens):
    """Order in which every element is produced from ``gens`` by one action of arity 1 or 2."""
    T1, T2 = M.table(1), M.table(2)
    known = {0: None, **{g: None for g in gens}}
    order = []
    frontier = True
    while frontier:
        frontier = False
        cur = list(known)
        for x in cur:
            hits = T1[:, x, :]
            for bi, di in zip(*np.nonzero(hits >= 0)):
                m = int(hits[bi, di])
                if m not in known:
                    known[m] = (1, int(bi), (x,), int(di))
                    order.append(m)
                    frontier = True
        if len(known) == M.size:
            break
        for x in cur:
            for y in cur:
                hits = T2[:, x * M.size + y, :]
                for m in np.unique(hits):
                    m = int(m)
                    if m not in known:
                        bi, di = map(int, np.argwhere(hits == m)[0])
                        known[m] = (2, bi, (x, y), di)
                        order.append(m)
                        frontier = True
    if len(known) != M.size:
        raise ASetError("the chosen generators do not generate")
    return [(m, known[m]) for m in order]


def enumerate_homs(M: ASet, N: ASet, bound: int = 2, bijective: bool = False) -> list:
    """All pointed maps ``M -> N`` preserving the action in arities ``<= bound``.

    Candidates are fixed by the images of a generating set and then checked
    against the full action tables.  Maps are returned as image tuples in
    lexicographic order.
    """
    if M.ring is not N.ring:
        raise ASetError("maps of A-sets need a common ring")
    if bijective and M.size != N.size:
        return []
    gens = generating_set(M)
    plan = _generation_plan(M, gens)
    T1, T2 = N.table(1), N.table(2)
    out = []
    choices = range(1, N.size) if bijective else range(N.size)
    for assign in itertools.product(choices, repeat=len(gens)):
        img = np.full(M.size, -1, dtype=np.int64)
        img[0] = 0
        ok = True
        for g, y in zip(gens, assign):
            if img[g] not in (-1, y):
                ok = False
            img[g] = y
        if not ok:
            continue
        for m, (arity, bi, xs, di) in plan:
            if arity == 1:
                img[m] = T1[bi, img[xs[0]], di]
            else:
                img[m] = T2[bi, img[xs[0]] * N.size + img[xs[1]], di]
        if bijective and len(set(img.tolist())) != M.size:
            continue
        if _preserves(M, N, img, bound):
            out.append(tuple(int(x) for x in img))
    return sorted(set(out))


def find_isomorphism(M: ASet, N: ASet, bound: int = 2):
    """An action-preserving bijection ``M -> N`` as an :class:`ASetMap`, or ``None``."""
    for img in enumerate_homs(M, N, bound, bijective=True):
        return ASetMap(M, N, img)
    return None


def is_isomorphic(M: ASet, N: ASet, bound: int = 2) -> bool:
    return find_isomorphism(M, N, bound) is not None


# term quotients -------------------------------------------------------------------------
#
# A term <b, g, d>_n (b, d in A_n, g in G^n) is stored as the integer
#     offset[n] + (code(b) * |G|^n + code(g)) * |A_n| + code(d).
# Naturality is imposed only for a generating set of maps (adjacent
# transpositions, a scalar in the last slot, merging the last two points,
# dropping the last point, adding a point) with their coefficient families
# reduced modulo scalars.  Every partial map of arity <= K is a composite of
# these, and on the shipped rings every coefficient family over a composite
# is a product of families over the factors; `naturality_generators_suffice`
# compares the resulting partition with the one from all maps.

MAX_TERMS = 3_000_000


class _Universe:
    def __init__(self, A: GenRing, ngens: int, K: int):
        self.A, self.G, self.K = A, ngens, K
        self.T = ring_tables(A, K)
        self.asize = [self.T.size[n] for n in range(K + 1)]
        self.offset = [0]
        for n in range(K + 1):
            self.offset.append(self.offset[-1] + self.asize[n] ** 2 * ngens ** n)
        self.total = self.offset[-1]

    @staticmethod
    def estimate(A, ngens, K):
        T = ring_tables(A, K)
        return sum(T.size[n] ** 2 * ngens ** n for n in range(K + 1))

    def code(self, n, b, g, d):
        return self.offset[n] + (b * self.G ** n + g) * self.asize[n] + d

    def term_code(self, b: tuple, g, d: tuple) -> int:
        n = len(b)
        gc = 0
        for x in g:
            gc = gc * self.G + x
        return self.code(n, self.T.code(b), gc, self.T.code(d))

    def decode(self, c: int):
        n = max(k for k in range(self.K + 1) if self.offset[k] <= c)
        r = c - self.offset[n]
        d = r % self.asize[n]
        r //= self.asize[n]
        gc = r % (self.G ** n)
        b = r // (self.G ** n)
        g = []
        for _ in range(n):
            g.append(gc % self.G)
            gc //= self.G
        return self.T.elems[n][b], tuple(reversed(g)), self.T.elems[n][d]


def _scalar_reps(A: GenRing, T: Tables) -> list:
    """Elements ``c`` of ``A_2`` such that every element is ``c <| (s, t)`` for scalars ``s, t``."""
    ident = identity(2)
    reached, reps = set(), []
    for c in T.elems[2]:
        if c in reached:
            continue
        reps.append(c)
        for s in T.elems[1]:
            for t in T.elems[1]:
                reached.add(A.multiply(c, ElemFamily(ident, (s, t))))
    return reps


def naturality_pairs(A: GenRing, K: int):
    """The generating maps with coefficient families used for naturality edges."""
    T = ring_tables(A, K)
    one = A.one
    out = []
    for n in range(1, K + 1):
        for i in range(n - 1):
            graph = list(range(n))
            graph[i], graph[i + 1] = i + 1, i
            f = PartialFn(n, n, tuple(graph))
            out.append((f, ElemFamily(f, (one,) * n)))
        for s in T.elems[1]:
            if s != one:
                out.append((identity(n), ElemFamily(identity(n), (one,) * (n - 1) + (s,))))
    for n in range(1, K):
        f = PartialFn(n + 1, n, tuple(range(n)) + (n - 1,))
        for c in _scalar_reps(A, T):
            out.append((f, ElemFamily(f, (one,) * (n - 1) + (c,))))
    for n in range(0, K):
        drop = PartialFn(n + 1, n, tuple(range(n)) + (None,))
        out.append((drop, ElemFamily(drop, (one,) * n)))
        inc = PartialFn(n, n + 1, tuple(range(n)))
        out.append((inc, ElemFamily(inc, (one,) * n + ((),))))
    return out


def all_naturality_pairs(A: GenRing, K: int):
    """Every partial map of arity ``<= K`` with every coefficient family (for cross-checks)."""
    return [(f, a) for m in range(K + 1) for n in range(K + 1)
            for f in iter_partial_fns(m, n) for a in families(A, f)]


def _pull_generators(f: PartialFn, G: int) -> np.ndarray:
    """``out[g-code, c]``: codes of ``g o f`` over ``G^n``, the undefined slots filled by ``c``."""
    n, m = f.target, f.source
    undef = [i for i, y in enumerate(f.graph) if y is None]
    gd = _tuple_codes(G, n)
    fill = _tuple_codes(G, len(undef))
    out = np.zeros((len(gd), len(fill), m), dtype=np.int64)
    for i, y in enumerate(f.graph):
        if y is not None:
            out[:, :, i] = gd[:, y][:, None]
    for k, i in enumerate(undef):
        out[:, :, i] = fill[:, k][None, :]
    return _encode_tuples(out, G)


def _naturality_edges(U: _Universe, f: PartialFn, a: ElemFamily):
    T = U.T
    fam = T.fam_encode(f, np.array([[T.code(c) for c in a.comps]], dtype=np.int64))[0]
    mul_a = T.mul(f)[:, fam]            # d in A_n  -> d <| a in A_m
    con_a = T.con(f)[:, fam]            # b in A_m  -> b // a in A_n
    m, n = f.source, f.target
    pull = _pull_generators(f, U.G)     # (G^n, fills)
    b = np.arange(U.asize[m])[:, None, None, None]
    g = np.arange(U.G ** n)[None, :, None, None]
    c = np.arange(pull.shape[1])[None, None, :, None]
    d = np.arange(U.asize[n])[None, None, None, :]
    gm = pull[g, c]
    shape = np.broadcast_shapes(b.shape, g.shape, c.shape, d.shape)
    left_u = U.code(m, b, gm, mul_a[d])
    left_v = U.code(n, con_a[b], g, d)
    right_u = U.code(m, mul_a[d], gm, b)
    right_v = U.code(n, d, g, con_a[b])
    return [(np.broadcast_to(left_u, shape).ravel(), np.broadcast_to(left_v, shape).ravel()),
            (np.broadcast_to(right_u, shape).ravel(), np.broadcast_to(right_v, shape).ravel())]


def _commutativity_edges(U: _Universe):
    A, T = U.A, U.T
    out = []
    for n in range(1, U.K + 1):
        for m in range(1, U.K + 1):
            if n * m > U.K:
                continue
            nm = n * m
            lhs = np.array([[T.code(A.multiply(d, tilde_const(dp, n))) for dp in T.elems[m]]
                            for d in T.elems[n]], dtype=np.int64)
            rhs = np.array([[T.code(A.multiply(dp, tilde_const(d, m))) for dp in T.elems[m]]
                            for d in T.elems[n]], dtype=np.int64)
            perm = [j * m + i for i in range(m) for j in range(n)]   # rhs slot -> lhs slot
            gd = _tuple_codes(U.G, nm)
            g_rhs = _encode_tuples(gd[:, perm], U.G)
            # relabel rhs coefficients into lhs slot order to detect trivial instances
            back = PartialFn(nm, nm, tuple(perm))
            rhs_in_lhs = np.array([T.code(A.transport(back, T.elems[nm][c])) for c in range(U.asize[nm])])
            if n == 1 or m == 1:
                if np.array_equal(rhs_in_lhs[rhs], lhs):
                    continue
            D = np.arange(U.asize[n])[:, None, None, None, None]
            Dp = np.arange(U.asize[m])[None, :, None, None, None]
            Bb = np.arange(U.asize[n])[None, None, :, None, None]
            Bp = np.arange(U.asize[m])[None, None, None, :, None]
            g = np.arange(U.G ** nm)[None, None, None, None, :]
            u = U.code(nm, lhs[D, Dp], g, lhs[Bb, Bp])
            v = U.code(nm, rhs[D, Dp], g_rhs[g], rhs[Bb, Bp])
            shape = np.broadcast_shapes(u.shape, v.shape)
            out.append((np.broadcast_to(u, shape).ravel(), np.broadcast_to(v, shape).ravel()))
    return out


@dataclass
class TermBatch:
    """Terms of one arity ``n`` as code arrays; terms sharing a ``key`` are identified."""

    n: int
    b: np.ndarray
    g: np.ndarray       # (N, n) generator indices
    d: np.ndarray
    key: np.ndarray


def _context_side(U: _Universe, k, bcodes, gdig, dcodes, r):
    """Codes of ``<c <| (b + 1_r), (g, y), e <| (d + 1_r)>`` shaped ``(N, |A_1+r|, G^r, |A_1+r|)``."""
    T = U.T
    f = PartialFn(k + r, 1 + r, (0,) * k + tuple(range(1, r + 1)))
    one = T.code(U.A.one)
    pad = np.full((len(bcodes), r), one, dtype=np.int64)
    fb = T.fam_encode(f, np.concatenate([bcodes[:, None], pad], axis=1))
    fd = T.fam_encode(f, np.concatenate([dcodes[:, None], pad], axis=1))
    cb = T.mul(f)[:, fb].T
    cd = T.mul(f)[:, fd].T
    gcode = _encode_tuples(gdig, U.G)[:, None] * U.G ** r + np.arange(U.G ** r)[None, :]
    return U.code(k + r, cb[:, :, None, None], gcode[:, None, :, None], cd[:, None, None, :])


def _context_edges(U: _Universe, batches):
    """Join every term to the first term with its key, inside every one-hole context."""
    # arity 0 holds only the zero term, already the basepoint of every context
    batches = sorted((bt for bt in batches if len(bt.key) and bt.n), key=lambda bt: bt.n)
    root = {}
    for bi, bt in enumerate(batches):
        keys, first = np.unique(bt.key, return_index=True)
        for kk, row in zip(keys.tolist(), first.tolist()):
            root.setdefault(kk, (bi, row))
    edges = []
    for bi, bt in enumerate(batches):
        roots = [root[kk] for kk in bt.key.tolist()]
        rb = np.array([x[0] for x in roots], dtype=np.int64)
        rr = np.array([x[1] for x in roots], dtype=np.int64)
        for ri in np.unique(rb).tolist():
            sel = np.flatnonzero(rb == ri)
            if ri == bi:
                sel = sel[rr[sel] != sel]
            if not len(sel):
                continue
            other = batches[ri]
            rows = rr[sel]
            for r in range(0, U.K - max(bt.n, other.n) + 1):
                u = _context_side(U, bt.n, bt.b[sel], bt.g[sel], bt.d[sel], r)
                v = _context_side(U, other.n, other.b[rows], other.g[rows], other.d[rows], r)
                edges.append((u.ravel(), v.ravel()))
    return edges


def _factor(A: GenRing, D: tuple, h: PartialFn):
    """``(d, a)`` with ``d <| a = D`` for ``a`` over ``h``, or ``None``."""
    if isinstance(A, RigRing):
        d = (A.cone,) * h.target
        return d, ElemFamily(h, tuple(tuple(D[i] for i in fib) for fib in h.fibers()))
    if isinstance(A, MonoidRing):
        nz = [i for i, x in enumerate(D) if x]
        if not nz:
            return A.zero(h.target), ElemFamily(h, tuple((0,) * len(fib) for fib in h.fibers()))
        i = nz[0]
        j = h.graph[i]
        comps = tuple(tuple(A.cone if p == i else 0 for p in fib) if k == j else (0,) * len(fib)
                      for k, fib in enumerate(h.fibers()))
        return A.delta(h.target, j, D[i]), ElemFamily(h, comps)
    for d in A.carrier(h.target):
        for a in families(A, h):
            if A.multiply(d, a) == tuple(D):
                return d, a
    return None


def reduce_term(A: GenRing, b: tuple, g: tuple, d: tuple):
    """Shorten a term by naturality: merge equal generators, drop zero coefficients."""
    distinct = []
    for x in g:
        if x not in distinct:
            distinct.append(x)
    h = PartialFn(len(g), len(distinct), tuple(distinct.index(x) for x in g))
    found = _factor(A, d, h)
    if found is not None:
        d2, a = found
        b, g, d = A.contract(b, a), tuple(distinct), d2
    keep = [i for i in range(len(g)) if b[i] != A.czero and d[i] != A.czero]
    return tuple(b[i] for i in keep), tuple(g[i] for i in keep), tuple(d[i] for i in keep)


def _components(total, edges):
    if edges:
        u = np.concatenate([e[0] for e in edges])
        v = np.concatenate([e[1] for e in edges])
    else:
        u = v = np.zeros(0, dtype=np.int64)
    graph = coo_matrix((np.ones(len(u), dtype=np.int8), (u, v)), shape=(total, total)).tocsr()
    _, labels = connected_components(graph, directed=False)
    return labels


@dataclass
class TermQuotient:
    """Congruence classes of terms ``<b, g, d>_n`` with ``n <= cutoff``.

    ``groups`` lists terms (as ``(b, g, d)`` tuples) that must become equal;
    they are imposed in every one-hole context.  ``stabilized`` records
    whether recomputing at ``cutoff + 1`` left the partition of the terms of
    arity ``<= cutoff`` unchanged.
    """

    ring: GenRing
    generators: tuple
    cutoff: int
    groups_at: object = None
    naturality: str = "generators"
    stabilized: bool = field(init=False, default=False)
    probe_skipped: bool = field(init=False, default=False)
    new_classes: int = field(init=False, default=0)

    def __post_init__(self):
        self.universe = _Universe(self.ring, len(self.generators), self.cutoff)
        if self.universe.total > MAX_TERMS:
            raise CutoffError(f"{self.universe.total} terms exceed the universe limit {MAX_TERMS}")
        labels = self._partition(self.cutoff)
        comp_rep = {}
        for code, lab in enumerate(labels):
            comp_rep.setdefault(int(lab), code)
        reps = sorted(comp_rep.values())
        self.rep_codes = reps
        cls_of_comp = {int(labels[c]): i for i, c in enumerate(reps)}
        self.term_class = np.array([cls_of_comp[int(lab)] for lab in labels], dtype=np.int64) \
            if len(labels) < 200_000 else np.vectorize(cls_of_comp.__getitem__)(labels)
        self.size = len(reps)
        self._probe(labels)

    def _groups(self, K):
        return [] if self.groups_at is None else self.groups_at(K)

    def _partition(self, K):
        U = self.universe if K == self.cutoff else _Universe(self.ring, len(self.generators), K)
        pairs = naturality_pairs(self.ring, K) if self.naturality == "generators" \
            else all_naturality_pairs(self.ring, K)
        edges = []
        for f, a in pairs:
            edges.extend(_naturality_edges(U, f, a))
        edges.extend(_commutativity_edges(U))
        edges.extend(_context_edges(U, self._groups(K)))
        return _components(U.total, edges)

    def _probe(self, labels):
        K = self.cutoff
        if _Universe.estimate(self.ring, len(self.generators), K + 1) > MAX_TERMS:
            self.probe_skipped = True
            return
        big = self._partition(K + 1)
        small = self.universe.total
        self.stabilized = len(np.unique(big[:small])) == len(np.unique(labels))
        self.new_classes = len(np.setdiff1d(np.unique(big), np.unique(big[:small])))

    @property
    def provisional(self) -> bool:
        return not self.stabilized

    def class_of(self, b: tuple, g, d: tuple) -> int:
        b, g, d = reduce_term(self.ring, tuple(b), tuple(g), tuple(d))
        if len(b) > self.cutoff:
            raise CutoffError(f"a term of arity {len(b)} remains above the cutoff {self.cutoff}")
        return int(self.term_class[self.universe.term_code(b, g, d)])

    def representative(self, cls: int):
        return self.universe.decode(self.rep_codes[cls])

    def generator_class(self, i: int) -> int:
        return self.class_of(self.ring.one, (i,), self.ring.one)

    def aset(self) -> "QuotientASet":
        return QuotientASet(self)

    def report(self) -> dict:
        return {"classes": self.size, "cutoff": self.cutoff, "stabilized": self.stabilized,
                "probe_skipped": self.probe_skipped, "new_classes_above_cutoff": self.new_classes,
                "terms": self.universe.total}


class QuotientASet(ASet):
    """The A-set of classes of a :class:`TermQuotient`, acting by flattening representatives."""

    def __init__(self, Q: TermQuotient):
        self.quotient = Q
        self.ring = Q.ring
        self.size = Q.size
        self.labels = tuple(_term_label(Q, c) for c in range(Q.size))
        self._cache = {}

    def act(self, b, ms, d):
        key = (tuple(b), tuple(ms), tuple(d))
        if key not in self._cache:
            A = self.ring
            reps = [self.quotient.representative(m) for m in ms]
            sizes = [len(r[0]) for r in reps]
            f = PartialFn(sum(sizes), len(ms), tuple(j for j, k in enumerate(sizes) for _ in range(k)))
            B = A.multiply(tuple(b), ElemFamily(f, tuple(r[0] for r in reps)))
            D = A.multiply(tuple(d), ElemFamily(f, tuple(r[2] for r in reps)))
            g = tuple(x for r in reps for x in r[1])
            self._cache[key] = self.quotient.class_of(B, g, D)
        return self._cache[key]


    def values(self, n, digits):
        """Vectorized over ``b`` and ``d``: flatten once per element of ``A_n`` and look up term codes.

        The flattened term is looked up unreduced when its arity stays within
        the cutoff; it lies in the same class as its reduction because the
        partition contains the naturality identifications.
        """
        if n in self.__dict__.get("_tables", {}):
            return super().values(n, digits)
        Q, A = self.quotient, self.ring
        U = Q.universe
        elems = ring_tables(A, n).elems[n]
        out = np.empty((len(elems), len(digits), len(elems)), dtype=np.int64)
        if isinstance(A, RigRing):
            return self._rig_values(n, digits, elems, out)
        for row, ms in enumerate(np.asarray(digits, dtype=np.int64)):
            reps = [Q.representative(int(m)) for m in ms]
            sizes = [len(r[0]) for r in reps]
            N = sum(sizes)
            if N > Q.cutoff:
                out[:, row, :] = super().values(n, ms[None, :])[:, 0, :]
                continue
            f = PartialFn(N, n, tuple(j for j, k in enumerate(sizes) for _ in range(k)))
            bfam = ElemFamily(f, tuple(r[0] for r in reps))
            dfam = ElemFamily(f, tuple(r[2] for r in reps))
            Bc = np.array([U.T.code(A.multiply(b, bfam)) for b in elems], dtype=np.int64)
            Dc = np.array([U.T.code(A.multiply(d, dfam)) for d in elems], dtype=np.int64)
            gc = 0
            for x in (x for r in reps for x in r[1]):
                gc = gc * U.G + x
            codes = U.offset[N] + (Bc[:, None] * U.G ** N + gc) * U.asize[N] + Dc[None, :]
            out[:, row, :] = Q.term_class[codes]
        return out

    def _rig_values(self, n, digits, elems, out):
        """Over a commutative rig a reduced term only sees the products ``b_j d_j``.

        So ``<b, m, d>`` equals ``<b d, m, 1>`` and one class computation per
        element of ``A_n`` fills a whole ``b x d`` slice.
        """
        A = self.ring
        mul = A.rig.mul
        index = {e: i for i, e in enumerate(elems)}
        prod = np.array([[index[tuple(mul[x][y] for x, y in zip(b, d))] for d in elems] for b in elems],
                        dtype=np.int64).reshape(len(elems), len(elems))
        ones = (A.cone,) * n
        for row, ms in enumerate(np.asarray(digits, dtype=np.int64)):
            ms = [int(m) for m in ms]
            per_e = np.array([self.act(e, ms, ones) for e in elems], dtype=np.int64)
            out[:, row, :] = per_e[prod]
        return out


def _term_label(Q: TermQuotient, c: int) -> str:
    b, g, d = Q.representative(c)
    if not b:
        return "0"
    gens = ", ".join(str(Q.generators[x]) for x in g)
    return f"<{_show(b)}, ({gens}), {_show(d)}>"


# constructions --------------------------------------------------------------------------

def default_cutoff(A: GenRing, ngens: int) -> int:
    """Smallest cutoff at which every flattened term reduces into the universe."""
    need = 1 if isinstance(A, MonoidRing) else ngens
    return max(2, need)


def _terms_over(M: ASet, gens, K: int):
    """Terms over ``gens`` of arity ``<= K`` with their values in ``M``.

    Returns ``(n, b, gdig, d, value)`` arrays per arity, codes in the ring of ``M``.
    """
    ring_tables(M.ring, K)
    out = []
    gens = np.asarray(gens, dtype=np.int64)
    for n in range(K + 1):
        gdig = _tuple_codes(len(gens), n)
        vals = M.values(n, gens[gdig] if n else gdig)
        nb, ng, nd = vals.shape
        b, g, d = np.meshgrid(np.arange(nb), np.arange(ng), np.arange(nd), indexing="ij")
        out.append((n, b.ravel(), gdig[g.ravel()], d.ravel(), vals.ravel()))
    return out


def _batches(terms, gen_map, key_offset, coeff_map=None):
    """Turn ``_terms_over`` output into :class:`TermBatch` es for a quotient."""
    out = []
    for n, b, gdig, d, vals in terms:
        if coeff_map is not None:
            b, d = coeff_map[n][b], coeff_map[n][d]
        out.append(TermBatch(n, b, gen_map[gdig] if n else gdig, d, vals + key_offset))
    return out


def _phi_codes(phi: GRHom, K: int):
    TB, TA = ring_tables(phi.source, K), ring_tables(phi.target, K)
    return {n: np.array([TA.code(phi(x)) for x in TB.elems[n]], dtype=np.int64) for n in range(K + 1)}


@dataclass
class Construction:
    """A quotient together with the maps that present it."""

    quotient: TermQuotient
    aset: QuotientASet
    maps: dict

    @property
    def stabilized(self):
        return self.quotient.stabilized


def free_aset(A: GenRing, V, cutoff: int | None = None, naturality: str = "generators") -> Construction:
    """The free A-set on a finite set ``V`` (a size or a list of labels).

    ``maps["unit"]`` lists the classes of the generators ``<1, v, 1>_1``.
    """
    labels = tuple(range(V)) if isinstance(V, int) else tuple(V)
    K = default_cutoff(A, len(labels)) if cutoff is None else cutoff
    Q = TermQuotient(A, labels, K, None, naturality)
    return Construction(Q, Q.aset(), {"unit": tuple(Q.generator_class(i) for i in range(len(labels)))})


def universal_extension(C: Construction, images, M: ASet) -> ASetMap:
    """The A-set map ``A^V -> M`` extending ``v -> images[v]``."""
    if C.quotient.provisional:
        raise ASetError("the free object did not stabilize at its cutoff; refusing to extend")
    out = []
    for cls in range(C.aset.size):
        b, g, d = C.quotient.representative(cls)
        out.append(M.act(b, [images[x] for x in g], d))
    return ASetMap(C.aset, M, tuple(out))


def restrict_scalars(phi: GRHom, N: ASet) -> RestrictedASet:
    return RestrictedASet(phi, N)


def _expressions(M: ASet, gens, K):
    """For each element of ``M`` a term ``(b, g, d)`` over ``gens`` of least arity.

    Arities are tried upward, stopping once every element is reached or at ``K``.
    """
    best = {}
    T = ring_tables(M.ring, K)
    gens_arr = np.asarray(gens, dtype=np.int64)
    for n in range(K + 1):
        gdig = _tuple_codes(len(gens), n)
        vals = M.values(n, gens_arr[gdig] if n else gdig)
        nb, ng, nd = vals.shape
        for bi, gi, di in zip(*np.unravel_index(np.arange(vals.size), vals.shape)):
            v = int(vals[bi, gi, di])
            if v not in best:
                best[v] = (T.elems[n][bi], tuple(int(x) for x in gdig[gi]), T.elems[n][di])
        if len(best) == M.size:
            return best
    raise ASetError(f"generators do not reach every element within arity {K}")


def extend_scalars(phi: GRHom, M: ASet, cutoff: int | None = None) -> Construction:
    """``phi^* M`` for ``phi: B -> A`` and a B-set ``M``.

    Generators are a generating set of ``M``; B-terms over them with equal
    values in ``M`` are identified after pushing their coefficients along
    ``phi``.  ``maps["unit"][m]`` is the class of ``m``.
    """
    if M.ring is not phi.source:
        raise ASetError("extension of scalars needs a B-set for phi: B -> A")
    A = phi.target
    gens = generating_set(M)
    K = default_cutoff(A, len(gens)) if cutoff is None else cutoff
    ident = np.arange(len(gens), dtype=np.int64)

    def groups(k):
        return _batches(_terms_over(M, gens, k), ident, 0, _phi_codes(phi, k))

    Q = TermQuotient(A, tuple(M.label(g) for g in gens), K, groups)
    ex = _expressions(M, gens, K)
    unit = tuple(Q.class_of(phi(ex[m][0]), ex[m][1], phi(ex[m][2])) for m in range(M.size))
    return Construction(Q, Q.aset(), {"unit": unit})


def tensor(M: ASet, N: ASet, cutoff: int | None = None) -> Construction:
    """``M (x)_A N``: the free A-set on pairs of generators modulo bilinearity.

    ``maps["bilinear"][m][n]`` is the class of ``m (x) n``.
    """
    if M.ring is not N.ring:
        raise ASetError("tensor product needs A-sets over one ring")
    A = M.ring
    SM, SN = generating_set(M), generating_set(N)
    pairs = [(s, t) for s in SM for t in SN]
    K = default_cutoff(A, len(pairs)) if cutoff is None else cutoff

    def pair_index(si, ti):
        return si * len(SN) + ti

    def groups(k):
        out = []
        terms_m = _terms_over(M, SM, k)
        terms_n = _terms_over(N, SN, k)
        for ti in range(len(SN)):
            gmap = np.array([pair_index(si, ti) for si in range(len(SM))], dtype=np.int64)
            out += _batches(terms_m, gmap, ti * M.size)
        base = len(SN) * M.size
        for si in range(len(SM)):
            gmap = np.array([pair_index(si, ti) for ti in range(len(SN))], dtype=np.int64)
            out += _batches(terms_n, gmap, base + si * N.size)
        return out

    Q = TermQuotient(A, tuple(f"{M.label(s)}(x){N.label(t)}" for s, t in pairs), K, groups)
    QA = Q.aset()
    em, en = _expressions(M, SM, K), _expressions(N, SN, K)
    bil = []
    for m in range(M.size):
        bm, gm, dm = em[m]
        row = []
        for n in range(N.size):
            bn, gn, dn = en[n]
            inner = [Q.class_of(bm, tuple(pair_index(x, t) for x in gm), dm) for t in gn]
            row.append(QA.act(bn, inner, dn))
        bil.append(tuple(row))
    return Construction(Q, QA, {"bilinear": tuple(bil), "pairs": tuple(pairs)})


def coproduct(M: ASet, N: ASet, cutoff: int | None = None) -> Construction:
    """``M || N``: generators of both, each side's relations imposed."""
    if M.ring is not N.ring:
        raise ASetError("coproduct needs A-sets over one ring")
    A = M.ring
    SM, SN = generating_set(M), generating_set(N)
    K = default_cutoff(A, len(SM) + len(SN)) if cutoff is None else cutoff
    shift = len(SM)
    lmap = np.arange(len(SM), dtype=np.int64)
    rmap = np.arange(len(SN), dtype=np.int64) + shift

    def groups(k):
        return (_batches(_terms_over(M, SM, k), lmap, 0)
                + _batches(_terms_over(N, SN, k), rmap, M.size))

    labels = tuple(f"L{M.label(s)}" for s in SM) + tuple(f"R{N.label(t)}" for t in SN)
    Q = TermQuotient(A, labels, K, groups)
    em, en = _expressions(M, SM, K), _expressions(N, SN, K)
    left = tuple(Q.class_of(*em[m]) for m in range(M.size))
    right = tuple(Q.class_of(en[m][0], tuple(x + shift for x in en[m][1]), en[m][2]) for m in range(N.size))
    return Construction(Q, Q.aset(), {"left": left, "right": right, "generators": (tuple(SM), tuple(SN))})


def internal_hom(M: ASet, N: ASet, bound: int = 2) -> HomASet:
    return HomASet(M, N, bound)


def _expression_batches(A: GenRing, exprs, shift: int, keys) -> list:
    """One :class:`TermBatch` per arity from ``(b, g, d)`` expressions and their keys."""
    T = ring_tables(A, 2)
    by_arity = {}
    for (b, g, d), key in zip(exprs, keys):
        by_arity.setdefault(len(b), []).append((T.code(b), tuple(x + shift for x in g), T.code(d), key))
    out = []
    for n, rows in sorted(by_arity.items()):
        arr = lambda i: np.array([r[i] for r in rows], dtype=np.int64)
        g = np.array([r[1] for r in rows], dtype=np.int64).reshape(len(rows), n)
        out.append(TermBatch(n, arr(0), g, arr(2), arr(3)))
    return out


def pushout(f: ASetMap, g: ASetMap, cutoff: int | None = None) -> Construction:
    """``N ||_M P`` for ``f: M -> N`` and ``g: M -> P``.

    The coproduct of ``N`` and ``P`` with ``f(m)`` and ``g(m)`` identified
    for every ``m``.  ``maps["left"]`` and ``maps["right"]`` are the two
    structure maps.
    """
    M, N, P = f.source, f.target, g.target
    if g.source is not M:
        raise ASetError("a pushout needs two maps out of one A-set")
    if N.ring is not P.ring:
        raise ASetError("pushout needs A-sets over one ring")
    A = N.ring
    SN, SP = generating_set(N), generating_set(P)
    K = default_cutoff(A, len(SN) + len(SP)) if cutoff is None else cutoff
    shift = len(SN)
    lmap = np.arange(len(SN), dtype=np.int64)
    rmap = np.arange(len(SP), dtype=np.int64) + shift
    en, ep = _expressions(N, SN, K), _expressions(P, SP, K)
    glue = _expression_batches(A, [ep[g(m)] for m in M.elements()], shift, [f(m) for m in M.elements()])

    def groups(k):
        return (_batches(_terms_over(N, SN, k), lmap, 0)
                + _batches(_terms_over(P, SP, k), rmap, N.size) + glue)

    labels = tuple(f"L{N.label(s)}" for s in SN) + tuple(f"R{P.label(t)}" for t in SP)
    Q = TermQuotient(A, labels, K, groups)
    left = tuple(Q.class_of(*en[m]) for m in range(N.size))
    right = tuple(Q.class_of(ep[m][0], tuple(x + shift for x in ep[m][1]), ep[m][2]) for m in range(P.size))
    return Construction(Q, Q.aset(), {"left": left, "right": right, "generators": (tuple(SN), tuple(SP))})


def induced_map(C: Construction, target: ASet, generator_images) -> ASetMap:
    """The map out of a quotient sending generator ``i`` to ``generator_images[i]``."""
    out = []
    for cls in range(C.aset.size):
        b, g, d = C.quotient.representative(cls)
        out.append(target.act(b, [generator_images[x] for x in g], d))
    return ASetMap(C.aset, target, tuple(out))
