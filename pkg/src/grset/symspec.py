"""Symmetric sequences and modules over the sphere, truncated in level and dimension.

Everything here lives over ``F``: a level of a sequence is a pointed
simplicial set (a :class:`~grset.simpset.TruncSimpASet` whose levels are
pointed sets) with an action of the symmetric group.  Cells are hashable
keys stored as the labels of the pointed sets, basepoint first.

Conventions
-----------
* A permutation is a tuple ``s`` with ``s[i]`` the image of ``i``; ``s * t``
  means ``s o t``.
* The tensor in the decomposition model has cells ``(U, x, y)``: ``U`` the
  sorted positions carrying ``x``, the complement carrying ``y``.
* In an action ``S^p ^ M^q -> M^{p+q}`` the sphere occupies the first ``p``
  positions.
* ``(rM)^n = M^{n+1}`` with ``Sigma_n`` fixing the last position;
  ``(lM)^n`` has cells ``(i, x)``, ``i`` the special position.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache

from .aset import PointedSetASet
from .fincat import MonotoneMap
from .simpset import (TruncSimpASet, build, make_std, monotone_maps, pointed_ring, RangeError)


class SymSpecError(ValueError):
    pass


# permutations -------------------------------------------------------------------------------

@lru_cache(maxsize=None)
def perms(n: int) -> tuple:
    return tuple(itertools.permutations(range(n)))


def pmul(s: tuple, t: tuple) -> tuple:
    return tuple(s[i] for i in t)


def pinv(s: tuple) -> tuple:
    out = [0] * len(s)
    for i, v in enumerate(s):
        out[v] = i
    return tuple(out)


def block(a: tuple, b: tuple) -> tuple:
    """``a x b`` acting on the first ``len(a)`` and the last ``len(b)`` positions."""
    return tuple(a) + tuple(len(a) + x for x in b)


def adjacent(n: int) -> list:
    out = []
    for i in range(n - 1):
        s = list(range(n))
        s[i], s[i + 1] = s[i + 1], s[i]
        out.append(tuple(s))
    return out


def induced_on(sigma: tuple, U: tuple) -> tuple:
    """The permutation of ``range(len(U))`` that ``sigma`` induces from ``U`` to ``sigma(U)``."""
    image = sorted(sigma[u] for u in U)
    return tuple(image.index(sigma[u]) for u in U)


def shuffle_of(U: tuple, n: int) -> tuple:
    """The shuffle sending the first ``len(U)`` positions onto ``U``, the rest onto the complement."""
    rest = tuple(i for i in range(n) if i not in U)
    return tuple(U) + rest


def complement(U: tuple, n: int) -> tuple:
    return tuple(i for i in range(n) if i not in U)


def subsets(n: int):
    for p in range(n + 1):
        yield from itertools.combinations(range(n), p)


# pointed simplicial sets ------------------------------------------------------------------------

def pss(D: int, cells_at, pull, name: str = "") -> TruncSimpASet:
    """A pointed simplicial set from its cells per level and ``pull(l, cell) -> cell | None``."""
    cells = [tuple(cells_at(k)) for k in range(D + 1)]
    index = [{c: i + 1 for i, c in enumerate(level)} for level in cells]
    levels = [PointedSetASet(pointed_ring(), len(level), ("*", *level)) for level in cells]

    def pull_index(l, x):
        if x == 0:
            return 0
        y = pull(l, cells[l.target][x - 1])
        return 0 if y is None else index[l.source][y]

    X = build(levels, pull_index, name)
    X.__dict__["_index"] = index
    return X


def cells(X: TruncSimpASet, k: int) -> tuple:
    return X.levels[k].labels[1:]


def index_of(X: TruncSimpASet, k: int) -> dict:
    cache = X.__dict__.get("_index")
    if cache is None:
        cache = [{c: i + 1 for i, c in enumerate(cells(X, j))} for j in range(X.D + 1)]
        X.__dict__["_index"] = cache
    return cache[k]


def pull_cell(X: TruncSimpASet, l: MonotoneMap, cell):
    x = X.star[l][index_of(X, l.target)[cell]]
    return None if x == 0 else X.levels[l.source].labels[x]


def zero_pss(D: int) -> TruncSimpASet:
    return pss(D, lambda k: (), lambda l, c: None, "0")


def point_pss(D: int) -> TruncSimpASet:
    """``S^0``: one cell in every dimension."""
    return pss(D, lambda k: ((),), lambda l, c: c, "S0")


def smash(X: TruncSimpASet, Y: TruncSimpASet, name: str = "") -> TruncSimpASet:
    def pull(l, c):
        a, b = pull_cell(X, l, c[0]), pull_cell(Y, l, c[1])
        return None if a is None or b is None else (a, b)

    return pss(X.D, lambda k: [(a, b) for a in cells(X, k) for b in cells(Y, k)], pull,
               name or f"{X.name}^{Y.name}")


def collapse(whole: TruncSimpASet, sub_maps, name: str = "") -> TruncSimpASet:
    """``whole / sub``: cells outside the image of the inclusion, the rest sent to the basepoint."""
    hit = [set(sub_maps[k]) for k in range(whole.D + 1)]
    keep = [[whole.levels[k].labels[x] for x in range(1, whole.levels[k].size) if x not in hit[k]]
            for k in range(whole.D + 1)]
    kept = [set(level) for level in keep]

    def pull(l, c):
        y = pull_cell(whole, l, c)
        return y if y in kept[l.source] else None

    return pss(whole.D, lambda k: keep[k], pull, name)


def circle(D: int) -> TruncSimpASet:
    """``S^1 = Delta(1)_+ / dDelta(1)_+``."""
    full = make_std("delta", 1, D)
    bd = make_std("boundary", 1, D)
    maps = [[full.index(s) for s in level] for level in bd.simplices]
    return collapse(full.sset, maps, "S1")


# symmetric sequences ---------------------------------------------------------------------------

@dataclass
class SymSeq:
    """Levels ``M^0 .. M^L`` with ``act[n][sigma][k]`` the image tuple of ``sigma`` on dimension ``k``."""

    levels: list
    act: list
    name: str = ""

    @property
    def L(self) -> int:
        return len(self.levels) - 1

    @property
    def D(self) -> int:
        return self.levels[0].D

    def apply(self, n: int, sigma: tuple, k: int, cell):
        X = self.levels[n]
        x = self.act[n][tuple(sigma)][k][index_of(X, k)[cell]]
        return X.levels[k].labels[x]

    def sizes(self) -> list:
        return [X.sizes() for X in self.levels]

    def to_dict(self) -> dict:
        return {"L": self.L, "D": self.D, "name": self.name, "sizes": self.sizes(),
                "levels": [X.to_dict() for X in self.levels],
                "transpositions": [[[list(self.act[n][s][k]) for k in range(self.D + 1)]
                                    for s in adjacent(n)] for n in range(self.L + 1)],
                "valid_region": {"levels": self.L, "dimensions": self.D}}


def make_symseq(levels, act_cell, name: str = "") -> SymSeq:
    """Tabulate ``act_cell(n, sigma, k, cell) -> cell`` for every permutation."""
    act = []
    for n, X in enumerate(levels):
        table = {}
        for s in perms(n):
            per_dim = []
            for k in range(X.D + 1):
                idx = index_of(X, k)
                per_dim.append((0,) + tuple(idx[act_cell(n, s, k, c)] for c in cells(X, k)))
            table[s] = per_dim
        act.append(table)
    return SymSeq(list(levels), act, name)


def check_symseq(X: SymSeq) -> list:
    """Group laws of every action and compatibility with the simplicial structure."""
    bad = []
    for n in range(X.L + 1):
        Y = X.levels[n]
        for k in range(X.D + 1):
            ident = X.act[n][tuple(range(n))][k]
            if ident != tuple(range(len(ident))):
                bad.append(f"identity acts nontrivially at level {n}, dimension {k}")
        gens = adjacent(n)
        for s in gens:
            for k in range(X.D + 1):
                t = X.act[n][s][k]
                if any(t[t[x]] != x for x in range(len(t))):
                    bad.append(f"transposition {s} is not an involution at level {n}")
        for s, t in itertools.product(perms(n), repeat=2):
            st = pmul(s, t)
            for k in range(X.D + 1):
                a, b, c = X.act[n][s][k], X.act[n][t][k], X.act[n][st][k]
                if any(a[b[x]] != c[x] for x in range(len(c))):
                    bad.append(f"composite {s} {t} at level {n}")
                    break
        for s in gens:
            for l in monotone_maps(X.D):
                a_hi, a_lo = X.act[n][s][l.target], X.act[n][s][l.source]
                st = Y.star[l]
                if any(st[a_hi[x]] != a_lo[st[x]] for x in range(len(st))):
                    bad.append(f"transposition {s} is not simplicial at level {n}")
                    break
    return bad


def from_pss(levels, name="") -> SymSeq:
    """Trivial actions on given pointed simplicial sets."""
    return make_symseq(levels, lambda n, s, k, c: c, name)


def unit_seq(L: int, D: int) -> SymSeq:
    """The unit: ``S^0`` in level 0 and zero above."""
    return from_pss([point_pss(D)] + [zero_pss(D) for _ in range(L)], "1")


def concentrated(n: int, X: TruncSimpASet, L: int, act_cell=None, name="") -> SymSeq:
    """``X`` placed in level ``n`` (with an optional action), zero elsewhere."""
    D = X.D
    levels = [X if j == n else zero_pss(D) for j in range(L + 1)]
    act_cell = act_cell or (lambda s, k, c: c)
    return make_symseq(levels, lambda j, s, k, c: act_cell(s, k, c), name or f"{X.name}[{n}]")


def free_orbit(n: int, X: TruncSimpASet, L: int) -> SymSeq:
    """``Sigma_n x X`` in level ``n``: cells ``(sigma, x)`` with ``tau (sigma, x) = (tau sigma, x)``."""
    def pull(l, c):
        y = pull_cell(X, l, c[1])
        return None if y is None else (c[0], y)

    Y = pss(X.D, lambda k: [(s, x) for s in perms(n) for x in cells(X, k)], pull, f"S{n}x{X.name}")
    return concentrated(n, Y, L, lambda s, k, c: (pmul(s, c[0]), c[1]), f"({Y.name})[{n}]")


@dataclass
class SeqMap:
    source: SymSeq
    target: SymSeq
    maps: list          # maps[n][k] image tuple

    def failures(self) -> list:
        bad = []
        X, Y = self.source, self.target
        for n in range(X.L + 1):
            f = self.maps[n]
            for l in monotone_maps(X.D):
                sx, sy = X.levels[n].star[l], Y.levels[n].star[l]
                if any(f[l.source][sx[x]] != sy[f[l.target][x]] for x in range(len(sx))):
                    bad.append(f"level {n} does not commute with {l.values}")
                    break
            for s in adjacent(n):
                for k in range(X.D + 1):
                    ax, ay = X.act[n][s][k], Y.act[n][s][k]
                    if any(f[k][ax[x]] != ay[f[k][x]] for x in range(len(ax))):
                        bad.append(f"level {n} is not equivariant for {s}")
                        break
        return bad

    def is_iso(self) -> bool:
        return not self.failures() and all(
            len(set(self.maps[n][k])) == len(self.maps[n][k]) == self.target.levels[n].levels[k].size
            for n in range(self.source.L + 1) for k in range(self.source.D + 1))


def cell_map(X: SymSeq, Y: SymSeq, fn) -> SeqMap:
    """A map given on cells by ``fn(n, k, cell) -> cell | None``."""
    maps = []
    for n in range(X.L + 1):
        per = []
        for k in range(X.D + 1):
            idx = index_of(Y.levels[n], k)
            per.append((0,) + tuple(0 if (y := fn(n, k, c)) is None else idx[y] for c in cells(X.levels[n], k)))
        maps.append(per)
    return SeqMap(X, Y, maps)


def _check_compatible(M: SymSeq, N: SymSeq):
    if M.D != N.D:
        raise SymSpecError("sequences need one simplicial truncation")


# tensor products ------------------------------------------------------------------------------

def seq_tensor_decomp(M: SymSeq, N: SymSeq, L: int | None = None) -> SymSeq:
    """``(M (x) N)^n``: a summand ``M^{|U|} ^ N^{n-|U|}`` for every subset ``U`` of ``n``."""
    _check_compatible(M, N)
    L = min(M.L, N.L) if L is None else L
    D = M.D
    levels = []
    for n in range(L + 1):
        def cells_at(k, n=n):
            return [(U, x, y) for U in subsets(n) for x in cells(M.levels[len(U)], k)
                    for y in cells(N.levels[n - len(U)], k)]

        def pull(l, c, n=n):
            U, x, y = c
            a, b = pull_cell(M.levels[len(U)], l, x), pull_cell(N.levels[n - len(U)], l, y)
            return None if a is None or b is None else (U, a, b)

        levels.append(pss(D, cells_at, pull, f"({M.name}(x){N.name})^{n}"))

    def act(n, s, k, c):
        U, x, y = c
        V = complement(U, n)
        return (tuple(sorted(s[u] for u in U)), M.apply(len(U), induced_on(s, U), k, x),
                N.apply(len(V), induced_on(s, V), k, y))

    return make_symseq(levels, act, f"{M.name}(x){N.name}")


def _canon(M: SymSeq, N: SymSeq, p: int, sigma: tuple, k: int, x, y):
    """Least representative of ``[sigma, x, y]`` under ``(sigma (a x b), x, y) ~ (sigma, a x, b y)``."""
    n = len(sigma)
    q = n - p
    best = None
    for a in perms(p):
        for b in perms(q):
            s2 = pmul(sigma, block(a, b))
            x2 = M.apply(p, pinv(a), k, x)
            y2 = N.apply(q, pinv(b), k, y)
            key = (s2, index_of(M.levels[p], k)[x2], index_of(N.levels[q], k)[y2])
            if best is None or key < best[0]:
                best = (key, (p, s2, x2, y2))
    return best[1]


def seq_tensor_induced(M: SymSeq, N: SymSeq, L: int | None = None, only=None) -> SymSeq:
    """``(M (x) N)^n = coprod_{p+q=n} Sigma_n x_{Sigma_p x Sigma_q} (M^p ^ N^q)``.

    ``only(n, p)`` can restrict the summands (used for the latching object).
    """
    _check_compatible(M, N)
    L = min(M.L, N.L) if L is None else L
    D = M.D
    keep = only or (lambda n, p: True)
    levels = []
    for n in range(L + 1):
        def cells_at(k, n=n):
            out = set()
            for p in range(n + 1):
                if not keep(n, p):
                    continue
                for s in perms(n):
                    for x in cells(M.levels[p], k):
                        for y in cells(N.levels[n - p], k):
                            out.add(_canon(M, N, p, s, k, x, y))
            return sorted(out, key=lambda c: (c[0], c[1], index_of(M.levels[c[0]], k)[c[2]],
                                              index_of(N.levels[n - c[0]], k)[c[3]]))

        def pull(l, c, n=n):
            p, s, x, y = c
            a, b = pull_cell(M.levels[p], l, x), pull_cell(N.levels[n - p], l, y)
            return None if a is None or b is None else _canon(M, N, p, s, l.source, a, b)

        levels.append(pss(D, cells_at, pull, f"({M.name}(x)'{N.name})^{n}"))

    def act(n, t, k, c):
        p, s, x, y = c
        return _canon(M, N, p, pmul(t, s), k, x, y)

    return make_symseq(levels, act, f"{M.name}(x)'{N.name}")


def decomp_to_induced(M: SymSeq, N: SymSeq, T: SymSeq, I: SymSeq) -> SeqMap:
    """``(U, x, y) -> [shuffle(U), x, y]``; an isomorphism when both models agree."""
    def fn(n, k, c):
        U, x, y = c
        return _canon(M, N, len(U), shuffle_of(U, n), k, x, y)
    return cell_map(T, I, fn)


def twist(M: SymSeq, N: SymSeq, MN: SymSeq, NM: SymSeq) -> SeqMap:
    """``M (x) N -> N (x) M`` in the decomposition model: swap the factors and the subsets."""
    return cell_map(MN, NM, lambda n, k, c: (complement(c[0], n), c[2], c[1]))


def shuffle_perm(p: int, q: int) -> tuple:
    """``omega_{p,q}``: the first ``q`` positions go after the next ``p``."""
    return tuple(p + j for j in range(q)) + tuple(range(p))


def twist_induced(M: SymSeq, N: SymSeq, MN: SymSeq, NM: SymSeq) -> SeqMap:
    """The twist of the induced model: ``[s, x, y] -> [s o omega_{p,q}, y, x]``."""
    def fn(n, k, c):
        p, s, x, y = c
        return _canon(N, M, n - p, pmul(s, shuffle_perm(p, n - p)), k, y, x)
    return cell_map(MN, NM, fn)


def compose_maps(f: SeqMap, g: SeqMap) -> SeqMap:
    return SeqMap(f.source, g.target, [[tuple(g.maps[n][k][x] for x in f.maps[n][k])
                                        for k in range(len(f.maps[n]))] for n in range(len(f.maps))])


def identity_seq_map(X: SymSeq) -> SeqMap:
    return SeqMap(X, X, [[tuple(range(Y.size)) for Y in X.levels[n].levels] for n in range(X.L + 1)])


def is_identity(f: SeqMap) -> bool:
    return all(f.maps[n][k] == tuple(range(len(f.maps[n][k]))) for n in range(len(f.maps))
               for k in range(len(f.maps[n])))


# the sphere -------------------------------------------------------------------------------------

def sphere_levels(L: int, D: int) -> list:
    S1 = circle(D)

    def level(n):
        def cells_at(k):
            return list(itertools.product(cells(S1, k), repeat=n))

        def pull(l, c):
            out = tuple(pull_cell(S1, l, x) for x in c)
            return None if any(x is None for x in out) else out

        return pss(D, cells_at, pull, f"S{n}")

    return [level(n) for n in range(L + 1)]


def _permute_factors(s: tuple, c: tuple) -> tuple:
    out = [None] * len(c)
    for i, x in enumerate(c):
        out[s[i]] = x
    return tuple(out)


def place(U: tuple, V: tuple, x: tuple, y: tuple) -> tuple:
    """Interleave smash factors: ``x`` on the positions ``U``, ``y`` on ``V`` (together ``range(n)``)."""
    out = [None] * (len(U) + len(V))
    for u, a in zip(U, x):
        out[u] = a
    for v, b in zip(V, y):
        out[v] = b
    return tuple(out)


@dataclass
class SMod:
    """A symmetric sequence with an action ``m(p, q, k, s, x)`` of the sphere.

    ``m`` returns a cell of level ``p + q`` or ``None`` for the basepoint;
    the sphere cell ``s`` occupies the first ``p`` positions.
    """

    seq: SymSeq
    mult: object
    sphere: SymSeq
    name: str = ""

    @property
    def L(self):
        return self.seq.L

    @property
    def D(self):
        return self.seq.D


def sphere(L: int = 3, D: int = 4) -> SMod:
    """``S = (S^0, S^1, S^1 ^ S^1, ...)`` with factor-permuting actions and concatenation."""
    levels = sphere_levels(L, D)
    S = make_symseq(levels, lambda n, s, k, c: _permute_factors(s, c), "S")
    return SMod(S, lambda p, q, k, s, x: tuple(s) + tuple(x), S, "S")


def sphere_multiplication(S: SMod) -> tuple:
    """``m: S (x) S -> S`` on the decomposition model, with the tensor it starts from."""
    T = seq_tensor_decomp(S.seq, S.seq)
    m = cell_map(T, S.seq, lambda n, k, c: place(c[0], complement(c[0], n), c[1], c[2]))
    return T, m


def sphere_unit(S: SMod) -> SeqMap:
    one = unit_seq(S.L, S.D)
    return cell_map(one, S.seq, lambda n, k, c: ())


def check_smod(M: SMod) -> list:
    """Unit, associativity, equivariance and simplicial compatibility of the action."""
    bad = []
    S, X = M.sphere, M.seq
    for q in range(X.L + 1):
        for k in range(X.D + 1):
            for x in cells(X.levels[q], k):
                if M.mult(0, q, k, (), x) != x:
                    bad.append(f"unit fails on {x}")
    for p in range(1, X.L + 1):
        for q in range(X.L + 1 - p):
            for k in range(X.D + 1):
                for s in cells(S.levels[p], k):
                    for x in cells(X.levels[q], k):
                        z = M.mult(p, q, k, s, x)
                        for a in adjacent(p) + [tuple(range(p))]:
                            for b in adjacent(q) + [tuple(range(q))]:
                                lhs = M.mult(p, q, k, S.apply(p, a, k, s), X.apply(q, b, k, x))
                                rhs = None if z is None else X.apply(p + q, block(a, b), k, z)
                                if lhs != rhs:
                                    bad.append(f"action not equivariant at ({p},{q})")
                        for l in monotone_maps(X.D):
                            if l.target != k:
                                continue
                            s2, x2 = pull_cell(S.levels[p], l, s), pull_cell(X.levels[q], l, x)
                            lhs = None if s2 is None or x2 is None else M.mult(p, q, l.source, s2, x2)
                            rhs = None if z is None else pull_cell(X.levels[p + q], l, z)
                            if lhs != rhs:
                                bad.append(f"action not simplicial at ({p},{q})")
                        for p1 in range(1, p):
                            s1, s2 = s[:p1], s[p1:]
                            inner = M.mult(p - p1, q, k, s2, x)
                            lhs = None if inner is None else M.mult(p1, p - p1 + q, k, s1, inner)
                            if lhs != z:
                                bad.append(f"action not associative at ({p1},{p - p1},{q})")
    return sorted(set(bad))


def associativity_failures(S: SMod) -> list:
    """``m(m(x, y), z) = m(x, m(y, z))`` over every ordered split ``n = A + B + C``."""
    bad = []
    seq = S.seq
    for n in range(S.L + 1):
        for k in range(S.D + 1):
            for labels in itertools.product(range(3), repeat=n):
                A = tuple(i for i in range(n) if labels[i] == 0)
                B = tuple(i for i in range(n) if labels[i] == 1)
                C = tuple(i for i in range(n) if labels[i] == 2)
                AB, BC = tuple(sorted(A + B)), tuple(sorted(B + C))
                rank = lambda W, sub: tuple(W.index(w) for w in sub)
                for x in cells(seq.levels[len(A)], k):
                    for y in cells(seq.levels[len(B)], k):
                        for z in cells(seq.levels[len(C)], k):
                            xy = place(rank(AB, A), rank(AB, B), x, y)
                            yz = place(rank(BC, B), rank(BC, C), y, z)
                            if place(AB, C, xy, z) != place(A, BC, x, yz):
                                bad.append((A, B, C))
    return bad


# modules ----------------------------------------------------------------------------------------

def free_smod(X: SymSeq, S: SMod) -> SMod:
    """``S (x) X`` with the sphere acting on its own factor."""
    T = seq_tensor_decomp(S.seq, X, L=min(S.L, X.L))

    def mult(p, q, k, t, c):
        U, s, g = c
        return (tuple(range(p)) + tuple(u + p for u in U), tuple(t) + tuple(s), g)

    return SMod(T, mult, S.seq, f"S(x){X.name}")


def free_module(n: int, X: TruncSimpASet, S: SMod) -> SMod:
    """``F_n(X) = S (x) (Sigma_n x X)[n]``; level ``n + p`` is ``Sigma_{n+p} x_{Sigma_p} (S^p ^ X)``."""
    if n > S.L:
        raise RangeError(f"level {n} is above the truncation {S.L}")
    return free_smod(free_orbit(n, X, S.L), S)


def evaluate(M, n: int) -> TruncSimpASet:
    """``Ev^n``: the level-``n`` pointed simplicial set, forgetting the symmetric group."""
    seq = M.seq if isinstance(M, SMod) else M
    if n > seq.L:
        raise RangeError(f"level {n} is above the truncation {seq.L}")
    return seq.levels[n]


def smod_from_levels(levels, S: SMod, mult, act_cell, name="") -> SMod:
    return SMod(make_symseq(levels, act_cell, name), mult, S.seq, name)


def truncate(M: SMod, L: int) -> SMod:
    seq = SymSeq(M.seq.levels[:L + 1], M.seq.act[:L + 1], M.seq.name)
    return SMod(seq, M.mult, M.sphere, M.name)


def sphere_bar(S: SMod) -> SMod:
    """The sphere with its level 0 removed, a sub-module."""
    D = S.D
    levels = [zero_pss(D)] + S.seq.levels[1:]
    seq = SymSeq(levels, [{(): [(0,)] * (D + 1)}] + S.seq.act[1:], "S/S0")
    return SMod(seq, S.mult, S.seq, "S/S0")


# coequalizer: tensor over the sphere ---------------------------------------------------------------

class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if _order(rb) < _order(ra):
                ra, rb = rb, ra
            self.parent[rb] = ra


def _order(c):
    return (0,) if c is None else (1, repr(c))


def _reorder(first: tuple, second: tuple, W: tuple) -> tuple:
    """Ranks inside sorted ``W`` of the positions listed in ``first`` then ``second``."""
    return tuple(W.index(u) for u in first + second)


def right_action(M: SMod, p: int, q: int, k: int, x, s, U: tuple, W: tuple):
    """``x . s`` placed with ``x`` on ``U`` and ``s`` on ``W`` inside ``sorted(U + W)``.

    Computed as ``m(s, x)`` (sphere first) moved by the permutation that sends
    the sphere positions to ``W`` and the module positions to ``U``.
    """
    z = M.mult(q, p, k, s, x)
    if z is None:
        return None
    UW = tuple(sorted(U + W))
    return M.seq.apply(p + q, _reorder(W, U, UW), k, z)


def smod_tensor(M: SMod, N: SMod) -> SMod:
    """``M (x)_S N``: the sequence tensor modulo ``(x . s) (x) y = x (x) (s . y)``."""
    T = seq_tensor_decomp(M.seq, N.seq)
    S = M.sphere
    classes = []
    for n in range(T.L + 1):
        per_dim = []
        for k in range(T.D + 1):
            uf = _UnionFind([None, *cells(T.levels[n], k)])
            for labels in itertools.product(range(3), repeat=n):
                A = tuple(i for i in range(n) if labels[i] == 0)
                W = tuple(i for i in range(n) if labels[i] == 1)
                B = tuple(i for i in range(n) if labels[i] == 2)
                if not W:
                    continue
                for x in cells(M.seq.levels[len(A)], k):
                    for s in cells(S.levels[len(W)], k):
                        for y in cells(N.seq.levels[len(B)], k):
                            xs = right_action(M, len(A), len(W), k, x, s, A, W)
                            z = N.mult(len(W), len(B), k, s, y)
                            if z is not None:
                                z = N.seq.apply(len(W) + len(B), _reorder(W, B, tuple(sorted(W + B))), k, z)
                            left = None if xs is None else (tuple(sorted(A + W)), xs, y)
                            right = None if z is None else (A, x, z)
                            uf.union(left, right)
            per_dim.append(uf)
        classes.append(per_dim)
    return _quotient_smod(T, classes, M, f"{M.name}(x)S{N.name}")


def _quotient_smod(T: SymSeq, classes, M: SMod, name: str) -> SMod:
    """Pass to classes of a union-find per level and dimension; checks well-definedness."""
    D = T.D

    def rep(n, k, c):
        if c is None:
            return None
        r = classes[n][k].find(c)
        return r

    levels = []
    for n in range(T.L + 1):
        def cells_at(k, n=n):
            return [c for c in cells(T.levels[n], k) if rep(n, k, c) == c]

        def pull(l, c, n=n):
            return rep(n, l.source, pull_cell(T.levels[n], l, c))

        levels.append(pss(D, cells_at, pull, f"{name}^{n}"))
    for n in range(T.L + 1):
        for l in monotone_maps(D):
            for c in cells(T.levels[n], l.target):
                if rep(n, l.source, pull_cell(T.levels[n], l, c)) != \
                        rep(n, l.source, pull_cell(T.levels[n], l, rep(n, l.target, c))):
                    raise SymSpecError("the relation is not simplicial")
    seq = make_symseq(levels, lambda n, s, k, c: rep(n, k, T.apply(n, s, k, c)), name)

    def mult(p, q, k, s, c):
        U, x, y = c
        z = M.mult(p, len(U), k, s, x)
        if z is None:
            return None
        return rep(p + q, k, (tuple(range(p)) + tuple(u + p for u in U), z, y))

    return SMod(seq, mult, M.sphere, name)


# latching objects ----------------------------------------------------------------------------------

@dataclass
class Latching:
    """``L^n M`` by the two formulas, and the canonical map to ``M^n``."""

    n: int
    tensor_model: TruncSimpASet
    coproduct_model: TruncSimpASet
    comparison: list          # image tuples, tensor model -> coproduct model
    canonical: list           # image tuples, tensor model -> M^n

    @property
    def formulas_agree(self) -> bool:
        return all(len(set(f)) == len(f) == Y.size
                   for f, Y in zip(self.comparison, self.coproduct_model.levels))

    @property
    def map_is_iso(self) -> bool:
        return _bijective(self.canonical, self._target_sizes)

    @property
    def map_is_zero(self) -> bool:
        return all(set(f) <= {0} for f in self.canonical)

    _target_sizes: list = field(default_factory=list, repr=False)


def _bijective(maps, sizes) -> bool:
    return all(len(set(f)) == len(f) == size for f, size in zip(maps, sizes))


def canonical_latching_cell(M: SMod, n: int, k: int, c):
    """``(U, x, s) -> x . s`` placed with ``x`` on ``U``."""
    U, x, s = c
    V = complement(U, n)
    return right_action(M, len(U), n - len(U), k, x, s, U, V)


def latching(M: SMod, n: int) -> Latching:
    """``Ev^n(M (x) S/S0)`` in the decomposition model against the displayed coproduct.

    The tensor here is the tensor of symmetric sequences.  The coproduct
    model is ``coprod_{k<n} Sigma_n x_{Sigma_k x Sigma_{n-k}} (M^k ^ S^{n-k})``
    built from cosets.
    """
    if n > M.L:
        raise RangeError(f"level {n} is above the truncation {M.L}")
    Sb = sphere_bar(_sphere_module(M))
    T = seq_tensor_decomp(M.seq, Sb.seq, L=n)
    I = seq_tensor_induced(M.seq, Sb.seq, L=n, only=lambda j, p: p < j)
    comp = decomp_to_induced(M.seq, Sb.seq, T, I)
    X = T.levels[n]
    canon = []
    for k in range(M.D + 1):
        idx = index_of(M.seq.levels[n], k)
        canon.append((0,) + tuple(0 if (y := canonical_latching_cell(M, n, k, c)) is None else idx[y]
                                  for c in cells(X, k)))
    out = Latching(n, X, I.levels[n], comp.maps[n], canon)
    out._target_sizes = M.seq.levels[n].sizes()
    return out


def _sphere_module(M: SMod) -> SMod:
    return SMod(M.sphere, lambda p, q, k, s, x: tuple(s) + tuple(x), M.sphere, "S")


def module_latching(M: SMod, n: int) -> Latching:
    """``Ev^n(M (x)_S S/S0)``: the latching object of the module, with its map to ``M^n``."""
    if n > M.L:
        raise RangeError(f"level {n} is above the truncation {M.L}")
    Sb = sphere_bar(_sphere_module(M))
    Q = smod_tensor(truncate(M, n), truncate(Sb, n))
    X = Q.seq.levels[n]
    canon = []
    for k in range(M.D + 1):
        idx = index_of(M.seq.levels[n], k)
        canon.append((0,) + tuple(0 if (y := canonical_latching_cell(M, n, k, c)) is None else idx[y]
                                  for c in cells(X, k)))
    out = Latching(n, X, X, [tuple(range(Y.size)) for Y in X.levels], canon)
    out._target_sizes = M.seq.levels[n].sizes()
    return out


# shifts ------------------------------------------------------------------------------------------

def shift_right(M: SMod) -> SMod:
    """``(rM)^n = M^{n+1}``, the symmetric group fixing the last position."""
    L = M.L - 1
    if L < 0:
        raise RangeError("the shift needs at least two levels")
    seq = make_symseq(M.seq.levels[1:], lambda n, s, k, c: M.seq.apply(n + 1, s + (n,), k, c), f"r{M.name}")
    return SMod(seq, lambda p, q, k, s, x: M.mult(p, q + 1, k, s, x), M.sphere, f"r{M.name}")


def shift_left(M: SMod, L: int | None = None) -> SMod:
    """``(lM)^n = Sigma_n x_{Sigma_{n-1}} M^{n-1}``: cells ``(i, x)`` with ``x`` on ``n - {i}``."""
    L = M.L + 1 if L is None else L
    if L > M.sphere.L:
        raise RangeError("the shift leaves the truncation of the sphere")
    D = M.D
    levels = [zero_pss(D)]
    for n in range(1, L + 1):
        def cells_at(k, n=n):
            return [(i, x) for i in range(n) for x in cells(M.seq.levels[n - 1], k)]

        def pull(l, c, n=n):
            y = pull_cell(M.seq.levels[n - 1], l, c[1])
            return None if y is None else (c[0], y)

        levels.append(pss(D, cells_at, pull, f"l{M.name}^{n}"))

    def act(n, s, k, c):
        i, x = c
        rest = complement((i,), n)
        return (s[i], M.seq.apply(n - 1, induced_on(s, rest), k, x))

    def mult(p, q, k, s, c):
        i, x = c
        z = M.mult(p, q - 1, k, s, x)
        return None if z is None else (p + i, z)

    return SMod(make_symseq(levels, act, f"l{M.name}"), mult, M.sphere, f"l{M.name}")


# maps between modules and hom sets ------------------------------------------------------------------

def _orbits(act_tables: dict, size: int) -> list:
    seen, out = set(), []
    for x in range(1, size):
        if x in seen:
            continue
        orbit = {t[x] for t in act_tables}
        seen |= orbit
        out.append(x)
    return out


def equivariant_simp_maps(X: TruncSimpASet, Y: TruncSimpASet, actX: dict, actY: dict,
                          fixed: dict | None = None, limit: int = 2_000_000) -> list:
    """Pointed simplicial maps ``X -> Y`` commuting with a group given by action tables.

    ``actX[g][k]`` is the image tuple of ``g`` in dimension ``k`` (the whole
    group, not just generators).  ``fixed[(k, x)]`` pins images.  Dimensions
    are filled in ascending order; degenerate cells are forced, orbit
    representatives range over targets matching every face and fixed by the
    stabilizer.
    """
    fixed = fixed or {}
    D = X.D
    group = list(actX)
    found = []
    count = [0]
    down = {k: [l for l in monotone_maps(D) if l.target == k and l.source < k] for k in range(D + 1)}
    up = {k: [l for l in monotone_maps(D) if l.source == k and l.target < k] for k in range(D + 1)}
    ends = {k: [l for l in monotone_maps(D) if l.source == k == l.target] for k in range(D + 1)}

    def level_maps(k, done):
        SX, SY = X.levels[k].size, Y.levels[k].size
        forced = {}
        for (kk, x), y in fixed.items():
            if kk == k:
                forced[x] = y
        for l in up[k]:
            for y in range(1, X.levels[l.target].size):
                x = X.star[l][y]
                val = Y.star[l][done[l.target][y]]
                if forced.setdefault(x, val) != val:
                    return
        tabsX = [actX[g][k] for g in group]
        tabsY = [actY[g][k] for g in group]
        reps = _orbits(tabsX, SX)
        options = []
        for x in reps:
            val = None
            for tX, tY in zip(tabsX, tabsY):
                gx = tX[x]
                if gx in forced:
                    # f(x) = g^-1 f(g x)
                    cand = _preimage(tY, forced[gx])
                    if val is None:
                        val = cand
                    elif val != cand:
                        return
            if val is not None:
                options.append([val])
                continue
            stab = [(tX, tY) for tX, tY in zip(tabsX, tabsY) if tX[x] == x]
            opts = []
            for z in range(SY):
                if any(Y.star[l][z] != done[l.source][X.star[l][x]] for l in down[k]):
                    continue
                if any(tY[z] != z for _, tY in stab):
                    continue
                opts.append(z)
            options.append(opts)
        for assign in itertools.product(*options):
            img = [0] * SX
            ok = True
            seen = [False] * SX
            seen[0] = True
            for x, z in zip(reps, assign):
                for tX, tY in zip(tabsX, tabsY):
                    gx, gz = tX[x], tY[z]
                    if seen[gx] and img[gx] != gz:
                        ok = False
                        break
                    img[gx], seen[gx] = gz, True
                if not ok:
                    break
            if not ok or any(img[x] != v for x, v in forced.items()):
                continue
            if any(Y.star[l][img[x]] != done[l.source][X.star[l][x]] for l in down[k] for x in range(SX)):
                continue
            if any(Y.star[l][img[x]] != img[X.star[l][x]] for l in ends[k] for x in range(SX)):
                continue
            yield tuple(img)

    def rec(k, done):
        if k > D:
            count[0] += 1
            if count[0] > limit:
                raise SymSpecError(f"more than {limit} maps")
            found.append(tuple(done))
            return
        for img in level_maps(k, done):
            rec(k + 1, done + [img])

    rec(0, [])
    return found


def _preimage(table, value):
    """``g^-1 v`` from the table of ``g``: the ``w`` with ``g w = v``."""
    return table.index(value)


def level_maps(X: SymSeq, Y: SymSeq, n: int, fixed=None) -> list:
    return equivariant_simp_maps(X.levels[n], Y.levels[n], X.act[n], Y.act[n], fixed)


def seq_maps_count(X: SymSeq, Y: SymSeq) -> int:
    """``|Sigma(F)(X, Y)|``: the product over levels of equivariant simplicial maps."""
    total = 1
    for n in range(min(X.L, Y.L) + 1):
        total *= len(level_maps(X, Y, n))
    return total


def smod_maps(X: SMod, Y: SMod, L: int | None = None) -> list:
    """All module maps ``X -> Y`` up to level ``L``, as lists ``maps[n][k]``."""
    L = min(X.L, Y.L) if L is None else L
    S = X.sphere
    found = []

    def rec(n, done):
        if n > L:
            found.append(list(done))
            return
        fixed = {}
        ok = True
        for q in range(n):
            p = n - q
            for k in range(X.D + 1):
                idx_x, idx_y = index_of(X.seq.levels[n], k), index_of(Y.seq.levels[n], k)
                labels_q = X.seq.levels[q].levels[k].labels
                labels_yq = Y.seq.levels[q].levels[k].labels
                fq = done[q][k]
                for s in cells(S.levels[p], k):
                    for xi in range(1, X.seq.levels[q].levels[k].size):
                        z = X.mult(p, q, k, s, labels_q[xi])
                        fy = fq[xi]
                        w = None if fy == 0 else Y.mult(p, q, k, s, labels_yq[fy])
                        target = 0 if w is None else idx_y[w]
                        if z is None:
                            if target != 0:
                                ok = False
                            continue
                        key = (k, idx_x[z])
                        if fixed.setdefault(key, target) != target:
                            ok = False
        if not ok:
            return
        for m in level_maps(X.seq, Y.seq, n, fixed):
            rec(n + 1, done + [m])

    rec(0, [])
    return found


def seq_hom(N: SymSeq, K: SymSeq, n: int, k_bound: int | None = None, dims: int = 0) -> tuple:
    """``Hom(N, K)^n = prod_{k <= k_bound} Hom_{Sigma_k}(N^k, K^{k+n})`` in dimensions ``<= dims``.

    Dimension ``j`` of a factor consists of equivariant maps
    ``N^k ^ Delta(j)_+ -> K^{k+n}``, with ``Sigma_k`` acting on the last
    ``k`` positions of ``K^{k+n}``; it is trusted for ``2 j <= D``.
    Returns the pointed simplicial set and its ``Sigma_n`` action tables.
    """
    k_bound = K.L - n if k_bound is None else k_bound
    if k_bound > K.L - n or n > K.L:
        raise RangeError(f"k_bound {k_bound} exceeds {K.L - n} at level {n}")
    if 2 * dims > N.D:
        raise RangeError(f"dimension {dims} is outside the trusted range 2j <= {N.D}")
    D = N.D
    factors = []          # per dimension j: per k the list of maps
    for j in range(dims + 1):
        Dj = make_std("delta", j, D).sset
        per_k = []
        for k in range(k_bound + 1):
            src = smash(N.levels[k], Dj)
            actX = {s: [(0,) + tuple(index_of(src, d)[(N.apply(k, s, d, a), b)] for a, b in cells(src, d))
                        for d in range(D + 1)] for s in perms(k)}
            tgt = K.levels[k + n]
            actY = {s: K.act[k + n][block(tuple(range(n)), s)] for s in perms(k)}
            per_k.append((src, equivariant_simp_maps(src, tgt, actX, actY)))
        factors.append(per_k)

    def zero_of(j):
        return tuple(tuple((0,) * Y.size for Y in src.levels) for src, _ in factors[j])

    def cells_at(j):
        prods = itertools.product(*[maps for _, maps in factors[j]])
        z = zero_of(j)
        return [c for c in prods if c != z]

    def pull(l, c):
        src_hi = factors[l.target]
        out = []
        for k, f in enumerate(c):
            src_lo = factors[l.source][k][0]
            src = src_hi[k][0]
            # precompose with 1 ^ Delta(l)
            g = []
            for d in range(D + 1):
                row = [0]
                for a, b in cells(src_lo, d):
                    row.append(f[d][index_of(src, d)[(a, b.then(l))]])
                g.append(tuple(row))
            out.append(tuple(g))
        out = tuple(out)
        return None if out == zero_of(l.source) else out

    X = pss(dims, cells_at, pull, f"Hom({N.name},{K.name})^{n}")

    def act_cell(s, j, c):
        out = []
        for k, f in enumerate(c):
            t = K.act[k + n][block(s, tuple(range(k)))]
            out.append(tuple(tuple(t[d][y] for y in f[d]) for d in range(D + 1)))
        return tuple(out)

    acts = {s: [(0,) + tuple(index_of(X, j)[act_cell(s, j, c)] for c in cells(X, j)) for j in range(dims + 1)]
            for s in perms(n)}
    return X, acts


def hom_of_unit_check(N: SymSeq, n: int, dims: int = 0) -> bool:
    """``Hom(1, N)^n`` has the cells of ``N^n``, the symmetric group acting alike."""
    one = unit_seq(N.L, N.D)
    X, _ = seq_hom(one, N, n, dims=dims)
    return all(X.levels[j].size == N.levels[n].levels[j].size for j in range(dims + 1))


def truncate_dims(X: SymSeq, D: int) -> SymSeq:
    """Keep dimensions ``<= D`` of every level."""
    levels = []
    for Y in X.levels:
        star = {l: v for l, v in Y.star.items() if l.source <= D and l.target <= D}
        Z = TruncSimpASet(Y.levels[:D + 1], star, Y.provisional, Y.name)
        levels.append(Z)
    act = [{s: t[:D + 1] for s, t in table.items()} for table in X.act]
    return SymSeq(levels, act, X.name)


def tensor_hom_counts(M: SymSeq, N: SymSeq, K: SymSeq) -> tuple:
    """``|Sigma(M (x) N, K)|`` and ``|Sigma(M, Hom(N, K))|`` for ``M`` constant in dimension.

    For a sequence whose simplicial sets are constant, maps out of it only
    see dimension ``0``, so the hom object is needed in dimension ``0`` only.
    """
    lhs = seq_maps_count(seq_tensor_decomp(M, N), K)
    M0 = truncate_dims(M, 0)
    rhs = 1
    for p in range(M.L + 1):
        H, acts = seq_hom(N, K, p, K.L - p, dims=0)
        rhs *= len(equivariant_simp_maps(M0.levels[p], H, M0.act[p], acts))
    return lhs, rhs


def free_adjunction_counts(n: int, X: TruncSimpASet, N: SMod) -> tuple:
    """``|S-mod(F_n X, N)|`` against ``|sSet_*(X, Ev^n N)|``."""
    F = free_module(n, X, _sphere_module(N))
    lhs = len(smod_maps(F, N))
    trivial = {(): [tuple(range(Y.size)) for Y in X.levels]}
    target = evaluate(N, n)
    rhs = len(equivariant_simp_maps(X, target, trivial, {(): [tuple(range(Y.size)) for Y in target.levels]}))
    return lhs, rhs


def shift_adjunction_counts(M: SMod, N: SMod) -> tuple:
    """``|S-mod(lM, N)|`` against ``|S-mod(M, rN)|`` with ``M`` one level shorter than ``N``."""
    lhs = len(smod_maps(shift_left(M, N.L), N))
    rhs = len(smod_maps(M, shift_right(N)))
    return lhs, rhs


# loop adjoint -------------------------------------------------------------------------------------

def omega_adjoint(M: SMod, n: int, dims: int = 0) -> list:
    """``(m^{1,n})^#: M^n -> Hom(S^1, M^{n+1})`` in dimensions ``<= dims``.

    A ``j``-simplex ``x`` goes to the map ``S^1 ^ Delta(j)_+ -> M^{n+1}``,
    ``(s, t) -> m(s, t^* x)``.  Returned per dimension as a list of such maps,
    each a tuple of image tuples per dimension.
    """
    if n + 1 > M.L:
        raise RangeError("the loop adjoint needs level n + 1")
    if 2 * dims > M.D:
        raise RangeError(f"dimension {dims} is outside the trusted range")
    S1 = M.sphere.levels[1]
    X, Y = M.seq.levels[n], M.seq.levels[n + 1]
    out = []
    for j in range(dims + 1):
        src = smash(S1, make_std("delta", j, M.D).sset)
        per = []
        for x in (None, *cells(X, j)):
            maps = []
            for d in range(M.D + 1):
                row = [0]
                for s, t in cells(src, d):
                    if x is None:
                        row.append(0)
                        continue
                    tx = pull_cell(X, t, x)
                    z = None if tx is None else M.mult(1, n, d, s, tx)
                    row.append(0 if z is None else index_of(Y, d)[z])
                maps.append(tuple(row))
            per.append(tuple(maps))
        out.append(per)
    return out


# random instances ---------------------------------------------------------------------------------

def _small_pss(kind: str, D: int) -> TruncSimpASet:
    if kind == "point":
        return point_pss(D)
    if kind == "circle":
        return circle(D)
    if kind == "edge":
        return make_std("delta", 1, D).sset
    if kind == "pair":
        return make_std("boundary", 1, D).sset
    raise SymSpecError(kind)


def wedge(parts, D: int, name="") -> TruncSimpASet:
    def pull(l, c):
        y = pull_cell(parts[c[0]], l, c[1])
        return None if y is None else (c[0], y)

    return pss(D, lambda k: [(i, c) for i, P in enumerate(parts) for c in cells(P, k)], pull, name)


def random_symseq(rng: random.Random, L: int = 3, D: int = 2, max_pieces: int = 2) -> SymSeq:
    """A wedge, level by level, of free orbits ``Sigma_n x K`` and trivial ``K``.

    ``K`` is drawn from ``S^0``, ``S^1``, ``Delta(1)_+`` and ``dDelta(1)_+``.
    """
    levels, kinds = [], []
    for n in range(L + 1):
        pieces = []
        for _ in range(rng.randint(0, max_pieces)):
            free = n > 1 and rng.random() < 0.5
            pieces.append((free, rng.choice(["point", "circle", "edge", "pair"])))
        kinds.append(pieces)
        parts = []
        for free, kind in pieces:
            K = _small_pss(kind, D)
            if free:
                def pull(l, c, K=K):
                    y = pull_cell(K, l, c[1])
                    return None if y is None else (c[0], y)
                K = pss(D, lambda k, K=K, n=n: [(s, x) for s in perms(n) for x in cells(K, k)], pull)
            parts.append(K)
        levels.append(wedge(parts, D, f"R{n}"))

    def act(n, s, k, c):
        i, x = c
        free, _ = kinds[n][i]
        return (i, (pmul(s, x[0]), x[1])) if free else c

    return make_symseq(levels, act, "R")
