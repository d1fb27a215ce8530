"""Truncated simplicial A-sets.

A truncated simplicial A-set has levels ``M_0 .. M_D`` and, for every
monotone map ``l: [m] -> [n]`` with ``m, n <= D``, an A-set map
``l^*: M_n -> M_m``.  Everything is stored explicitly: ``star[l]`` is the
image tuple of ``l^*``.

Standard complexes are pointed simplicial sets, that is simplicial A-sets
over ``F``; :func:`phi_star` moves them to any other ring levelwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .aset import (ASet, ASetError, ASetMap, LinearASet, PointedSetASet, _generation_plan, _preserves,
                   coproduct, free_aset, generating_set, induced_map, pushout, tensor)
from .fincat import MonotoneMap, iter_monotone
from .genring import GenRing, MonoidRing, RigRing, make_F


class RangeError(ValueError):
    pass


_F = make_F()


def pointed_ring() -> MonoidRing:
    """The copy of ``F`` over which standard complexes are built."""
    return _F


def _is_F(A: GenRing) -> bool:
    return isinstance(A, MonoidRing) and A.monoid.size == 1


@lru_cache(maxsize=None)
def monotone_maps(D: int) -> tuple:
    """Every monotone map ``[m] -> [n]`` with ``m, n <= D``."""
    return tuple(l for m in range(D + 1) for n in range(D + 1) for l in iter_monotone(m, n))


@dataclass
class TruncSimpASet:
    levels: list
    star: dict
    provisional: bool = False
    name: str = ""

    @property
    def D(self) -> int:
        return len(self.levels) - 1

    @property
    def ring(self) -> GenRing:
        return self.levels[0].ring

    def pull(self, l: MonotoneMap, x: int) -> int:
        return self.star[l][x]

    def sizes(self) -> list:
        return [M.size for M in self.levels]

    def to_dict(self) -> dict:
        faces, degens = {}, {}
        for l, img in self.star.items():
            if l.source + 1 == l.target and l.is_injective():
                i = next(j for j in range(l.target + 1) if j not in l.values)
                faces[f"d{i}:{l.target}"] = list(img)
            elif l.source == l.target + 1 and l.is_surjective():
                i = next(j for j in range(l.target + 1) if l.values.count(j) == 2)
                degens[f"s{i}:{l.target}"] = list(img)
        return {"ring": self.ring.name, "D": self.D, "sizes": self.sizes(),
                "labels": [[str(x) for x in M.labels] for M in self.levels],
                "faces": faces, "degeneracies": degens,
                "actions": [{"arity1": M.table(1).tolist()} for M in self.levels],
                "provisional": self.provisional}


def build(levels, pull, name="", provisional=False) -> TruncSimpASet:
    """Assemble from levels and ``pull(l, x)`` giving ``l^*(x)``."""
    D = len(levels) - 1
    star = {l: tuple(int(pull(l, x)) for x in range(levels[l.target].size)) for l in monotone_maps(D)}
    return TruncSimpASet(list(levels), star, provisional, name)


def constant(M: ASet, D: int = 4) -> TruncSimpASet:
    return build([M] * (D + 1), lambda l, x: x, name=f"const({M.ring.name})")


def check_simplicial(X: TruncSimpASet, bound: int = 1) -> list:
    """Failures of the simplicial identities and of equivariance, exhaustively up to ``D``."""
    bad = []
    for l in monotone_maps(X.D):
        img = np.asarray(X.star[l], dtype=np.int64)
        if l.source == l.target and l.values == tuple(range(l.source + 1)):
            if not np.array_equal(img, np.arange(len(img))):
                bad.append(f"identity of [{l.source}] acts nontrivially")
        if not _preserves(X.levels[l.target], X.levels[l.source], img, bound):
            bad.append(f"{l.values} is not an A-set map")
    for l in monotone_maps(X.D):
        for k in monotone_maps(X.D):
            if l.target != k.source:
                continue
            lhs = X.star[l.then(k)]
            first, second = X.star[k], X.star[l]
            if any(lhs[x] != second[first[x]] for x in range(len(first))):
                bad.append(f"composite {l.values} then {k.values}")
    return bad


@dataclass
class SimpMap:
    source: TruncSimpASet
    target: TruncSimpASet
    maps: list          # image tuples per level

    def level(self, n: int) -> ASetMap:
        return ASetMap(self.source.levels[n], self.target.levels[n], tuple(self.maps[n]))

    def failures(self, bound: int = 1) -> list:
        bad = []
        X, Y = self.source, self.target
        for n in range(X.D + 1):
            if not _preserves(X.levels[n], Y.levels[n], np.asarray(self.maps[n], dtype=np.int64), bound):
                bad.append(f"level {n} is not an A-set map")
        for l in monotone_maps(X.D):
            fx, fy = self.maps[l.target], self.maps[l.source]
            sx, sy = X.star[l], Y.star[l]
            if any(fy[sx[x]] != sy[fx[x]] for x in range(len(sx))):
                bad.append(f"does not commute with {l.values}")
        return bad

    def is_valid(self, bound: int = 1) -> bool:
        return not self.failures(bound)

    def then(self, g: "SimpMap") -> "SimpMap":
        return SimpMap(self.source, g.target, [tuple(g.maps[n][x] for x in f) for n, f in enumerate(self.maps)])


def identity_map(X: TruncSimpASet) -> SimpMap:
    return SimpMap(X, X, [tuple(range(M.size)) for M in X.levels])


def zero_object(A: GenRing, D: int) -> TruncSimpASet:
    return build([_point(A)] * (D + 1), lambda l, x: 0, name="0")


def zero_map(X: TruncSimpASet) -> SimpMap:
    Z = zero_object(X.ring, X.D)
    return SimpMap(Z, X, [(0,)] * (X.D + 1))


def _point(A: GenRing) -> ASet:
    return free_object(A, 0).aset


# standard complexes --------------------------------------------------------------------

def eilenberg_zilber(s: MonotoneMap):
    """Split ``s`` as a surjection followed by an injection: ``(nondegenerate face, degeneracy)``."""
    image = sorted(set(s.values))
    surj = MonotoneMap(s.source, len(image) - 1, tuple(image.index(v) for v in s.values))
    inj = MonotoneMap(len(image) - 1, s.target, tuple(image))
    return inj, surj


@dataclass
class StdComplex:
    """``Delta(n)_+``, its boundary or a horn, truncated at ``D``.

    ``simplices[m]`` lists the monotone maps ``[m] -> [n]`` that belong to the
    complex; element ``i + 1`` of level ``m`` is ``simplices[m][i]`` and ``0``
    is the basepoint.  Each simplex is a nondegenerate one (``nondegenerate``)
    with a degeneracy tag, recovered by :func:`eilenberg_zilber`.
    """

    kind: str
    n: int
    k: int | None
    D: int
    simplices: list
    sset: TruncSimpASet = field(repr=False)

    @property
    def nondegenerate(self) -> list:
        return [[s for s in level if s.is_injective()] for level in self.simplices]

    def counts(self) -> list:
        return [len(level) for level in self.nondegenerate]

    def index(self, s: MonotoneMap) -> int:
        return self.simplices[s.source].index(s) + 1

    def tag(self, s: MonotoneMap):
        return eilenberg_zilber(s)


def _member(kind: str, n: int, k):
    if kind == "delta":
        return lambda s: True
    if kind == "boundary":
        return lambda s: not s.is_surjective()
    # a horn keeps the faces opposite vertices other than k
    return lambda s: any(i not in s.values for i in range(n + 1) if i != k)


def make_std(kind: str, n: int, D: int = 4, k: int | None = None) -> StdComplex:
    if n < 0 or D < 0:
        raise RangeError("dimensions must be nonnegative")
    if kind == "horn" and (k is None or not 0 <= k <= n):
        raise RangeError(f"a horn of Delta({n}) needs 0 <= k <= {n}")
    if kind not in ("delta", "boundary", "horn"):
        raise RangeError(f"unknown standard complex {kind!r}")
    keep = _member(kind, n, k)
    simplices = [[s for s in iter_monotone(m, n) if keep(s)] for m in range(D + 1)]
    index = [{s: i + 1 for i, s in enumerate(level)} for level in simplices]
    levels = [PointedSetASet(_F, len(level), ("*", *level)) for level in simplices]

    def pull(l, x):
        return 0 if x == 0 else index[l.source][l.then(simplices[l.target][x - 1])]

    name = {"delta": f"Delta({n})+", "boundary": f"dDelta({n})+", "horn": f"Lambda^{k}_{n}+"}[kind]
    return StdComplex(kind, n, k, D, simplices, build(levels, pull, name))


def std_inclusion(sub: StdComplex, whole: StdComplex) -> SimpMap:
    maps = [tuple([0] + [whole.index(s) for s in level]) for level in sub.simplices]
    return SimpMap(sub.sset, whole.sset, maps)


def simplex_count(n: int, m: int) -> int:
    """Monotone maps ``[m] -> [n]``, counted by choosing ``m + 1`` values with repetition."""
    from math import comb
    return comb(n + m + 1, m + 1)


# free objects and base change ------------------------------------------------------------

@dataclass
class FreeObject:
    """The free A-set on ``k`` generators with a term for every element."""

    aset: ASet
    unit: tuple
    terms: list          # element -> (b, g, d) over the generators

    def extend(self, target: ASet, images) -> tuple:
        return tuple(target.act(b, [images[v] for v in g], d) for b, g, d in self.terms)


def free_object(A: GenRing, k: int) -> FreeObject:
    """Free A-set on ``k`` generators.

    Over ``F`` this is the pointed set with ``k`` points, over a rig the free
    module ``R^k``; these agree with the term quotient (checked in the tests).
    Any other ring uses the quotient itself.
    """
    one = A.one
    if _is_F(A):
        M = PointedSetASet(A, k)
        terms = [((), (), ())] + [(one, (i,), one) for i in range(k)]
        return FreeObject(M, tuple(range(1, k + 1)), terms)
    if isinstance(A, RigRing):
        M = LinearASet.free_module(A, k)
        ones = tuple([A.rig.one] * k)
        terms = [(tuple(e), tuple(range(k)), ones) for e in M.labels]
        basis = tuple(M.labels.index(tuple(A.rig.one if j == i else A.rig.zero for j in range(k)))
                      for i in range(k))
        return FreeObject(M, basis, terms)
    C = free_aset(A, k)
    return FreeObject(C.aset, C.maps["unit"], [C.quotient.representative(c) for c in range(C.aset.size)])


def phi_star(K: TruncSimpASet, A: GenRing) -> TruncSimpASet:
    """Levelwise free A-set on the non-basepoint simplices of a pointed simplicial set."""
    if not _is_F(K.ring):
        raise ASetError("base change starts from a simplicial object over F")
    if A is K.ring:
        return K
    frees = [free_object(A, M.size - 1) for M in K.levels]

    star = {}
    for l in monotone_maps(K.D):
        low = frees[l.source]
        images = [low.unit[y - 1] if y else 0 for y in K.star[l][1:]]
        star[l] = frees[l.target].extend(low.aset, images)
    return TruncSimpASet([F.aset for F in frees], star, False, f"{A.name}[{K.name}]")


def phi_star_map(f: SimpMap, A: GenRing) -> SimpMap:
    X, Y = phi_star(f.source, A), phi_star(f.target, A)
    if A is f.source.ring:
        return f
    maps = []
    for n in range(X.D + 1):
        FX, FY = free_object(A, f.source.levels[n].size - 1), free_object(A, f.target.levels[n].size - 1)
        images = [FY.unit[y - 1] if y else 0 for y in f.maps[n][1:]]
        maps.append(FX.extend(Y.levels[n], images))
    return SimpMap(X, Y, maps)


# levelwise tensor -----------------------------------------------------------------------

@dataclass
class LevelwiseTensor:
    """``M (x) N`` with ``bilinear[n][m][k]`` the class of ``m (x) k`` at level ``n``."""

    sset: TruncSimpASet
    bilinear: list
    pairs: list


def levelwise_tensor(M: TruncSimpASet, N: TruncSimpASet, cutoff: int | None = None) -> LevelwiseTensor:
    if M.ring is not N.ring or M.D != N.D:
        raise ASetError("levelwise tensor needs one ring and one truncation level")
    cons = [tensor(M.levels[n], N.levels[n], cutoff) for n in range(M.D + 1)]
    bil = [C.maps["bilinear"] for C in cons]

    def pull(l, x):
        C = cons[l.target]
        b, g, d = C.quotient.representative(x)
        pairs = C.maps["pairs"]
        images = [bil[l.source][M.star[l][pairs[i][0]]][N.star[l][pairs[i][1]]] for i in g]
        return cons[l.source].aset.act(b, images, d)

    provisional = M.provisional or N.provisional or any(C.quotient.provisional for C in cons)
    X = build([C.aset for C in cons], pull, f"{M.name}(x){N.name}", provisional)
    return LevelwiseTensor(X, bil, [C.maps["pairs"] for C in cons])


def tensor_maps(f: SimpMap, g: SimpMap, T_src: LevelwiseTensor, T_tgt: LevelwiseTensor) -> SimpMap:
    """``f (x) g`` between two levelwise tensors."""
    maps = []
    for n in range(f.source.D + 1):
        C = T_src.sset.levels[n].quotient
        images = [T_tgt.bilinear[n][f.maps[n][s]][g.maps[n][t]] for s, t in T_src.pairs[n]]
        maps.append(tuple(T_tgt.sset.levels[n].act(*_subst(C.representative(c), images))
                          for c in range(C.size)))
    return SimpMap(T_src.sset, T_tgt.sset, maps)


def _subst(term, images):
    b, g, d = term
    return b, [images[i] for i in g], d


# simplicial maps and hom objects ----------------------------------------------------------

def simp_maps(X: TruncSimpASet, Y: TruncSimpASet, bound: int = 1) -> list:
    """Every simplicial A-set map ``X -> Y`` up to ``D``, as lists of image tuples.

    Level by level: images of generators that are degeneracies of lower
    simplices are forced, the others range over the targets compatible with
    all faces, and the rest of the level is filled in by the action.
    """
    if X.ring is not Y.ring or X.D != Y.D:
        raise ASetError("simplicial maps need one ring and one truncation level")
    D = X.D
    down = {n: [l for l in monotone_maps(D) if l.target == n and l.source < n] for n in range(D + 1)}
    up = {n: [l for l in monotone_maps(D) if l.source == n and l.target < n] for n in range(D + 1)}
    plans = []
    for n in range(D + 1):
        gens = generating_set(X.levels[n])
        plans.append((gens, _generation_plan(X.levels[n], gens)))
    found = []

    def level_choices(n, done):
        MX, MY = X.levels[n], Y.levels[n]
        gens, plan = plans[n]
        options = []
        for x in gens:
            forced = {Y.star[l][done[l.target][y]] for l in up[n]
                      for y in range(X.levels[l.target].size) if X.star[l][y] == x}
            if len(forced) > 1:
                return
            if forced:
                options.append(sorted(forced))
                continue
            opts = [z for z in range(MY.size)
                    if all(Y.star[l][z] == done[l.source][X.star[l][x]] for l in down[n])]
            options.append(opts)
        T1, T2 = MY.table(1), MY.table(2)
        for assign in itertools.product(*options):
            img = np.full(MX.size, -1, dtype=np.int64)
            img[0] = 0
            img[gens] = assign
            for m, (arity, bi, xs, di) in plan:
                img[m] = T1[bi, img[xs[0]], di] if arity == 1 else T2[bi, img[xs[0]] * MY.size + img[xs[1]], di]
            if not _preserves(MX, MY, img, bound):
                continue
            cand = tuple(int(v) for v in img)
            if all(Y.star[l][cand[x]] == done[l.source][X.star[l][x]]
                   for l in down[n] for x in range(MX.size)) and \
               all(cand[X.star[l][y]] == Y.star[l][done[l.target][y]]
                   for l in up[n] for y in range(X.levels[l.target].size)) and \
               all(cand[X.star[l][x]] == Y.star[l][cand[x]]
                   for l in monotone_maps(D) if l.source == n == l.target for x in range(MX.size)):
                yield cand

    def rec(n, done):
        if n > D:
            found.append(list(done))
            return
        for cand in level_choices(n, done):
            rec(n + 1, done + [cand])

    rec(0, [])
    return sorted(found)


class SimpHomASet(ASet):
    """Simplicial maps with the pointwise action."""

    def __init__(self, X: TruncSimpASet, Y: TruncSimpASet, bound: int = 1):
        self.ring = X.ring
        self.source, self.target = X, Y
        self.maps = [tuple(tuple(level) for level in m) for m in simp_maps(X, Y, bound)]
        zero = tuple((0,) * M.size for M in X.levels)
        self.maps.sort(key=lambda m: (m != zero, m))
        self.index = {m: i for i, m in enumerate(self.maps)}
        self.size = len(self.maps)
        self.labels = tuple(str(i) for i in range(self.size))

    def act(self, b, ms, d):
        phis = [self.maps[m] for m in ms]
        image = tuple(tuple(self.target.levels[n].act(b, [phi[n][x] for phi in phis], d)
                            for x in range(self.source.levels[n].size))
                      for n in range(self.source.D + 1))
        if image not in self.index:
            raise ASetError("pointwise action left the set of simplicial maps")
        return self.index[image]


def simplicial_hom(M: TruncSimpASet, N: TruncSimpASet, n: int, cutoff: int | None = None) -> SimpHomASet:
    """Level ``n`` of the simplicial hom: maps ``M (x) phi^* Delta(n)_+ -> N``.

    Truncation only sees ``M (x) Delta(n)_+`` up to ``D``; results are
    trusted for ``2n <= D``.
    """
    if n < 0 or 2 * n > M.D:
        raise RangeError(f"level {n} is outside the trusted range 2n <= {M.D}")
    Dn = phi_star(make_std("delta", n, M.D).sset, M.ring)
    return SimpHomASet(levelwise_tensor(M, Dn, cutoff).sset, N)


def mapping_space(M: TruncSimpASet, N: TruncSimpASet, n: int) -> list:
    """The underlying pointed set of ``simplicial_hom`` at level ``n``."""
    return list(simplicial_hom(M, N, n).maps)


# free maps --------------------------------------------------------------------------------

@dataclass
class FreeWitness:
    free: bool
    generators: list | None      # V_n per level
    searched: int = 0
    failed_level: int | None = None


def _splits(f: SimpMap, n: int, V) -> bool:
    """Whether ``M_n || A^V -> N_n`` (``f_n`` and ``V``) is a bijection."""
    M, N = f.source.levels[n], f.target.levels[n]
    A = M.ring
    Fv = free_object(A, len(V))
    C = coproduct(M, Fv.aset)
    if C.quotient.provisional:
        return False
    SM, SF = C.maps["generators"]
    free_img = Fv.extend(N, list(V))
    images = [f.maps[n][s] for s in SM] + [free_img[s] for s in SF]
    return induced_map(C, N, images).is_bijective()


def is_free_map(f: SimpMap, max_candidates: int = 100_000) -> FreeWitness:
    """Search for generators ``V_n`` closed under degeneracies splitting ``f`` levelwise.

    Levels ascend; at each level candidate sets extend the forced
    degeneracies and are tried by ascending size, then lexicographically.
    The first complete witness is returned.  Over ``F`` only the size that
    matches the counts is tried.
    """
    X, Y = f.source, f.target
    D = X.D
    A = X.ring
    surj = {n: [l for l in monotone_maps(D) if l.source == n and l.target < n and l.is_surjective()]
            for n in range(D + 1)}
    searched = 0
    deepest = [0]

    def rec(n, chosen):
        nonlocal searched
        if n > D:
            return chosen
        deepest[0] = max(deepest[0], n)
        forced = sorted({Y.star[l][v] for l in surj[n] for v in chosen[l.target]} - {0})
        rest = [z for z in range(1, Y.levels[n].size) if z not in forced]
        sizes = range(len(rest) + 1)
        if _is_F(A):
            need = Y.levels[n].size - X.levels[n].size - len(forced)
            sizes = [need] if 0 <= need <= len(rest) else []
        for k in sizes:
            for extra in itertools.combinations(rest, k):
                searched += 1
                if searched > max_candidates:
                    return None
                V = tuple(forced) + extra
                if _splits(f, n, V):
                    out = rec(n + 1, chosen + [V])
                    if out is not None:
                        return out
        return None

    out = rec(0, [])
    if out is None:
        return FreeWitness(False, None, searched, deepest[0])
    return FreeWitness(True, [list(V) for V in out], searched)


# pushout-product --------------------------------------------------------------------------

@dataclass
class PushoutProduct:
    corner: TruncSimpASet
    map: SimpMap
    provisional: bool


def levelwise_pushout(f: SimpMap, g: SimpMap, cutoff: int | None = None):
    """``Y ||_X Z`` for ``f: X -> Y`` and ``g: X -> Z``, with the two structure maps."""
    D = f.source.D
    cons = [pushout(f.level(n), g.level(n), cutoff) for n in range(D + 1)]
    Y, Z = f.target, g.target

    def pull(l, x):
        C = cons[l.target]
        b, gs, d = C.quotient.representative(x)
        SY, SZ = C.maps["generators"]
        low = cons[l.source].maps
        images = [low["left"][Y.star[l][s]] for s in SY] + [low["right"][Z.star[l][s]] for s in SZ]
        return cons[l.source].aset.act(b, [images[i] for i in gs], d)

    provisional = any(C.quotient.provisional for C in cons)
    P = build([C.aset for C in cons], pull, f"({Y.name})||({Z.name})", provisional)
    left = SimpMap(Y, P, [C.maps["left"] for C in cons])
    right = SimpMap(Z, P, [C.maps["right"] for C in cons])
    return P, left, right, cons


def pushout_product(i: SimpMap, j: SimpMap, cutoff: int | None = None) -> PushoutProduct:
    """``(N (x) M') ||_{N (x) M} (N' (x) M) -> N' (x) M'`` for ``i: N -> N'`` and ``j: M -> M'``."""
    N, N2, M, M2 = i.source, i.target, j.source, j.target
    NM = levelwise_tensor(N, M, cutoff)
    NM2 = levelwise_tensor(N, M2, cutoff)
    N2M = levelwise_tensor(N2, M, cutoff)
    N2M2 = levelwise_tensor(N2, M2, cutoff)
    idN, idM = identity_map(N), identity_map(M)
    a = tensor_maps(idN, j, NM, NM2)
    b = tensor_maps(i, idM, NM, N2M)
    P, left, right, cons = levelwise_pushout(a, b, cutoff)
    to_left = tensor_maps(i, identity_map(M2), NM2, N2M2)
    to_right = tensor_maps(identity_map(N2), j, N2M, N2M2)
    maps = []
    for n in range(N.D + 1):
        SY, SZ = cons[n].maps["generators"]
        images = [to_left.maps[n][s] for s in SY] + [to_right.maps[n][s] for s in SZ]
        maps.append(induced_map(cons[n], N2M2.sset.levels[n], images).images)
    provisional = P.provisional or N2M2.sset.provisional
    return PushoutProduct(P, SimpMap(P, N2M2.sset, maps), provisional)
