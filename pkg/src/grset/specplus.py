"""Ideals, +primes, the finite spectrum, localization and quasi-coherent sheaves.

Ideals are sub-A-sets of ``A_[1]``, computed as closures inside
:class:`~grset.aset.RingASet`.  The spectrum of a finite generalized ring
is a finite space; its opens are stored as frozensets of prime indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .aset import ASet, ASetError, RingASet, find_isomorphism, restrict_scalars, ring_tables
from .genring import GenRing, GRHom, NotEnumerableError, scalar_mul, symmetric_elements, transpose_elem


# ideals ---------------------------------------------------------------------------------------

def ring_aset(A: GenRing) -> RingASet:
    cache = A.__dict__.setdefault("_ring_aset", {})
    if "R" not in cache:
        cache["R"] = RingASet(A)
    return cache["R"]


def closure(M: ASet, seeds, bound: int = 2) -> frozenset:
    """Least subset containing ``0`` and ``seeds`` closed under actions of arity ``<= bound``."""
    have = {0, *seeds}
    tables = [M.table(n) for n in range(1, bound + 1)]
    while True:
        cur = np.array(sorted(have), dtype=np.int64)
        new = set()
        for n, T in enumerate(tables, start=1):
            tuples = np.array(list(itertools.product(cur, repeat=n)), dtype=np.int64)
            codes = (tuples * (M.size ** np.arange(n - 1, -1, -1))).sum(axis=1)
            new |= set(np.unique(T[:, codes, :]).tolist())
        if new <= have:
            return frozenset(have)
        have |= new


@dataclass(frozen=True)
class Ideal:
    ring: GenRing = field(compare=False, hash=False, repr=False)
    members: frozenset           # indices into ring_aset(ring)

    def elements(self) -> list:
        R = ring_aset(self.ring)
        return [R.carrier[i] for i in sorted(self.members)]

    def __contains__(self, a) -> bool:
        return ring_aset(self.ring).index[tuple(a)] in self.members

    def label(self) -> str:
        return "{" + ", ".join(_show(a) for a in self.elements()) + "}"


def _show(a) -> str:
    return str(a[0]) if len(a) == 1 else str(a)


def ideal_generated(A: GenRing, S=(), bound: int = 2) -> Ideal:
    if not A.enumerable:
        raise NotEnumerableError(f"{A.name} has no enumerable A_[1]")
    R = ring_aset(A)
    return Ideal(A, closure(R, [R.index[tuple(a)] for a in S], bound))


def all_ideals(A: GenRing, bound: int = 2) -> list:
    """Every ideal, reached from ``{0}`` by adjoining one element at a time."""
    R = ring_aset(A)
    start = closure(R, [], bound)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for I in frontier:
            for x in range(R.size):
                if x not in I:
                    J = closure(R, I | {x}, bound)
                    if J not in seen:
                        seen.add(J)
                        nxt.append(J)
        frontier = nxt
    return [Ideal(A, I) for I in sorted(seen, key=lambda s: (len(s), sorted(s)))]


def symmetric_indices(A: GenRing) -> list:
    R = ring_aset(A)
    return sorted(R.index[tuple(a)] for a in symmetric_elements(A))


def is_plus_ideal(I: Ideal, bound: int = 2) -> bool:
    sym = set(symmetric_indices(I.ring))
    return closure(ring_aset(I.ring), I.members & sym, bound) == I.members


def _mul_index(A: GenRing, x: int, y: int) -> int:
    memo = A.__dict__.setdefault("_mul_memo", {})
    if (x, y) not in memo:
        R = ring_aset(A)
        memo[x, y] = R.index[scalar_mul(A, R.carrier[x], R.carrier[y])]
    return memo[x, y]


def is_plus_prime(I: Ideal, bound: int = 2) -> bool:
    """A proper +ideal whose symmetric complement is closed under products."""
    A = I.ring
    R = ring_aset(A)
    if R.index[A.one] in I.members or not is_plus_ideal(I, bound):
        return False
    comp = [s for s in symmetric_indices(A) if s not in I.members]
    return all(_mul_index(A, a, b) not in I.members for a in comp for b in comp)


def enumerate_plus_primes(A: GenRing, bound: int = 2) -> list:
    return [I for I in all_ideals(A, bound) if is_plus_prime(I, bound)]


# the space ----------------------------------------------------------------------------------

@dataclass
class SpecSpace:
    ring: GenRing
    primes: list

    @cached_property
    def points(self) -> frozenset:
        return frozenset(range(len(self.primes)))

    def V(self, ideal: Ideal) -> frozenset:
        return frozenset(i for i, p in enumerate(self.primes) if ideal.members <= p.members)

    def Dplus(self, s) -> frozenset:
        R = ring_aset(self.ring)
        x = R.index[tuple(s)]
        return frozenset(i for i, p in enumerate(self.primes) if x not in p.members)

    @cached_property
    def closed_sets(self) -> list:
        base = {self.V(I) for I in all_ideals(self.ring) if is_plus_ideal(I)}
        return _lattice(base | {frozenset(), self.points})

    @cached_property
    def open_sets(self) -> list:
        return sorted({self.points - C for C in self.closed_sets}, key=lambda U: (len(U), sorted(U)))

    @cached_property
    def basic_opens(self) -> dict:
        """``D+(s)`` for every symmetric ``s``, keyed by the element."""
        return {tuple(s): self.Dplus(s) for s in symmetric_elements(self.ring)}

    def closure_of(self, points) -> frozenset:
        out = self.points
        for C in self.closed_sets:
            if set(points) <= C:
                out &= C
        return out

    def is_topology(self) -> bool:
        opens = set(self.open_sets)
        return (frozenset() in opens and self.points in opens
                and all(U | V in opens and U & V in opens for U in opens for V in opens))

    def basis_ok(self) -> bool:
        """Every open is a union of basic opens."""
        basics = set(self.basic_opens.values())
        return all(frozenset().union(*[B for B in basics if B <= U]) == U for U in self.open_sets)

    def is_sober(self) -> bool:
        for C in self.closed_sets:
            if not C or not self._irreducible(C):
                continue
            generic = [p for p in C if self.closure_of([p]) == C]
            if len(generic) != 1:
                return False
        return True

    def _irreducible(self, C) -> bool:
        return not any(C1 | C2 == C and C1 != C and C2 != C
                       for C1 in self.closed_sets if C1 <= C for C2 in self.closed_sets if C2 <= C)

    def is_compact(self) -> bool:
        """Every open cover of the whole space has a finite subcover; finite spaces always do."""
        opens = [U for U in self.open_sets if U]
        covers = [sub for r in range(len(opens) + 1) for sub in itertools.combinations(opens, r)
                  if frozenset().union(*sub) == self.points]
        return all(_has_finite_subcover(c, self.points) for c in covers)

    def is_discrete(self) -> bool:
        return all(frozenset([p]) in set(self.open_sets) for p in self.points)

    def specialization_edges(self) -> list:
        """``p -> q`` when ``q`` lies in the closure of ``p`` and ``q != p``."""
        return [(p, q) for p in sorted(self.points) for q in sorted(self.closure_of([p])) if q != p]

    def to_dot(self) -> str:
        lines = ["digraph spec {"]
        for i, p in enumerate(self.primes):
            lines.append(f'  p{i} [label="{p.label()}"];')
        for p, q in self.specialization_edges():
            lines.append(f"  p{p} -> p{q};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"ring": self.ring.name,
                "primes": [p.label() for p in self.primes],
                "opens": [sorted(U) for U in self.open_sets],
                "basic_opens": {_show(s): sorted(U) for s, U in self.basic_opens.items()},
                "sober": self.is_sober(), "compact": self.is_compact(), "discrete": self.is_discrete()}


def _has_finite_subcover(cover, points) -> bool:
    for r in range(len(cover) + 1):
        if any(frozenset().union(*sub) == points for sub in itertools.combinations(cover, r)):
            return True
    return False


def _lattice(sets) -> list:
    sets = set(sets)
    while True:
        new = {a | b for a in sets for b in sets} | {a & b for a in sets for b in sets}
        if new <= sets:
            return sorted(sets, key=lambda s: (len(s), sorted(s)))
        sets |= new


def topology(A: GenRing) -> SpecSpace:
    return SpecSpace(A, enumerate_plus_primes(A))


def classical_spectrum(n: int) -> list:
    """Prime ideals of ``Z/n`` as residue sets: ``(p)`` for each prime ``p`` dividing ``n``."""
    out = []
    for p in range(2, n + 1):
        if n % p == 0 and all(p % q for q in range(2, p)):
            out.append(frozenset(x for x in range(n) if x % p == 0))
    return out


# localization --------------------------------------------------------------------------------

def multiplicative_closure(A: GenRing, S) -> list:
    R = ring_aset(A)
    have = {R.index[A.one], *(R.index[tuple(s)] for s in S)}
    while True:
        new = {_mul_index(A, a, b) for a in have for b in have}
        if new <= have:
            return sorted(have)
        have |= new


class LocalizedASet(ASet):
    """``S^-1 M = (M x S) / ~`` with ``(m1, s1) ~ (m2, s2)`` iff ``s s2 m1 = s s1 m2`` for some ``s``.

    An A-set through the common-denominator rule
    ``<b, (m_i / s_i), d> = <b, (t_i m_i), d> / t`` with ``t = prod s_i``
    and ``t_i = prod_{j != i} s_j``.
    """

    def __init__(self, M: ASet, S):
        A = M.ring
        R = ring_aset(A)
        self.base = M
        self.ring = A
        self.S = multiplicative_closure(A, S)
        self._sm = {t: [M.smul(R.carrier[t], m) for m in range(M.size)] for t in self.S}
        self._memo = {}
        self._check_symmetric()
        pairs = [(m, s) for m in range(M.size) for s in self.S]
        rel = {}
        for m1, s1 in pairs:
            for m2, s2 in pairs:
                if any(self._smul(s, self._smul(s2, m1)) == self._smul(s, self._smul(s1, m2)) for s in self.S):
                    rel.setdefault((m1, s1), set()).add((m2, s2))
        classes, cls_of = [], {}
        one = R.index[A.one]
        order = sorted(pairs, key=lambda p: (p[1] != one, p))
        zero_key = (0, one)
        order.remove(zero_key)
        order.insert(0, zero_key)
        for p in order:
            if p in cls_of:
                continue
            for q in rel[p]:
                cls_of[q] = len(classes)
            classes.append(p)
        self.classes = classes
        self.class_of = cls_of
        self.size = len(classes)
        self.labels = tuple(f"{M.label(m)}/{_show(R.carrier[s])}" for m, s in classes)

    def _check_symmetric(self):
        A = self.ring
        R = ring_aset(A)
        for s in self.S:
            if transpose_elem(A, R.carrier[s]) != R.carrier[s]:
                raise ASetError("localization needs symmetric denominators")
            for m in range(min(self.base.size, 50)):
                if self.base.smul(R.carrier[s], m) != self.base.rmul(m, R.carrier[s]):
                    raise ASetError("a symmetric denominator acts differently on the two sides")

    def _smul(self, s: int, m: int) -> int:
        row = self._sm.get(s)
        return row[m] if row is not None else self.base.smul(ring_aset(self.ring).carrier[s], m)

    def fraction(self, m: int, s=None) -> int:
        """The class of ``m / s`` (``s`` an element of ``A_[1]``, default ``1``)."""
        R = ring_aset(self.ring)
        si = R.index[self.ring.one if s is None else tuple(s)]
        return self.class_of[(m, si)]

    def act(self, b, ms, d):
        key = (b, tuple(ms), d)
        if key not in self._memo:
            self._memo[key] = self._act(b, ms, d)
        return self._memo[key]

    def values(self, n, digits):
        digits = np.asarray(digits, dtype=np.int64).reshape(-1, n)
        A = self.ring
        one = ring_aset(A).index[A.one]
        reps = np.array(self.classes, dtype=np.int64).reshape(-1, 2)
        scaled = np.zeros_like(digits)
        denom = np.full(len(digits), one, dtype=np.int64)
        for row, ds in enumerate(digits):
            ss_ = [int(reps[c, 1]) for c in ds]
            for i, c in enumerate(ds):
                ti = one
                for j, sj in enumerate(ss_):
                    if j != i:
                        ti = _mul_index(A, ti, sj)
                scaled[row, i] = self._smul(ti, int(reps[c, 0]))
                denom[row] = _mul_index(A, denom[row], ss_[i])
        V = self.base.values(n, scaled)
        return self._lookup[V, denom[None, :, None]]

    @cached_property
    def _lookup(self) -> np.ndarray:
        table = np.full((self.base.size, ring_aset(self.ring).size), -1, dtype=np.int64)
        for (m, t), c in self.class_of.items():
            table[m, t] = c
        return table

    def _act(self, b, ms, d):
        A = self.ring
        reps = [self.classes[m] for m in ms]
        R = ring_aset(A)
        one = R.index[A.one]
        t = one
        for _, s in reps:
            t = _mul_index(A, t, s)
        scaled = []
        for i, (m, _) in enumerate(reps):
            ti = one
            for j, (_, s) in enumerate(reps):
                if j != i:
                    ti = _mul_index(A, ti, s)
            scaled.append(self._smul(ti, m))
        return self.class_of[(self.base.act(b, scaled, d), t)]


def localize_module(M: ASet, S) -> LocalizedASet:
    return LocalizedASet(M, S)


def localize_at(M: ASet, prime: Ideal) -> LocalizedASet:
    """The stalk ``M_p = S_p^-1 M`` with ``S_p`` the symmetric elements outside ``p``."""
    R = ring_aset(M.ring)
    S = [R.carrier[s] for s in symmetric_indices(M.ring) if s not in prime.members]
    return LocalizedASet(M, S)


def invert(M: ASet, s) -> LocalizedASet:
    """``M[1/s]``: denominators the powers of ``s``."""
    return LocalizedASet(M, [tuple(s)])


# sheaves ------------------------------------------------------------------------------------

class SectionsASet(ASet):
    """Sections over an open as tuples of stalk elements, acted on pointwise."""

    def __init__(self, ring, stalks, U, sections):
        self.ring = ring
        self.U = tuple(sorted(U))
        self._stalks = stalks
        zero = tuple(0 for _ in self.U)
        rest = sorted(set(sections) - {zero})
        self.sections = [zero, *rest]
        self.index = {s: i for i, s in enumerate(self.sections)}
        self.size = len(self.sections)
        self.labels = tuple(self.sections)

    def act(self, b, ms, d):
        out = tuple(self._stalks[p].act(b, [self.sections[m][i] for m in ms], d) for i, p in enumerate(self.U))
        if out not in self.index:
            raise ASetError("pointwise action left the sections")
        return self.index[out]

    def values(self, n, digits):
        digits = np.asarray(digits, dtype=np.int64).reshape(-1, n)
        secs = np.array(self.sections, dtype=np.int64).reshape(self.size, len(self.U))
        code = None
        for i, p in enumerate(self.U):
            stalk = self._stalks[p]
            V = stalk.values(n, secs[digits, i])
            code = V if code is None else code * stalk.size + V
        if code is None:
            return super().values(n, digits)
        codes = np.array([self._code(sec) for sec in self.sections], dtype=np.int64)
        order = np.argsort(codes)
        pos = np.searchsorted(codes[order], code)
        pos = np.minimum(pos, len(codes) - 1)
        if not np.all(codes[order][pos] == code):
            raise ASetError("pointwise action left the sections")
        return order[pos]

    def _code(self, sec) -> int:
        out = 0
        for i, p in enumerate(self.U):
            out = out * self._stalks[p].size + sec[i]
        return out


@dataclass
class QCSheaf:
    """``M^#`` on the finite spectrum: stalks, sections and restrictions."""

    space: SpecSpace
    module: ASet

    @cached_property
    def stalks(self) -> dict:
        return {i: localize_at(self.module, p) for i, p in enumerate(self.space.primes)}

    def stalk(self, i: int) -> LocalizedASet:
        return self.stalks[i]

    @cached_property
    def _germs(self) -> dict:
        """``(s, m) -> (D+(s), {p: class of m/s in M_p})`` for symmetric ``s``."""
        out = {}
        for s, D in self.space.basic_opens.items():
            for m in range(self.module.size):
                out[(s, m)] = (D, {p: self.stalks[p].fraction(m, s) for p in D})
        return out

    def is_locally_constant(self, U, sigma: dict) -> bool:
        for p in U:
            if not any(p in D and D <= U and all(sigma[q] == g[q] for q in D)
                       for D, g in self._germs.values()):
                return False
        return True

    def sections_local(self, U) -> SectionsASet:
        """Sections by searching all stalk choices for local constancy."""
        U = tuple(sorted(U))
        found = []
        for choice in itertools.product(*[range(self.stalks[p].size) for p in U]):
            if self.is_locally_constant(set(U), dict(zip(U, choice))):
                found.append(tuple(choice))
        return SectionsASet(self.module.ring, self.stalks, U, found)

    def sections(self, U) -> SectionsASet:
        """Sections as the equalizer over the cover of ``U`` by basic opens inside it.

        A section on ``D+(s)`` is an element of ``M[1/s]``, read on stalks;
        compatible families on overlaps glue to a section of ``U``.
        """
        U = frozenset(U)
        if not U:
            return SectionsASet(self.module.ring, self.stalks, (), [()])
        R = ring_aset(self.module.ring)
        allowed = {}
        for s, D in sorted(self.space.basic_opens.items()):
            if not D or not D <= U:
                continue
            loc = invert(self.module, s)
            vals = {tuple(self.stalks[p].fraction(m, R.carrier[t]) for p in sorted(D)) for m, t in loc.classes}
            allowed[D] = allowed[D] & vals if D in allowed else vals
        partial = [{}]
        for D in sorted(allowed, key=lambda V: (len(V), sorted(V))):
            pts = sorted(D)
            nxt = []
            for sigma in partial:
                for v in sorted(allowed[D]):
                    if all(sigma.get(p, x) == x for p, x in zip(pts, v)):
                        nxt.append({**sigma, **dict(zip(pts, v))})
            partial = nxt
        found = {tuple(sigma[p] for p in sorted(U)) for sigma in partial if set(sigma) == set(U)}
        return SectionsASet(self.module.ring, self.stalks, tuple(sorted(U)), found)

    def global_sections(self) -> SectionsASet:
        return self.sections(self.space.points)

    def restrict(self, V, U, sec: tuple) -> tuple:
        U = tuple(sorted(U))
        return tuple(sec[U.index(p)] for p in sorted(V))

    def sheaf_condition(self) -> bool:
        """The equalizer condition for every open cover of every open."""
        opens = [U for U in self.space.open_sets]
        for U in opens:
            secU = self.sections(U)
            subs = [V for V in opens if V <= U]
            for r in range(1, len(subs) + 1):
                for cover in itertools.combinations(subs, r):
                    if frozenset().union(*cover) != U:
                        continue
                    glued = set()
                    parts = [self.sections(V).sections for V in cover]
                    for fam in itertools.product(*parts):
                        sigma = {}
                        ok = True
                        for V, sec in zip(cover, fam):
                            for p, v in zip(sorted(V), sec):
                                if sigma.setdefault(p, v) != v:
                                    ok = False
                        if ok:
                            glued.add(tuple(sigma[p] for p in sorted(U)))
                    if glued != set(secU.sections):
                        return False
        return True

    def to_dict(self) -> dict:
        return {"space": self.space.to_dict(),
                "stalks": {self.space.primes[p].label(): list(S.labels) for p, S in self.stalks.items()},
                "sections": {",".join(map(str, sorted(U))) or "empty": self.sections(U).size
                             for U in self.space.open_sets}}


def sheafify(M: ASet, space: SpecSpace | None = None) -> QCSheaf:
    return QCSheaf(space or topology(M.ring), M)


# the isomorphism Psi -------------------------------------------------------------------------

@dataclass
class PsiReport:
    bijective: bool
    images: tuple
    left_size: int
    right_size: int
    injectivity_witness: tuple | None = None
    missing_section: tuple | None = None
    gluing: list = field(default_factory=list)


def psi_iso_check(M: ASet, s, space: SpecSpace | None = None, glue: bool = True) -> PsiReport:
    """``Psi: M[1/s] -> M^#(D+(s))``, ``m / s^n -> the constant section``.

    Reports a pair with equal images when injectivity fails, a section
    without preimage when surjectivity fails, and for each section the
    glued preimage built from a cover by basic opens.
    """
    F = sheafify(M, space)
    D = F.space.Dplus(s)
    loc = invert(M, s)
    target = F.sections(D)
    R = ring_aset(M.ring)
    images = []
    for c in range(loc.size):
        m, t = loc.classes[c]
        sec = tuple(F.stalks[p].fraction(m, R.carrier[t]) for p in sorted(D))
        images.append(target.index[sec])
    images = tuple(images)
    report = PsiReport(len(set(images)) == len(images) == target.size, images, loc.size, target.size)
    seen = {}
    for c, y in enumerate(images):
        if y in seen:
            report.injectivity_witness = (loc.labels[seen[y]], loc.labels[c])
            break
        seen[y] = c
    missing = sorted(set(range(target.size)) - set(images))
    if missing:
        report.missing_section = target.sections[missing[0]]
    if glue:
        report.gluing = [glue_section(F, s, target.sections[y]) for y in range(target.size)]
    return report


def glue_section(F: QCSheaf, s, sec: tuple) -> dict:
    """Rebuild a preimage of a section over ``D+(s)`` the way the surjectivity argument does.

    Cover ``D+(s)`` by basic opens ``D+(s_i)`` on which the section is
    ``m_i / s_i``; normalise so that ``s_j m_i = s_i m_j``; find
    ``s^k = <b, (s_{j(x)}), d>`` in ``A_[1]`` and set ``m = <b, (m_{j(x)}), d>``.
    """
    A = F.module.ring
    M = F.module
    R = ring_aset(A)
    D = F.space.Dplus(s)
    U = sorted(D)
    sigma = dict(zip(U, sec))
    pieces = []
    for (si, m), (Di, g) in sorted(F._germs.items()):
        if Di and Di <= D and all(sigma[p] == g[p] for p in Di):
            pieces.append((si, m, Di))
    cover, covered = [], set()
    for si, m, Di in pieces:
        if not Di <= covered:
            cover.append((si, m))
            covered |= Di
    if covered != set(D):
        return {"ok": False, "stage": "cover"}
    sidx = [R.index[tuple(si)] for si, _ in cover]
    ms = [m for _, m in cover]

    def pw(x, k):
        out = R.index[A.one]
        for _ in range(k):
            out = _mul_index(A, out, x)
        return out

    for n in range(0, 6):
        ok = all(M.smul(R.carrier[_mul_index(A, pw(_mul_index(A, a, b), n), b)], mi) ==
                 M.smul(R.carrier[_mul_index(A, pw(_mul_index(A, a, b), n), a)], mj)
                 for a, mi in zip(sidx, ms) for b, mj in zip(sidx, ms))
        if ok:
            break
    else:
        return {"ok": False, "stage": "normalise"}
    ms = [M.smul(R.carrier[pw(a, n)], mi) for a, mi in zip(sidx, ms)]
    sidx = [pw(a, n + 1) for a in sidx]
    target = R.index[tuple(s)]
    for k in range(1, 6):
        sk = pw(target, k)
        if sk == 0:
            # s is nilpotent: D+(s) is empty and the empty expression <(), (), ()> = 0 glues
            return {"ok": tuple(sec) == (), "k": k, "b": (), "d": (), "j": (), "m": M.label(0), "stage": "glued"}
        for ell in (1, 2):
            T = R.table(ell)
            for js in itertools.product(range(len(sidx)), repeat=ell):
                vals = [sidx[j] for j in js]
                code = sum(v * R.size ** (ell - 1 - i) for i, v in enumerate(vals))
                hits = np.argwhere(T[:, code, :] == sk)
                if len(hits):
                    bi, di = map(int, hits[0])
                    Tb = ring_tables(A, ell)
                    b, d = Tb.elems[ell][bi], Tb.elems[ell][di]
                    m = M.act(b, [ms[j] for j in js], d)
                    glued = tuple(F.stalks[p].fraction(m, R.carrier[sk]) for p in U)
                    return {"ok": glued == tuple(sec), "k": k, "b": b, "d": d, "j": js,
                            "m": M.label(m), "stage": "glued"}
    return {"ok": False, "stage": "exponent"}


# quasi-coherence -------------------------------------------------------------------------------

def qc_roundtrip(M: ASet, space: SpecSpace | None = None):
    """``M -> M^# -> global sections`` gives back ``M`` up to isomorphism; returns the iso or ``None``."""
    G = sheafify(M, space).global_sections()
    return find_isomorphism(M, G)


@dataclass
class Presheaf:
    """Sections per open as pointed sets of stalk tuples, with restriction by projection."""

    space: SpecSpace
    sections: dict          # open -> set of tuples over sorted(open)


def constant_presheaf(M: ASet, space: SpecSpace) -> Presheaf:
    """``U -> M`` everywhere, ignoring localization; restriction is the identity on values."""
    return Presheaf(space, {U: {tuple([m] * len(U)) for m in range(M.size)} for U in space.open_sets})


def presheaf_of(F: QCSheaf) -> Presheaf:
    return Presheaf(F.space, {U: set(F.sections(U).sections) for U in F.space.open_sets})


def is_quasi_coherent(P: Presheaf, M: ASet) -> bool:
    """Compare with the sheafification of ``M`` on every open (the only affine chart is the space)."""
    F = sheafify(M, P.space)
    return all(len(P.sections[U]) == F.sections(U).size for U in P.space.open_sets) and \
        find_isomorphism(M, F.global_sections()) is not None and \
        all(P.sections[U] == set(F.sections(U).sections) for U in P.space.open_sets)


# base change -----------------------------------------------------------------------------------

def spec_map(phi: GRHom, source: SpecSpace, target: SpecSpace) -> dict:
    """``spec+(A) -> spec+(B)`` for ``phi: B -> A``: a prime goes to its preimage."""
    B, A = phi.source, phi.target
    RA, RB = ring_aset(A), ring_aset(B)
    out = {}
    for i, p in enumerate(source.primes):
        pre = frozenset(RB.index[b] for b in RB.carrier if RA.index[phi(b)] in p.members)
        matches = [j for j, q in enumerate(target.primes) if q.members == pre]
        if len(matches) != 1:
            raise ASetError("the preimage of a +prime is not a +prime of the source ring")
        out[i] = matches[0]
    return out


@dataclass
class Pushforward:
    phi: GRHom
    sheaf: QCSheaf
    base: SpecSpace
    fmap: dict

    def preimage(self, V) -> frozenset:
        return frozenset(i for i, j in self.fmap.items() if j in V)

    def sections(self, V) -> ASet:
        """``(f_* F)(V) = F(f^-1 V)`` restricted to the source ring."""
        return restrict_scalars(self.phi, self.sheaf.sections(self.preimage(V)))


def pushforward_qc(phi: GRHom, F: QCSheaf, base: SpecSpace | None = None) -> Pushforward:
    base = base or topology(phi.source)
    return Pushforward(phi, F, base, spec_map(phi, F.space, base))
