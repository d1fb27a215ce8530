"""The acceptance matrix: eleven criteria, each returning a pass flag and a JSON-ready detail.

Used by ``tests/test_acceptance.py`` and by ``grset suite``.  Reports are
deterministic for a fixed seed; wall-clock times are kept outside them.
"""

from __future__ import annotations

import json
import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import specplus as sp
from . import symspec as ss
from .aset import (LinearASet, PointedSetASet, RingASet, coproduct, enumerate_homs, extend_scalars,
                   find_isomorphism, free_aset, internal_hom, restrict_scalars, tensor)
from .axioms import check_axioms
from .genring import (coefficient_hom, make_F, make_F_monoid, make_from_rig, make_Zreal_rational,
                      random_partial_fn, unit_hom)
from .normalform import evaluate, normalize, random_expression
from .rigs import FiniteMonoid, boolean, tropical01, zmod
from .simpset import make_std

TIME_LIMIT = 300.0


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: dict
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed, "detail": self.detail}

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.title}"


# 1 -------------------------------------------------------------------------------------------

def axiom_rings():
    return [make_F(), make_F_monoid(FiniteMonoid.cyclic(2), "F{C2}"), make_from_rig(boolean()),
            make_from_rig(tropical01()), make_from_rig(zmod(6)), make_from_rig(zmod(2), "F2")]


def criterion_1(seed: int = 0) -> CriterionResult:
    start = time.perf_counter()
    reports = {A.name: check_axioms(A, 3).to_dict() for A in axiom_rings()}
    elapsed = time.perf_counter() - start
    ok = all(r["passed"] for r in reports.values()) and elapsed < TIME_LIMIT
    detail = {name: {"passed": r["passed"], "cases": {x["law"]: x["cases"] for x in r["laws"]},
                     "failures": [x for x in r["laws"] if not x["passed"]]}
              for name, r in reports.items()}
    return CriterionResult(1, "exhaustive axiom suite at arity bound 3", ok, detail, elapsed)


# 2 -------------------------------------------------------------------------------------------

def criterion_2(seed: int = 0) -> CriterionResult:
    r = check_axioms(make_Zreal_rational(), 3, samples=1000, seed=seed).to_dict()
    laws = {x["law"]: {"passed": x["passed"], "cases": x["cases"], "witness": x["witness"]} for x in r["laws"]}
    ok = r["passed"] and all(v["cases"] >= 1000 for k, v in laws.items() if k != "closure")
    return CriterionResult(2, "randomized rational ball suite", ok, {"seed": seed, "laws": laws})


# 3 -------------------------------------------------------------------------------------------

def criterion_3(seed: int = 0, count: int = 200) -> CriterionResult:
    A = make_from_rig(zmod(6))
    rng = random.Random(f"normal-form:{seed}")
    bad, steps = [], 0
    for i in range(count):
        h = random_partial_fn(rng.randint(0, 3), rng.randint(0, 3), rng)
        e = random_expression(A, h, 4, rng)
        nf, used = normalize(e, A)
        steps += used
        if evaluate(A, nf) != evaluate(A, e):
            bad.append(i)
    return CriterionResult(3, "normal form preserves evaluation", not bad,
                           {"expressions": count, "agree": count - len(bad), "failing": bad, "rewrite_steps": steps})


# 4 -------------------------------------------------------------------------------------------

def _gcd_moduli(a, b):
    return tuple(g for x in a for y in b if (g := math.gcd(x, y)) > 1)


def module_oracle(op: str, n: int, a, b=()) -> tuple:
    """Invariant factors of the classical answer for ``Z/n``-modules ``prod Z/a_i`` and ``prod Z/b_j``."""
    if op == "free":
        return (n,) * a
    if op in ("tensor", "hom"):
        return _gcd_moduli(a, b)
    if op == "coproduct":
        return tuple(x for x in (*a, *b) if x > 1)
    raise ValueError(op)


CLASSICAL_MATRIX = {2: [(2,), (2, 2)], 6: [(2,), (3,), (6,), (2, 3)]}


def criterion_4(seed: int = 0, max_size: int = 20) -> CriterionResult:
    rows, ok = [], True
    for n, mods in CLASSICAL_MATRIX.items():
        A = make_from_rig(zmod(n))
        cases = [("free", k, ()) for k in (1, 2) if n ** k <= max_size]
        cases += [(op, a, b) for op in ("tensor", "hom", "coproduct") for a in mods for b in mods]
        for op, a, b in cases:
            want = module_oracle(op, n, a, b)
            if math.prod(want) > max_size:
                continue
            if op == "free":
                C = free_aset(A, a)
                got, stable = C.aset, C.stabilized
            else:
                M, N = LinearASet.zmod_module(A, a), LinearASet.zmod_module(A, b)
                if op == "hom":
                    got, stable = internal_hom(M, N), True
                else:
                    C = (tensor if op == "tensor" else coproduct)(M, N)
                    got, stable = C.aset, C.stabilized
            iso = find_isomorphism(got, LinearASet.zmod_module(A, want)) is not None
            ok &= iso and stable
            rows.append({"ring": f"Z/{n}", "op": op, "left": list(a) if op != "free" else a,
                         "right": list(b), "oracle": list(want), "size": got.size, "stabilized": stable,
                         "isomorphic": iso})
    return CriterionResult(4, "classical module oracle for Z/2 and Z/6", ok, {"instances": rows})


# 5 -------------------------------------------------------------------------------------------

def criterion_5(seed: int = 0, max_size: int = 5) -> CriterionResult:
    F = make_F()
    rows, ok = [], True
    for p in range(1, max_size + 1):
        for q in range(1, max_size + 1):
            P, Q = PointedSetASet(F, p - 1), PointedSetASet(F, q - 1)
            T, H = tensor(P, Q), internal_hom(P, Q)
            smash = (p - 1) * (q - 1) + 1
            pointed_maps = q ** (p - 1)
            good = T.aset.size == smash and T.stabilized and H.size == pointed_maps
            ok &= good
            rows.append({"p": p, "q": q, "tensor": T.aset.size, "smash": smash, "hom": H.size,
                         "pointed_maps": pointed_maps, "ok": good})
    return CriterionResult(5, "tensor is smash and Hom is pointed maps over F", ok, {"instances": rows})


# 6 -------------------------------------------------------------------------------------------

def _count(M, N):
    return len(enumerate_homs(M, N))


def aset_adjunction_rows() -> list:
    F, B = make_F(), make_from_rig(boolean())
    Z2, Z6 = make_from_rig(zmod(2)), make_from_rig(zmod(6))
    small = [("F", [PointedSetASet(F, 1), PointedSetASet(F, 2)]),
             ("Z/2", [LinearASet.zmod_module(Z2, (2,)), LinearASet.zmod_module(Z2, (2, 2))]),
             ("B", [RingASet(B)])]
    rows = []
    for name, objs in small:
        A = objs[0].ring
        for k in (1, 2):
            free = free_aset(A, k)
            for M in objs:
                rows.append({"law": "free", "ring": name, "generators": k, "target": M.size,
                             "lhs": _count(free.aset, M), "rhs": M.size ** k})
        for M in objs:
            for N in objs:
                for K in objs:
                    T = tensor(M, N)
                    rows.append({"law": "tensor-hom", "ring": name, "sizes": [M.size, N.size, K.size],
                                 "lhs": _count(T.aset, K), "rhs": _count(M, internal_hom(N, K))})
    FB = unit_hom(B)
    for name, phi, Ms, Ns in [
            ("F->B", FB, [PointedSetASet(FB.source, 1)], [RingASet(B)]),
            ("Z/6->Z/2", coefficient_hom(Z6, Z2, {x: x % 2 for x in range(6)}),
             [LinearASet.zmod_module(Z6, (2,)), LinearASet.zmod_module(Z6, (6,))],
             [LinearASet.zmod_module(Z2, (2,))])]:
        for M in Ms:
            up = extend_scalars(phi, M).aset
            for N in Ns:
                down = restrict_scalars(phi, N)
                rows.append({"law": "base-change", "map": name, "sizes": [M.size, N.size],
                             "lhs": _count(up, N), "rhs": _count(M, down)})
                left = restrict_scalars(phi, internal_hom(up, N))
                right = internal_hom(M, down)
                rows.append({"law": "projection", "map": name, "sizes": [M.size, N.size],
                             "lhs": left.size, "rhs": right.size,
                             "isomorphic": find_isomorphism(left, right) is not None})
    return rows


def sequence_adjunction_rows() -> list:
    rows = []
    S2 = ss.sphere(2, 2)
    P = ss.point_pss(2)
    Bd = make_std("boundary", 1, 2).sset
    M = ss.from_pss([P, ss.wedge([P, P], 2), ss.zero_pss(2)])
    for N, K in [(ss.unit_seq(2, 2), S2.seq), (ss.concentrated(1, P, 2), S2.seq),
                 (S2.seq, ss.free_module(1, P, S2).seq)]:
        lhs, rhs = ss.tensor_hom_counts(M, N, K)
        rows.append({"law": "sequence tensor-hom", "N": N.name, "K": K.name, "lhs": lhs, "rhs": rhs})
    for n in range(2):
        for X in (P, Bd):
            for N in (S2, ss.free_module(0, Bd, S2), ss.free_module(1, P, S2)):
                lhs, rhs = ss.free_adjunction_counts(n, X, N)
                rows.append({"law": "free module", "level": n, "X": X.name, "N": N.name, "lhs": lhs, "rhs": rhs})
    S3 = ss.sphere(3, 2)
    F1 = ss.free_module(1, P, S3)
    for Mx, Nx in [(ss.truncate(S3, 1), ss.truncate(S3, 2)), (ss.truncate(F1, 1), ss.truncate(F1, 2)),
                   (ss.truncate(ss.free_module(0, Bd, S3), 1), ss.truncate(F1, 2))]:
        lhs, rhs = ss.shift_adjunction_counts(Mx, Nx)
        rows.append({"law": "shift", "M": Mx.name, "N": Nx.name, "lhs": lhs, "rhs": rhs})
    return rows


def criterion_6(seed: int = 0) -> CriterionResult:
    rows = aset_adjunction_rows() + sequence_adjunction_rows()
    ok = all(r["lhs"] == r["rhs"] and r.get("isomorphic", True) for r in rows)
    return CriterionResult(6, "adjunction bijections by cardinality", ok, {"instances": rows})


# 7 -------------------------------------------------------------------------------------------

def criterion_7(seed: int = 0, count: int = 50) -> CriterionResult:
    rng = random.Random(f"symmetric:{seed}")
    bad = []
    for i in range(count):
        M, N = ss.random_symseq(rng), ss.random_symseq(rng)
        MN, NM = ss.seq_tensor_decomp(M, N), ss.seq_tensor_decomp(N, M)
        MNi, NMi = ss.seq_tensor_induced(M, N), ss.seq_tensor_induced(N, M)
        f = ss.decomp_to_induced(M, N, MN, MNi)
        tw = ss.twist(M, N, MN, NM)
        back = ss.twist(N, M, NM, MN)
        via_decomp = ss.compose_maps(tw, ss.decomp_to_induced(N, M, NM, NMi))
        via_induced = ss.compose_maps(f, ss.twist_induced(M, N, MNi, NMi))
        checks = {"iso": f.is_iso(), "twist_squared": ss.is_identity(ss.compose_maps(tw, back)),
                  "twists_agree": via_decomp.maps == via_induced.maps}
        if not all(checks.values()):
            bad.append({"instance": i, **checks})
    S = ss.sphere(3, 2)
    T, m = ss.sphere_multiplication(S)
    t = ss.twist(S.seq, S.seq, T, T)
    sphere_ok = {"twist_squared": ss.is_identity(ss.compose_maps(t, t)),
                 "commutative": ss.compose_maps(t, m).maps == m.maps,
                 "multiplication_valid": not m.failures()}
    ok = not bad and all(sphere_ok.values())
    return CriterionResult(7, "symmetric sequence tensor models and twist", ok,
                           {"instances": count, "failing": bad, "sphere": sphere_ok})


# 8 -------------------------------------------------------------------------------------------

def latching_instances(seed: int, count: int = 20):
    rng = random.Random(f"latching:{seed}")
    S = ss.sphere(3, 2)
    for _ in range(count):
        m = rng.randint(0, 2)
        X = ss._small_pss(rng.choice(["point", "circle", "edge", "pair"]), 2)
        yield m, X.name, ss.free_module(m, X, S), rng.randint(1, 3)


def latching_agreement(seed: int = 0, count: int = 20) -> list:
    rows = []
    for m, X, M, n in latching_instances(seed, count):
        L = ss.latching(M, n)
        rows.append({"m": m, "X": X, "n": n, "agree": L.formulas_agree})
    return rows


def latching_pattern(bound: int = 3) -> list:
    """``L^n F_m`` against the expected pattern: iso for ``n > m``, zero for ``n <= m``."""
    S = ss.sphere(bound, 2)
    X = make_std("delta", 0, 2).sset
    rows = []
    for m in range(bound + 1):
        F = ss.free_module(m, X, S)
        for n in range(bound + 1):
            L = ss.latching(F, n)
            ML = ss.module_latching(F, n)
            expect = "iso" if n > m else "zero"
            got = L.map_is_iso if n > m else L.map_is_zero
            rows.append({"m": m, "n": n, "expected": expect, "holds": got,
                         "module_latching_holds": ML.map_is_iso if n > m else ML.map_is_zero})
    return rows


def criterion_8(seed: int = 0) -> CriterionResult:
    agree = latching_agreement(seed)
    pattern = latching_pattern()
    part_a = all(r["agree"] for r in agree)
    part_b = all(r["holds"] for r in pattern)
    return CriterionResult(8, "latching formulas and free-module pattern", part_a and part_b,
                           {"agreement": agree, "agreement_passed": part_a, "pattern": pattern,
                            "pattern_passed": part_b,
                            "pattern_failures": [(r["m"], r["n"]) for r in pattern if not r["holds"]]})


# 9 -------------------------------------------------------------------------------------------

def criterion_9(seed: int = 0) -> CriterionResult:
    Z6 = sp.topology(make_from_rig(zmod(6)))
    want6 = {frozenset({0, 2, 4}), frozenset({0, 3})}
    got6 = {frozenset(x[0] for x in p.elements()) for p in Z6.primes}
    checks = {"Z/6 primes": got6 == want6, "Z/6 discrete": Z6.is_discrete()}
    spaces = {"Z/6": Z6}
    for name, A in [("F", make_F()), ("B", make_from_rig(boolean()))]:
        spaces[name] = sp.topology(A)
        checks[f"{name} singleton"] = len(spaces[name].primes) == 1
    classical = {}
    for n in (2, 3, 4, 6, 12):
        X = sp.topology(make_from_rig(zmod(n)))
        spaces[f"Z/{n}"] = X
        got = sorted(sorted(x[0] for x in p.elements()) for p in X.primes)
        want = sorted(sorted(s) for s in sp.classical_spectrum(n))
        classical[n] = {"primes": got, "classical": want}
        checks[f"Z/{n} classical"] = got == want
    for name, X in spaces.items():
        checks[f"{name} sober"] = X.is_sober()
        checks[f"{name} compact"] = X.is_compact()
    return CriterionResult(9, "finite spectra", all(checks.values()), {"checks": checks, "classical": classical})


# 10 ------------------------------------------------------------------------------------------

def psi_matrix():
    Z6, Z2, Z4 = (make_from_rig(zmod(n)) for n in (6, 2, 4))
    to2 = coefficient_hom(Z6, Z2, {x: x % 2 for x in range(6)})
    Z2_over_Z6 = restrict_scalars(to2, RingASet(Z2))
    B, F = make_from_rig(boolean()), make_F()
    modules = [("Z/6", Z6, RingASet(Z6)), ("Z/2 over Z/6", Z6, Z2_over_Z6),
               ("Z/3 over Z/6", Z6, LinearASet.zmod_module(Z6, (3,))),
               ("Z/4", Z4, RingASet(Z4)), ("Z/2", Z2, RingASet(Z2)), ("B", B, RingASet(B)),
               ("F", F, PointedSetASet(F, 1))]
    for name, A, M in modules:
        X = sp.topology(M.ring)
        for s in sorted(X.basic_opens):
            yield name, s, M, X


def criterion_10(seed: int = 0) -> CriterionResult:
    rows, ok = [], True
    special = None
    for name, s, M, X in psi_matrix():
        rep = sp.psi_iso_check(M, s, X)
        glued = all(g.get("ok") for g in rep.gluing)
        ok &= rep.bijective and glued
        row = {"module": name, "s": list(s), "bijective": rep.bijective, "left": rep.left_size,
               "right": rep.right_size, "glued": glued}
        rows.append(row)
        if name == "Z/6" and tuple(s) == (3,):
            special = row
    special_ok = special is not None and special["left"] == special["right"] == 2
    roundtrips = {}
    Z6, Z2 = make_from_rig(zmod(6)), make_from_rig(zmod(2))
    for name, M in [("Z/6", RingASet(Z6)), ("Z/2", RingASet(Z2)), ("Z/4", RingASet(make_from_rig(zmod(4)))),
                    ("Z/12", RingASet(make_from_rig(zmod(12)))), ("B", RingASet(make_from_rig(boolean()))),
                    ("F", RingASet(make_F())),
                    ("Z/2 over Z/6", restrict_scalars(coefficient_hom(Z6, Z2, {x: x % 2 for x in range(6)}),
                                                      RingASet(Z2)))]:
        roundtrips[name] = sp.qc_roundtrip(M) is not None
    ok = ok and special_ok and all(roundtrips.values())
    return CriterionResult(10, "Psi isomorphism and quasi-coherent round trip", ok,
                           {"psi": rows, "Z/6 at 3": special, "roundtrip": roundtrips})


# 11 ------------------------------------------------------------------------------------------

CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5, 6: criterion_6,
            7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10}


def _run_one(args):
    number, seed = args
    start = time.perf_counter()
    res = CRITERIA[number](seed)
    res.elapsed = res.elapsed or time.perf_counter() - start
    return res


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("GRSET_THREADS", "1")))
    except ValueError:
        return 1


def run_criteria(numbers, seed: int = 0, threads: int | None = None) -> list:
    """Run the selected criteria, in parallel processes when ``threads > 1``; results keep their order."""
    numbers = list(numbers)
    threads = thread_count() if threads is None else threads
    jobs = [(n, seed) for n in numbers]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(threads, len(jobs))) as pool:
            return list(pool.map(_run_one, jobs))
    return [_run_one(j) for j in jobs]


def canonical(results) -> str:
    return json.dumps([r.to_dict() for r in results], sort_keys=True, separators=(",", ":"), default=str)


def criterion_11(first: list, seed: int = 0, threads: int | None = None) -> CriterionResult:
    """Re-run the criteria behind ``first`` and compare the canonical reports byte for byte."""
    start = time.perf_counter()
    again = run_criteria([r.number for r in first], seed, threads)
    a, b = canonical(first), canonical(again)
    return CriterionResult(11, "deterministic reports", a == b,
                           {"criteria": [r.number for r in first], "bytes": len(a.encode())},
                           time.perf_counter() - start)


def run_suite(seed: int = 0, threads: int | None = None, numbers=None) -> list:
    numbers = sorted(CRITERIA) if numbers is None else [n for n in numbers if n != 11]
    results = run_criteria(numbers, seed, threads)
    return results + [criterion_11(results, seed, threads)]
