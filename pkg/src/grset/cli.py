"""``grset``: batch front end for checks, spectra, constructions and the acceptance suite.

Exit codes: 0 success, 1 a checked law fails, 2 the input is malformed,
3 the ring has no enumerable ``A_[1]``, 4 the requested construction is
not supported.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import acceptance
from . import specplus as sp
from . import symspec as ss
from .aset import (ASetError, CutoffError, LinearASet, PointedSetASet, RingASet, check_aset_axioms, coproduct, free_aset,
                   internal_hom, tensor)
from .axioms import check_axioms
from .genring import GenRing, NotEnumerableError, make_F, make_F_monoid, make_from_rig, make_Zreal_rational
from .rigs import FiniteMonoid, FiniteRig, TableValidationError
from .simpset import RangeError, make_std

SCHEMA = "grset/1"
DOT_SCHEMA = "grset-dot/1"


class DescriptorError(ValueError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class Unsupported(ValueError):
    pass


class LawFailure(Exception):
    """Raised while loading when a table breaks a law; carries the report entry."""

    def __init__(self, entry: dict):
        self.entry = entry
        super().__init__(entry["law"])


# descriptors ----------------------------------------------------------------------------------

def _get(desc, key, path, kind=None):
    if not isinstance(desc, dict):
        raise DescriptorError(path, "expected an object")
    if key not in desc:
        raise DescriptorError(f"{path}.{key}", "missing")
    value = desc[key]
    if kind is not None and not isinstance(value, kind):
        raise DescriptorError(f"{path}.{key}", f"expected {getattr(kind, '__name__', kind)}")
    return value


def _table(desc, key, size, path):
    rows = _get(desc, key, path, list)
    if len(rows) != size:
        raise DescriptorError(f"{path}.{key}", f"expected {size} rows, got {len(rows)}")
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != size:
            raise DescriptorError(f"{path}.{key}[{i}]", f"expected a row of length {size}")
        for j, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < size:
                raise DescriptorError(f"{path}.{key}[{i}][{j}]", f"expected an index below {size}")
    return rows


_RINGS: dict = {}


def load_ring(desc, path: str = "$") -> GenRing:
    """Build a generalized ring from a descriptor.

    Shape errors raise :class:`DescriptorError`; a well-formed table that
    breaks a rig or monoid law raises :class:`LawFailure`.  Equal
    descriptors give the same ring object, so operands of a binary
    construction that repeat the ring agree on it.
    """
    key = json.dumps(desc, sort_keys=True)
    if key not in _RINGS:
        _RINGS[key] = _load_ring(desc, path)
    return _RINGS[key]


def _load_ring(desc, path: str) -> GenRing:
    kind = _get(desc, "kind", path, str)
    name = desc.get("name")
    if kind == "F":
        return make_F()
    if kind == "zreal_q":
        return make_Zreal_rational()
    if kind == "rig":
        elems = _get(desc, "elements", path, list)
        if not elems:
            raise DescriptorError(f"{path}.elements", "a rig needs at least one element")
        add = _table(desc, "add", len(elems), path)
        mul = _table(desc, "mul", len(elems), path)
        try:
            rig = FiniteRig(tuple(elems), add, mul, name=name or "")
        except TableValidationError as err:
            raise LawFailure({"law": "rig tables", "passed": False,
                              "witness": {"law": err.law, "at": err.witness, "path": err.path}}) from err
        return make_from_rig(rig, name)
    if kind == "monoid":
        elems = _get(desc, "elements", path, list)
        mul = _table(desc, "mul", len(elems), path)
        try:
            monoid = FiniteMonoid(tuple(elems), mul)
        except TableValidationError as err:
            raise LawFailure({"law": "monoid table", "passed": False,
                              "witness": {"law": err.law, "at": err.witness, "path": err.path}}) from err
        return make_F_monoid(monoid, name)
    raise DescriptorError(f"{path}.kind", f"unknown ring kind {kind!r}")


def load_aset(desc, path: str = "$"):
    """An A-set from ``{"kind": "aset", "ring": ..., <one of the forms below>}``.

    * ``"module": "ring"``: ``A_[1]`` itself
    * ``"pointed": k``: ``k`` non-base points over ``F``
    * ``"moduli": [d, ...]``: ``prod Z/d_i`` over ``Z/n``
    * ``"rank": k``: the free rig module ``R^k``
    * ``"carrier"``, ``"add"``, ``"smul"``: an explicit module over a rig
    """
    A = load_ring(_get(desc, "ring", path, dict), f"{path}.ring")
    if "module" in desc:
        if desc["module"] != "ring":
            raise DescriptorError(f"{path}.module", "only \"ring\" is recognised")
        return RingASet(A)
    if "pointed" in desc:
        k = _get(desc, "pointed", path, int)
        if A.name != "F" or k < 0:
            raise DescriptorError(f"{path}.pointed", "pointed sets need ring F and k >= 0")
        return PointedSetASet(A, k)
    if not hasattr(A, "rig"):
        raise DescriptorError(path, "this form needs a rig")
    if "moduli" in desc:
        return LinearASet.zmod_module(A, tuple(_get(desc, "moduli", path, list)))
    if "rank" in desc:
        return LinearASet.free_module(A, _get(desc, "rank", path, int))
    carrier = _get(desc, "carrier", path, list)
    add = _table(desc, "add", len(carrier), path)
    smul = _get(desc, "smul", path, list)
    if len(smul) != A.rig.size:
        raise DescriptorError(f"{path}.smul", f"expected {A.rig.size} rows")
    return LinearASet(A, tuple(carrier), add, smul)


def read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as err:
        raise DescriptorError("$", f"cannot open {path}") from err
    except json.JSONDecodeError as err:
        raise DescriptorError("$", f"invalid JSON at line {err.lineno} column {err.colno}") from err


# commands -------------------------------------------------------------------------------------

def cmd_check(args) -> tuple:
    desc = read_json(args.input)
    try:
        if isinstance(desc, dict) and desc.get("kind") == "aset":
            M = load_aset(desc)
            report = check_aset_axioms(M, bound=min(args.arity_bound, 2), seed=args.seed).to_dict()
        else:
            A = load_ring(desc)
            report = check_axioms(A, args.arity_bound, seed=args.seed).to_dict()
    except LawFailure as fail:
        report = {"subject": desc.get("name", desc.get("kind")), "bound": args.arity_bound, "passed": False,
                  "laws": [fail.entry]}
    return (0 if report["passed"] else 1), {"command": "check", "seed": args.seed, "report": report}


def cmd_spec(args) -> tuple:
    A = load_ring(read_json(args.input))
    if not A.enumerable:
        raise NotEnumerableError(f"{A.name} has no enumerable A_[1]")
    X = sp.topology(A)
    F = sp.sheafify(RingASet(A), X)
    sections = {",".join(str(x) for x in s): F.sections(D).size for s, D in sorted(X.basic_opens.items())}
    out = {"command": "spec", **X.to_dict(), "structure_sheaf_sections": sections}
    return 0, out, X.to_dot()


BUILDERS = {}


def builder(name):
    def wrap(fn):
        BUILDERS[name] = fn
        return fn
    return wrap


def _construction_dump(C) -> dict:
    return {"size": C.aset.size, "elements": [str(x) for x in C.aset.labels], **C.quotient.report()}


@builder("free_aset")
def _build_free(req, args):
    A = load_ring(_get(req, "ring", "$", dict), "$.ring")
    k = _get(req, "generators", "$", int)
    return _construction_dump(free_aset(A, k, cutoff=req.get("cutoff", args.cutoff)))


@builder("tensor")
def _build_tensor(req, args):
    M, N = load_aset(_get(req, "left", "$", dict), "$.left"), load_aset(_get(req, "right", "$", dict), "$.right")
    return _construction_dump(tensor(M, N, cutoff=req.get("cutoff", args.cutoff)))


@builder("coproduct")
def _build_coproduct(req, args):
    M, N = load_aset(_get(req, "left", "$", dict), "$.left"), load_aset(_get(req, "right", "$", dict), "$.right")
    return _construction_dump(coproduct(M, N, cutoff=req.get("cutoff", args.cutoff)))


@builder("hom")
def _build_hom(req, args):
    M, N = load_aset(_get(req, "left", "$", dict), "$.left"), load_aset(_get(req, "right", "$", dict), "$.right")
    H = internal_hom(M, N)
    return {"size": H.size, "elements": [list(x) for x in H.labels], "stabilized": True}


def _trunc(req, args):
    return req.get("L", args.trunc_l), req.get("D", args.trunc_d)


@builder("sphere")
def _build_sphere(req, args):
    L, D = _trunc(req, args)
    return ss.sphere(L, D).seq.to_dict()


def _space(req, path="$.X"):
    kind = req.get("X", "point")
    if kind not in ("point", "circle", "edge", "pair"):
        raise DescriptorError(path, "expected one of point, circle, edge, pair")
    return kind


@builder("free_module")
def _build_free_module(req, args):
    L, D = _trunc(req, args)
    n = _get(req, "level", "$", int)
    return ss.free_module(n, ss._small_pss(_space(req), D), ss.sphere(L, D)).seq.to_dict()


@builder("latching")
def _build_latching(req, args):
    L, D = _trunc(req, args)
    m, n = _get(req, "module_level", "$", int), _get(req, "level", "$", int)
    M = ss.free_module(m, ss._small_pss(_space(req), D), ss.sphere(L, D))
    Lt = ss.latching(M, n)
    return {"module_level": m, "level": n, "tensor_model": Lt.tensor_model.to_dict(),
            "coproduct_model": Lt.coproduct_model.to_dict(), "formulas_agree": Lt.formulas_agree,
            "map_is_iso": Lt.map_is_iso, "map_is_zero": Lt.map_is_zero,
            "valid_region": {"levels": L, "dimensions": D}}


@builder("boundary")
def _build_boundary(req, args):
    _, D = _trunc(req, args)
    return make_std("boundary", _get(req, "n", "$", int), D).sset.to_dict()


def cmd_build(args) -> tuple:
    req = read_json(args.input)
    name = _get(req, "construction", "$", str)
    if name not in BUILDERS:
        raise Unsupported(f"unsupported construction {name!r}; known: {', '.join(sorted(BUILDERS))}")
    return 0, {"command": "build", "construction": name, "result": BUILDERS[name](req, args)}


def cmd_suite(args) -> tuple:
    numbers = None if not args.criteria else [int(x) for x in args.criteria.split(",")]
    results = acceptance.run_suite(args.seed, numbers=numbers)
    out = {"command": "suite", "seed": args.seed, "criteria": [r.to_dict() for r in results]}
    text = "\n".join(r.line() for r in results)
    return (0 if all(r.passed for r in results) else 1), out, None, text


# output ---------------------------------------------------------------------------------------

def _text(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}- {json.dumps(x, sort_keys=True)}" for x in obj)
    return pad + json.dumps(obj)


def render(payload: dict, fmt: str, dot: str | None = None, text: str | None = None) -> str:
    if fmt == "dot":
        if dot is None:
            raise Unsupported("this command has no DOT output")
        return f"// schema: {DOT_SCHEMA}\n{dot}"
    body = {"schema": SCHEMA, **payload}
    if fmt == "text":
        return (text + "\n") if text is not None else _text(body) + "\n"
    return json.dumps(body, sort_keys=True, indent=2, default=str) + "\n"


def write_output(content: str, out: str | None):
    """Write to ``out`` through a temporary file so a failure leaves nothing half written."""
    if out is None:
        sys.stdout.write(content)
        return
    folder = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".grset-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(content)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _positive(value: str) -> int:
    n = int(value)
    if n <= 0:
        raise argparse.ArgumentTypeError("bounds must be positive")
    return n


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grset", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--arity-bound", type=_positive, default=3)
    common.add_argument("--cutoff", type=_positive, default=None)
    common.add_argument("--trunc-d", type=_positive, default=2)
    common.add_argument("--trunc-l", type=_positive, default=2)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "text", "dot"), default="json")
    common.add_argument("--out", default=None)
    sub = p.add_subparsers(dest="command", required=True)
    for name, helptext in [("check", "check the axioms of a ring or A-set descriptor"),
                           ("spec", "primes, topology and structure sheaf of a finite ring"),
                           ("build", "build a construction from a request file")]:
        c = sub.add_parser(name, parents=[common], help=helptext)
        c.add_argument("input")
    s = sub.add_parser("suite", parents=[common], help="run the acceptance matrix")
    s.add_argument("--criteria", default="", help="comma-separated criterion numbers")
    return p


COMMANDS = {"check": cmd_check, "spec": cmd_spec, "build": cmd_build, "suite": cmd_suite}


def main(argv=None) -> int:
    args = parser().parse_args(argv)
    try:
        code, payload, *rest = COMMANDS[args.command](args)
        dot = rest[0] if rest else None
        text = rest[1] if len(rest) > 1 else None
        write_output(render(payload, args.format, dot, text), args.out)
        return code
    except DescriptorError as err:
        _error(2, "invalid input", err.path, str(err))
        return 2
    except NotEnumerableError as err:
        _error(3, "not enumerable", "$", str(err))
        return 3
    except Unsupported as err:
        _error(4, "unsupported", "$", str(err))
        return 4
    except (CutoffError, RangeError) as err:
        _error(4, "outside the supported range", "$", str(err))
        return 4
    except (ASetError, ss.SymSpecError) as err:
        _error(4, "unsupported", "$", str(err))
        return 4
    except LawFailure as err:
        _error(2, "invalid input", err.entry["witness"].get("path", "$"), f"table breaks {err.entry['witness']['law']}")
        return 2


def _error(code: int, kind: str, path: str, message: str):
    sys.stderr.write(json.dumps({"schema": SCHEMA, "error": kind, "exit": code, "path": path,
                                 "message": message}, sort_keys=True) + "\n")


if __name__ == "__main__":
    sys.exit(main())
