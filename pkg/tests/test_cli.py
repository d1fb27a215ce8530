import json
from pathlib import Path

import pytest

from grset.cli import SCHEMA, main

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, (json.loads(out) if out else None), (json.loads(err) if err else None)


def test_check_z6_passes(capsys):
    code, out, _ = run_json(capsys, "check", DATA / "z6.json", "--arity-bound", "2")
    assert code == 0
    assert out["schema"] == SCHEMA and out["report"]["passed"]
    assert all(law["passed"] for law in out["report"]["laws"])


def test_check_corrupted_table_reports_witness(capsys):
    code, out, _ = run_json(capsys, "check", DATA / "boolean_corrupted.json")
    assert code == 1
    law = out["report"]["laws"][0]
    assert not law["passed"]
    assert law["witness"]["path"] == "add[0][1]"


def test_check_module_descriptor(capsys):
    code, out, _ = run_json(capsys, "check", DATA / "z6_module_2x3.json", "--arity-bound", "2")
    assert code == 0 and out["report"]["passed"]


def test_missing_file(capsys):
    code, out, err = run_json(capsys, "check", DATA / "no-such-file.json")
    assert code == 2 and out is None
    assert err["exit"] == 2 and err["schema"] == SCHEMA


def test_malformed_descriptor_reports_path(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "rig", "elements": [0, 1], "add": [[0, 1], [1]], "mul": [[0, 0], [0, 1]]}))
    code, _, err = run_json(capsys, "check", bad)
    assert code == 2 and err["path"] == "$.add[1]"
    bad.write_text("{not json")
    assert run_json(capsys, "check", bad)[0] == 2


def test_spec_z6(capsys):
    code, out, _ = run_json(capsys, "spec", DATA / "z6.json")
    assert code == 0
    assert len(out["primes"]) == 2 and out["discrete"]
    assert out["structure_sheaf_sections"]["1"] == 6


def test_spec_F_is_a_point(capsys):
    code, out, _ = run_json(capsys, "spec", DATA / "f.json")
    assert code == 0 and len(out["primes"]) == 1


def test_spec_z12_primes(capsys):
    code, out, _ = run_json(capsys, "spec", DATA / "z12.json")
    assert sorted(out["primes"]) == ["{0, 2, 4, 6, 8, 10}", "{0, 3, 6, 9}"]


def test_spec_not_enumerable(capsys):
    code, out, err = run_json(capsys, "spec", DATA / "zreal_q.json")
    assert code == 3 and err["exit"] == 3


def test_spec_dot(capsys):
    code, out, _ = run(capsys, "spec", DATA / "z12.json", "--format", "dot")
    assert code == 0
    first, *rest = out.splitlines()
    assert first == "// schema: grset-dot/1"
    assert rest[0].startswith("digraph")


def test_build_free(capsys):
    code, out, _ = run_json(capsys, "build", DATA / "build_free_z2.json")
    assert code == 0
    assert out["result"]["size"] == 4 and out["result"]["stabilized"]


def test_build_hom_and_tensor(capsys):
    assert run_json(capsys, "build", DATA / "build_hom_pointed.json")[1]["result"]["size"] == 4
    assert run_json(capsys, "build", DATA / "build_tensor_z6.json")[1]["result"]["size"] == 2


def test_build_sphere_levels(capsys):
    code, out, _ = run_json(capsys, "build", DATA / "build_sphere.json")
    # level n, dimension k: k^n smash cells plus the basepoint
    assert out["result"]["sizes"] == [[k ** n + 1 for k in range(3)] for n in range(3)]


def test_build_latching_of_level_zero_module(capsys):
    code, out, _ = run_json(capsys, "build", DATA / "build_latching.json")
    r = out["result"]
    assert code == 0 and r["formulas_agree"] and r["map_is_iso"]
    # a single summand M^0 ^ S^1: one cell per surjection [k] -> [1]
    assert r["tensor_model"]["sizes"] == [1, 2, 3]


def test_build_free_module(capsys):
    out = run_json(capsys, "build", DATA / "build_free_module.json")[1]
    assert out["result"]["sizes"] == [[1, 1, 1], [2, 2, 2], [1, 3, 5]]


def test_build_unsupported(capsys):
    code, _, err = run_json(capsys, "build", DATA / "build_unsupported.json")
    assert code == 4 and "loop_space" in err["message"]


def test_build_out_of_range(tmp_path, capsys):
    req = tmp_path / "req.json"
    req.write_text(json.dumps({"construction": "free_module", "level": 5, "L": 2, "D": 2}))
    out = tmp_path / "result.json"
    code, _, _ = run(capsys, "build", req, "--out", out)
    assert code == 4
    assert not out.exists()


def test_bounds_must_be_positive(capsys):
    with pytest.raises(SystemExit):
        main(["check", str(DATA / "z6.json"), "--arity-bound", "0"])


def test_output_is_byte_identical(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert main(["check", str(DATA / "zreal_q.json"), "--seed", "7", "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    other = tmp_path / "c.json"
    main(["check", str(DATA / "zreal_q.json"), "--seed", "8", "--out", str(other)])
    assert json.loads(other.read_text())["seed"] == 8


def test_suite_subset(capsys):
    code, out, _ = run(capsys, "suite", "--criteria", "3,5", "--format", "text")
    assert code == 0
    assert out.splitlines() == ["[PASS]  3 normal form preserves evaluation",
                                "[PASS]  5 tensor is smash and Hom is pointed maps over F",
                                "[PASS] 11 deterministic reports"]
