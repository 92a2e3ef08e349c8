import json
import os
import subprocess
import sys

import pytest

from hopfkit import hzf
from hopfkit.catalog import H4, kZn, p_alpha
from hopfkit.cli import EXIT_BOUND, EXIT_FAIL, EXIT_INPUT, EXIT_OK, run
from hopfkit.exactmath import PrimeField
from hopfkit.products import build_gqd

F3 = PrimeField(3)


@pytest.fixture
def exported(tmp_path, capsys):
    def go(name):
        d = tmp_path / name.replace("(", "_").replace(")", "")
        assert run(["export", name, "--out", str(d)]) == EXIT_OK
        capsys.readouterr()
        return d
    return go


def test_check_hopf_h4(exported, capsys):
    d = exported("H4")
    assert run(["check", "hopf", str(d / "H4.hzf")]) == EXIT_OK
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out


def test_ybe_p_alpha(exported, capsys):
    d = exported("H4")
    assert run(["ybe", "--braiding", "p_alpha", "--algebra", str(d / "H4.hzf")]) == EXIT_OK
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert "4 16" in lines
    assert len(lines[lines.index("4 16") + 1].split()) == 16
    assert "yang_baxter" in out


def test_ybe_writes_matrix(exported, tmp_path):
    d = exported("H4")
    target = tmp_path / "R.mat"
    assert run(["ybe", "--braiding", "p_alpha", "--algebra", str(d / "H4.hzf"),
                "--comodule", "regular+trivial", "--out", str(target)]) == EXIT_OK
    assert target.read_text().splitlines()[0] == "5 25"


def test_verify_sigma_round_trip_borel1(exported):
    d = exported("Borel-double(1)")
    argv = ["verify", "sigma", "--product", str(d / "double.hzf"), "--quad", str(d / "canonical.quad.json"),
            "--direction", "roundtrip"]
    assert run(argv) == EXIT_OK


@pytest.mark.slow
def test_verify_sigma_round_trip_borel2(exported):
    d = exported("Borel-double(2)")
    argv = ["verify", "sigma", "--product", str(d / "double.hzf"), "--quad", str(d / "canonical.quad.json"),
            "--direction", "roundtrip"]
    assert run(argv) == EXIT_OK


def test_verify_sigma_other_directions(exported):
    d = exported("H4-double")
    P, Q, S = str(d / "double.hzf"), str(d / "canonical.quad.json"), str(d / "sigma.form.json")
    assert run(["verify", "sigma", "--product", P, "--quad", Q, "--direction", "assemble"]) == EXIT_OK
    assert run(["verify", "sigma", "--product", P, "--sigma", S, "--direction", "decompose"]) == EXIT_OK
    assert run(["verify", "sigma", "--product", P, "--quad", Q, "--sigma", S]) == EXIT_OK


def test_check_braiding_with_param(exported):
    d = exported("H4")
    A = str(d / "H4.hzf")
    assert run(["check", "braiding", "--algebra", A, "--form", "p_alpha"]) == EXIT_OK
    assert run(["check", "braiding", "--algebra", A, "--form", "eps"]) == EXIT_FAIL
    assert run(["check", "braiding", "--algebra", A, "--form", str(d / "p.form.json")]) == EXIT_OK


def test_check_datum_failure_exit(tmp_path):
    # a right action that is not a module action
    A = kZn(2, F3)
    block = {"algebras": {"Z2": hzf.dump_algebra(A)}, "base": "Z2", "hpart": "Z2", "kind": "dcp",
             "ract": [[["g", 1], ["g", 1], {"(g,0)": "1"}]]}
    path = tmp_path / "bad.json"
    hzf.write(str(path), block)
    assert run(["check", "datum", str(path)]) == EXIT_FAIL
    assert run(["build", str(path)]) == EXIT_FAIL


def test_build_and_check_product(tmp_path, capsys):
    A = H4(F3)
    block = {"algebras": {"H4": hzf.dump_algebra(A)}, "base": "H4", "hpart": "H4", "kind": "gqd",
             "pairing": hzf.dump_form(p_alpha(A, 1), "H4", "H4"), "name": "D"}
    src, dst = tmp_path / "d.json", tmp_path / "d.hzf"
    hzf.write(str(src), block)
    assert run(["build", str(src), "--out", str(dst), "--verify"]) == EXIT_OK
    assert run(["check", "hopf", str(dst)]) == EXIT_OK
    assert run(["enumerate", "--algebra", str(dst), "--prime", "3", "--strategy", "propagate",
                "--what", "decompose"]) == EXIT_OK
    assert run(["enumerate", "--algebra", str(dst), "--prime", "3", "--what", "braidings"]) == EXIT_BOUND
    capsys.readouterr()


def test_enumerate_h4(exported, tmp_path):
    d = exported("H4")
    out = tmp_path / "r.jsonl"
    assert run(["enumerate", "--algebra", str(d / "H4.hzf"), "--prime", "3", "--out", str(out)]) == EXIT_OK
    lines = out.read_text().splitlines()
    assert len(lines) == 3
    assert [json.loads(x)["index"] for x in lines] == [0, 1, 2]


def test_enumerate_bijection_on_double(exported):
    d = exported("Z2-toys")
    assert run(["enumerate", "--algebra", str(d / "D.hzf"), "--prime", "3"]) == EXIT_OK


def test_input_errors(tmp_path, capsys):
    assert run(["check", "hopf", str(tmp_path / "missing.hzf")]) == EXIT_INPUT
    assert run(["frobnicate"]) == EXIT_INPUT
    assert run(["demo", "Nope"]) == EXIT_INPUT
    assert run(["check", "braiding"]) == EXIT_INPUT
    bad = tmp_path / "bad.hzf"
    bad.write_text("{")
    assert run(["check", "hopf", str(bad)]) == EXIT_INPUT
    capsys.readouterr()


def test_demo_and_verify_fixture(capsys):
    assert run(["demo", "H4"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "fixture H4" in out and "note:" in out
    assert run(["verify", "fixture", "Z2-toys"]) == EXIT_OK


def test_window_is_reported(capsys):
    assert run(["--window", "2", "verify", "fixture", "kZ"]) == EXIT_OK
    assert "window" in capsys.readouterr().out


def test_jsonl_output_is_parseable(exported, capsys):
    d = exported("H4")
    capsys.readouterr()
    assert run(["--format", "jsonl", "check", "hopf", str(d / "H4.hzf")]) == EXIT_OK
    rows = [json.loads(x) for x in capsys.readouterr().out.splitlines()]
    assert rows and all("axiom" in r or "report" in r or "summary" in r for r in rows)


def _cli(args, threads, cwd):
    env = dict(os.environ, HOPF_THREADS=str(threads))
    return subprocess.run([sys.executable, "-m", "hopfkit", *args], capture_output=True, env=env, cwd=cwd, check=False)


def test_reports_identical_across_thread_counts(exported, tmp_path):
    d = exported("H4")
    outs = []
    for t in (1, 4):
        r = _cli(["--format", "jsonl", "enumerate", "--algebra", str(d / "H4.hzf"), "--prime", "5"], t, tmp_path)
        assert r.returncode == 0, r.stderr
        outs.append(r.stdout)
    assert outs[0] == outs[1]


def test_module_entry_point(tmp_path):
    r = _cli(["demo", "Z2-toys"], 1, tmp_path)
    assert r.returncode == 0


def test_exported_product_loads_back(exported):
    d = exported("H4-double")
    P = hzf.load_product(hzf.read(str(d / "double.hzf")))
    A = P.A
    ref = build_gqd(A, P.H, P.pairing, check=False)
    assert P.dim() == ref.dim() == 16
