import json
import subprocess
import sys

import pytest

from strongpar.cli import main

# mu_1 = mu_2 = 1/4, mu_3 = 1/4 - 1/125: cond(mu_1 / mu_3) = 4 at p = 5
GL3 = {"group": "GL", "n": 3, "p": 5, "level": 4, "exponents": ["1/4", "1/4", "121/500"]}


def run(argv, capsys):
    code = main(argv)
    out = json.loads(capsys.readouterr().out)
    assert out["exit_code"] == code
    return code, out


def test_classify_gl3_example(capsys):
    code, out = run(["classify", "--input", json.dumps(GL3)], capsys)
    assert code == 0 and out["status"] == "ok"
    c = out["classification"]
    assert c["strongly_parabolic"] and c["easy"] and c["levi_subset"] == [0]
    assert out["k_spec"]["exponent_matrix"] == [[0, 0, 2], [0, 0, 2], [2, 2, 0]]
    assert out["satake_target"]["subgroup"] == [0] and out["satake_target"]["subgroup_order"] == 2
    assert out["manifest"]["command"] == "classify" and out["manifest"]["seed"] == 0


def test_classify_trivial_character(capsys):
    obj = {"group": "Sp", "n": 4, "p": 5, "level": 1, "exponents": ["0", "0"]}
    code, out = run(["classify", "--input", json.dumps(obj)], capsys)
    assert code == 0
    assert out["classification"]["easy"] and out["classification"]["levi_subset"] == [0, 1]
    assert out["satake_target"]["is_full_weyl_group"]


def test_classify_non_parabolic(capsys):
    obj = {"group": "SL", "n": 3, "p": 7, "level": 1, "exponents": ["1/3", "1/3"]}
    code, out = run(["classify", "--input", json.dumps(obj)], capsys)
    c = out["classification"]
    assert code == 0 and not c["parabolic"]
    assert c["stabilizer_order"] == 3 and c["orbit_size"] == 2
    assert "satake_target" not in out and "k_spec" not in out


def test_input_file_and_prime_override(tmp_path, capsys):
    f = tmp_path / "in.json"
    f.write_text(json.dumps({"group": "GL", "n": 2, "p": 5, "level": 1, "exponents": ["1/2", "0"]}))
    code, out = run(["classify", "--input", str(f), "--prime", "7"], capsys)
    assert code == 0 and out["classification"]["p"] == 7


@pytest.mark.parametrize("arg", ["{not json", "[1, 2]", "/nonexistent/file.json",
                                 json.dumps({"group": "GL", "n": 2, "p": 2, "level": 1, "exponents": ["0", "0"]}),
                                 json.dumps({"group": "XX", "n": 2, "p": 5, "level": 1, "exponents": ["0"]})])
def test_input_errors_exit_2(arg, capsys):
    code, out = run(["classify", "--input", arg], capsys)
    assert code == 2 and out["status"] == "input_error" and out["error"]


def test_missing_input_exit_2(capsys):
    code, _ = run(["classify"], capsys)
    assert code == 2


def test_cap_exceeded_exit_3(capsys):
    obj = {"group": "GL", "n": 4, "p": 13, "level": 1, "exponents": ["0", "1/12", "1/6", "1/4"]}
    code, out = run(["classify", "--input", json.dumps(obj), "--cap-orbit", "5"], capsys)
    assert code == 3 and out["status"] == "cap_exceeded"


def test_table(capsys):
    code, out = run(["table"], capsys)
    assert code == 0
    assert out["rows"] == {"1": "all characters are easy", "2": "all characters are strongly parabolic",
                           "3": "all parabolic characters are easy",
                           "4": "all parabolic characters are strongly parabolic"}
    assert all(e["match"] for e in out["entries"])


def test_verify_empty_suite_is_noop(capsys):
    code, out = run(["verify"], capsys)
    assert code == 0 and out["suites"] == {} and out["all_passed"]


def test_verify_unknown_suite(capsys):
    code, _ = run(["verify", "bogus"], capsys)
    assert code == 2


def test_verify_small_suites(capsys):
    code, out = run(["verify", "kspec", "mu", "--trials", "200", "--seed", "4"], capsys)
    assert code == 0 and out["all_passed"]
    kspec = out["suites"]["kspec"]
    assert [r["claim"] for r in kspec] == ["k_closure", "k_closure_fails_without_levi_compatibility"]
    assert all(r["seed"] == 4 and r["trials"] and r["result"] for r in kspec)


def test_verify_comms_restricted(capsys):
    code, out = run(["verify", "comms", "--prime", "3", "--level", "1"], capsys)
    assert code == 0
    claims = [r["claim"] for r in out["suites"]["comms"]]
    assert claims == ["explicit_commutator", "comm_tech", "derived_contains_torus"]


def test_satake(capsys):
    code, out = run(["satake", "--input", json.dumps({"group": "GL", "n": 2, "subset": [0]}), "--bound", "1"], capsys)
    assert code == 0 and out["ring"]["basis"] == [[0, 0], [1, 0], [1, 1]]
    code, out = run(["satake", "--input", json.dumps(GL3), "--bound", "1"], capsys)
    assert code == 0 and out["ring"]["subgroup"] == [0]
    code, _ = run(["satake", "--input", json.dumps({"group": "GL", "n": 2, "subset": [3]})], capsys)
    assert code == 2
    obj = {"group": "SL", "n": 3, "p": 7, "level": 1, "exponents": ["1/3", "1/3"]}
    code, _ = run(["satake", "--input", json.dumps(obj)], capsys)
    assert code == 2


def test_output_is_atomic_and_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "kspec", "--trials", "100", "--seed", "9"]
    assert main(args + ["--output", str(a)]) == 0
    assert main(args + ["--output", str(b)]) == 0
    ta, tb = a.read_text(), b.read_text()
    assert ta.replace(str(a), "") == tb.replace(str(b), "")
    assert capsys.readouterr().out == ""
    assert sorted(p.name for p in tmp_path.iterdir()) == ["a.json", "b.json"]


def test_stdout_byte_identical(capsys):
    args = ["classify", "--input", json.dumps(GL3)]
    main(args)
    first = capsys.readouterr().out
    main(args)
    assert capsys.readouterr().out == first


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "strongpar", "verify"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["all_passed"]


def test_failed_check_exit_1(monkeypatch, capsys):
    import strongpar.cli as cli
    from strongpar.finite_verify import CheckResult
    monkeypatch.setattr(cli, "verify_explicit_commutator",
                        lambda p, m: CheckResult("explicit_commutator", {"p": p, "m": m}, "exhaustive", False))
    code, out = run(["verify", "comms", "--prime", "3", "--level", "1"], capsys)
    assert code == 1 and out["status"] == "failed" and not out["all_passed"]
