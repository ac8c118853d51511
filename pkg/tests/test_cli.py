import pytest

from cmc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_eval(capsys):
    code, out = run(capsys, "eval", "uniform", "01")
    assert (code, out) == (0, "1/4\n")


def test_encode_decode_round_trip(capsys):
    code, out = run(capsys, "encode", "uniform", "10")
    assert code == 0 and out == "coded(uniform; 10)\n"
    code, out = run(capsys, "decode", out.strip(), "2")
    assert (code, out) == (0, "10\n")


def test_gap(capsys):
    code, out = run(capsys, "gap", "dirac(0)", "uniform", "2")
    assert (code, out) == (0, "3/4\n")


def test_certify_success(capsys):
    code, out = run(capsys, "certify", "dirac(0)", "uniform", "1/20", "10")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "result: certificate"
    assert "depth: 5" in lines
    assert "mu_mass: 0" in lines


def test_certify_inconclusive(capsys):
    code, out = run(capsys, "certify", "uniform", "product(const(1/3))", "1/20", "10")
    assert code == 1
    assert out.startswith("result: inconclusive\n")
    assert "best_gap:" in out and "at_depth:" in out


def test_modulus(capsys):
    code, out = run(capsys, "modulus", "uniform", "1/4", "32")
    assert (code, out) == (0, "result: modulus\nn: 3\n")
    code, out = run(capsys, "modulus", "dirac(0)", "1/2", "8")
    assert code == 0 and out.startswith("result: atom-witness\n")


def test_refute_ac(capsys):
    code, out = run(capsys, "refute-ac", "dirac(0)", "uniform", "1/2", "2", "20")
    assert code == 0
    assert out.startswith("result: refutation\n")
    assert out.count("stage:") == 2
    assert "  delta: 1/4" in out
    code, out = run(capsys, "refute-ac", "uniform", "uniform", "3/4", "1", "8")
    assert code == 1


def test_ei_sum_and_classify(capsys):
    code, out = run(capsys, "ei-sum", "", "1*", "4")
    assert (code, out) == (0, "25/12\n")
    code, out = run(capsys, "classify", "0101", "01", "1000")
    assert code == 0 and out.startswith("result: equivalent\n")
    code, out = run(capsys, "classify", "", "1*", "10000")
    assert code == 0 and out.startswith("result: orthogonal\n")
    code, out = run(capsys, "classify", "", "1", "100")
    assert code == 0 and out == "result: equivalent\nlast_diff: 0\n"
    # sparse infinite differences: partial sum cannot reach the target in budget
    code, out = run(capsys, "classify", "", "(000000000001)*", "100")
    assert code == 1 and out.startswith("result: inconclusive\n")


def test_hellinger(capsys):
    code, out = run(capsys, "hellinger", "const(1/4)", "const(1/4)", "5", "10")
    assert code == 0
    keys = [line.split(":")[0] for line in out.splitlines()]
    assert keys == ["N", "lo", "hi", "precision_bits"]


def test_metric(capsys):
    code, out = run(capsys, "metric", "uniform", "uniform", "10")
    assert (code, out) == (0, "lo: 0\nhi: 1/1024\n")


def test_family_build(capsys):
    code, out = run(capsys, "family", "build", "2", "9/20", "16")
    assert code == 0
    assert out.startswith("result: family\ncount: 2\n")
    assert out.count("member:") == 2
    assert out.count("certificate:") == 1
    code, out = run(capsys, "family", "build", "2", "1/100", "10")
    assert code == 1
    assert out.startswith("result: partial\n")


def test_syntax_error_document(capsys):
    code, out = run(capsys, "eval", "unifrm", "01")
    assert code == 2
    lines = out.splitlines()
    assert lines[0] == "error: syntax-error"
    assert lines[1] == "line: 1" and lines[2] == "column: 1"


def test_semantic_error_exit(capsys):
    code, out = run(capsys, "eval", "finite(0: 2/3, 1: 1/2)", "0")
    assert code == 2
    assert out.startswith("error: semantic-error\n")


def test_not_in_coding_domain_exit(capsys):
    code, out = run(capsys, "decode", "uniform", "1")
    assert code == 2
    lines = out.splitlines()
    assert lines[0] == "error: not-in-coding-domain"
    assert "index: 0" in lines


def test_budget_exceeded_exit(capsys):
    code, out = run(capsys, "decode", "dirac(0)", "1", "--budget", "8")
    assert code == 2
    assert out.startswith("error: budget-exceeded\n")


def test_at_file_input(tmp_path, capsys):
    p = tmp_path / "m.dsl"
    p.write_text("convex(1/2: uniform, 1/2: dirac(0))")
    code, out = run(capsys, "eval", f"@{p}", "0")
    assert (code, out) == (0, "3/4\n")


def test_env_budget(monkeypatch, capsys):
    monkeypatch.setenv("CMC_DEFAULT_BUDGET", "4")
    code, out = run(capsys, "decode", "dirac(0)", "1")
    assert code == 2 and "within 4 levels" in out
    monkeypatch.setenv("CMC_DEFAULT_BUDGET", "-3")
    code, out = run(capsys, "decode", "uniform", "0")
    assert code == 2 and out.startswith("error: invalid-argument\n")


def test_usage_error_exit():
    with pytest.raises(SystemExit) as exc:
        main(["eval"])
    assert exc.value.code == 2


def test_output_deterministic(capsys):
    first = run(capsys, "certify", "dirac(0)", "uniform", "1/20", "10")
    second = run(capsys, "certify", "dirac(0)", "uniform", "1/20", "10")
    assert first == second
