"""CLI contract: outputs, determinism, exit codes."""

import json

from opstats.checks import CheckResult
from opstats.cli import _emit_results, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_stats_worked_example(capsys):
    code, out, _ = run(capsys, "stats", "6,8/5/1,4,7/3,9/2")
    assert code == 0
    assert "ros_i:  4 4 | 3 | 0 2 2 | 1 1 | 0" in out
    assert "los_i:  0 0 | 0 | 0 0 2 | 1 3 | 1" in out
    assert "rsb_i:  2 1 | 2 | 0 1 1 | 0 0 | 0" in out
    assert "perm=54132" in out
    assert "bInv=4" in out and "bMaj=5" in out
    assert "inv=8" in out and "cinv=2" in out


def test_bij_both_directions(capsys):
    code, out, _ = run(capsys, "bij", "--inverse", "6/3,5,7/1,4,10/9/2,8")
    assert code == 0
    assert out.strip() == "NNNOOESSES\t1,2,1,2,1,1,1,2,4,1"
    code, out, _ = run(
        capsys, "bij", "--forward", "NNNOOESSES", "--xi", "1,2,1,2,1,1,1,2,4,1"
    )
    assert code == 0
    assert out.strip() == "6/3,5,7/1,4,10/9/2,8"


def test_bij_usage_errors(capsys):
    code, _, err = run(capsys, "bij", "--forward", "NN")
    assert code == 2 and "xi" in err
    code, _, err = run(capsys, "bij", "--forward", "NN", "--xi", "1,9")
    assert code == 2


def test_enum_and_counts(capsys):
    code, out, _ = run(capsys, "enum", "--n", "2", "--k", "2")
    assert code == 0
    assert out.splitlines() == ["2/1", "1/2"]  # new singleton sweeps gaps left to right
    code, out, _ = run(capsys, "enum", "--n", "4", "--count-only")
    assert code == 0
    assert out.splitlines()[-1] == "total\t75"
    code, out, _ = run(capsys, "enum", "--n", "4", "--k", "2", "--count-only",
                       "--format", "records")
    assert json.loads(out.splitlines()[0]) == {"n": 4, "k": 2, "count": 14}
    code, out, _ = run(capsys, "enum", "--n", "4", "--k", "2", "--inv-free",
                       "--count-only")
    assert out.strip() == "2\t7"
    code, out, _ = run(capsys, "enum", "--n", "3", "--k", "2", "--inv-free")
    assert sorted(out.splitlines()) == ["1,2/3", "1,3/2", "1/2,3"]


def test_enum_bound_exit_code(capsys):
    code, _, err = run(capsys, "enum", "--n", "11")
    assert code == 2
    assert "force-large" in err


def test_dist(capsys):
    code, out, _ = run(capsys, "dist", "--n", "3", "--k", "2", "--stat", "mak+bInv")
    assert code == 0
    assert out.strip() == "2*q + 3*q^2 + 1*q^3"
    code, out, err = run(capsys, "dist", "--n", "3", "--k", "2", "--stat", "inv-cinv")
    assert code == 0
    assert "negative Laurent exponents" in err


def test_qnum_table(capsys):
    code, out, _ = run(capsys, "qnum", "stirling", "--n-max", "3")
    assert code == 0
    assert "3\t2\t2*q + 1*q^2" in out.splitlines()
    code, out, _ = run(capsys, "qnum", "eulerian", "--n-max", "3")
    assert "3\t1\t2*q + 2*q^2" in out.splitlines()


def test_gf_and_det(capsys):
    code, out, _ = run(capsys, "gf", "f", "--k", "1", "--order", "3")
    assert code == 0
    assert out.splitlines() == ["a^0\t0", "a^1\t1", "a^2\t1", "a^3\t1"]
    code, out, _ = run(capsys, "det", "P", "--n", "1")
    assert out.strip() == "1*a"
    code, _, err = run(capsys, "det", "Pk", "--n", "2")
    assert code == 2 and "--k" in err


def test_verify_pass_and_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "zz", "--n-max", "4")
    assert code == 0
    lines = out.splitlines()
    assert all(line.startswith("PASS zz") for line in lines)
    assert len(lines) == 10
    code, _, err = run(capsys, "verify", "nosuch")
    assert code == 2
    assert "unknown check" in err


def test_verify_records_format(capsys):
    code, out, _ = run(capsys, "verify", "minor1", "--n-max", "2",
                       "--format", "records")
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert recs[0]["check"] == "minor1" and recs[0]["ok"] is True


def test_conjecture_report(capsys):
    code, out, err = run(capsys, "conjecture", "--n-max", "3")
    assert code == 0
    assert "EMPIRICAL" in err
    lines = out.splitlines()
    assert all(line.startswith("MATCH") for line in lines)
    assert any("stat=mak+bMaj" in line for line in lines)


def test_emit_results_failure_exit():
    fake = [CheckResult("demo", "n=1", True), CheckResult("demo", "n=2", False, "boom")]
    assert _emit_results(fake, "table") == 1
    assert _emit_results(fake[:1], "table") == 0


def test_determinism(capsys):
    code1, out1, _ = run(capsys, "gf", "Q", "--k", "2", "--order", "4")
    code2, out2, _ = run(capsys, "gf", "Q", "--k", "2", "--order", "4")
    assert code1 == code2 == 0
    assert out1 == out2
    code1, out1, _ = run(capsys, "enum", "--n", "5")
    code2, out2, _ = run(capsys, "enum", "--n", "5")
    assert out1 == out2


def test_parse_error_exit(capsys):
    code, _, err = run(capsys, "stats", "1/1,2")
    assert code == 2
    assert "error" in err


def test_all_contract_check_names_exist():
    from opstats.checks import CHECKS

    contract = (
        "minor1", "minor2", "main1", "key", "eigen", "conj",
        "thm24", "thm25", "cor39", "zz", "prop22", "lemma310",
        "conjecture-bmaj",
    )
    for name in contract:
        assert name in CHECKS, name


def test_gf_golden_bytes(capsys):
    # canonical term order is a byte-level contract
    code, out, _ = run(capsys, "gf", "f", "--k", "2", "--order", "3")
    assert code == 0
    assert out == (
        "a^0\t0\n"
        "a^1\t0\n"
        "a^2\t1*x*t + 1*x*u\n"
        "a^3\t1*x*t + 1*x*u + 1*x^2*t + 1*x^2*u + 1*x*y*t + 1*x*y*u\n"
    )
    code, out, _ = run(capsys, "gf", "Q", "--k", "2", "--order", "2")
    assert out.splitlines()[-1] == "a^2\t1*t1*t5 + 1*t1*t6"
