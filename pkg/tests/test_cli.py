import json

import pytest

from fqumbral.cli import main
from fqumbral.gf import field_from_q
from fqumbral.polyrat import parse_ratfn


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, (json.loads(out) if out.strip() else None), err


def test_basic_example2_rows(capsys):
    code, data, _ = run_json(capsys, "basic", "--q", "2", "--preset", "example2", "--n", "4")
    assert code == 0 and data["schema"] == 1
    F = field_from_q(2)
    for row in data["rows"][1:]:
        n = row["n"]
        want = ["0"] * (n - 1) + ["1", "1"]  # t^(2^n) - t^(2^(n-1)) in characteristic 2
        assert row["Q_coeffs"] == want
        for s in row["P_coeffs"]:
            parse_ratfn(s, F)


def test_basic_carlitz_matches_carlitz_table(capsys):
    _, basic, _ = run_json(capsys, "basic", "--q", "2", "--preset", "carlitz", "--n", "4")
    _, table, _ = run_json(capsys, "carlitz", "--q", "2", "--n", "4")
    assert [r["Q_coeffs"] for r in basic["rows"]] == [r["f_coeffs"] for r in table["rows"]]
    assert table["rows"][1]["bracket"] == "x^2 + x"


def test_zero_sigma_exit_3(capsys, tmp_path):
    f = tmp_path / "zero.json"
    f.write_text('["0"]')
    code, out, err = run(capsys, "basic", "--q", "2", "--sigma", str(f))
    assert code == 3 and "delta operator" in err


def test_verify_all_exit_0(capsys):
    code, data, _ = run_json(capsys, "verify", "all", "--q", "2", "--n", "5", "--terms", "4", "--seed", "7")
    assert code == 0 and data["status"] == "pass"


def test_verify_gekeler_q3(capsys):
    code, data, _ = run_json(capsys, "verify", "gekeler", "--q", "3", "--n", "8")
    assert code == 0


@pytest.mark.parametrize("suite", ["kbinomial", "taylor", "gekeler", "orthonormal", "genfun", "module", "all"])
def test_negative_control_exit_1(capsys, suite):
    code, data, _ = run_json(capsys, "verify", suite, "--q", "2", "--n", "4", "--perturb")
    assert code == 1
    assert data["status"] == "fail" and data["first_failure"]["name"]


def test_verify_output_is_deterministic(capsys):
    args = ("verify", "all", "--q", "3", "--n", "4", "--seed", "11")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b


def test_expand_t_q(capsys):
    code, data, _ = run_json(capsys, "expand", "--q", "2", "--preset", "carlitz",
                             "--poly", '[{"j": 1, "coeff": "1"}]')
    assert code == 0
    assert data["psi"] == ["1", "x^2 + x"] and data["norm_exponent"] == 0
    assert data["psi_agrees_with_triangular_solve"]


def test_expand_own_sequence_member(capsys):
    code, data, _ = run_json(capsys, "expand", "--q", "2", "--preset", "laguerre", "--Q", "3")
    assert code == 0 and data["psi"] == ["0", "0", "0", "1"]


def test_eval_exp_at_x2(capsys):
    code, data, _ = run_json(capsys, "eval", "--q", "2", "--preset", "carlitz", "--point", "x^2", "--prec", "16")
    assert code == 0 and data["valuation"] == 2 and data["prec"] == 16


def test_eval_divergent_and_bad_input(capsys):
    assert run(capsys, "eval", "--q", "2", "--point", "x", "--prec", "8")[0] == 2
    assert run(capsys, "eval", "--q", "2", "--point", "x^(-1)", "--prec", "8")[0] == 2
    assert run(capsys, "carlitz", "--q", "6")[0] == 2
    assert run(capsys, "carlitz", "--q", "4", "--nu", "3")[0] == 2
    assert run(capsys, "expand", "--q", "2", "--poly", "not json")[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["verify", "nonsense"])
    assert e.value.code == 2


def test_genfun_checks(capsys):
    for check in ("inverse", "fixedpoint", "identity", "valuations"):
        code, data, _ = run_json(capsys, "genfun", "--q", "3", "--preset", "laguerre",
                                 "--terms", "4", "--check", check)
        assert code == 0, check
        code, _, _ = run(capsys, "genfun", "--q", "3", "--preset", "laguerre",
                         "--terms", "4", "--check", check, "--perturb")
        assert code == 1, check


def test_text_format_and_out_file(capsys, tmp_path):
    out = tmp_path / "t.txt"
    code, stdout, _ = run(capsys, "carlitz", "--q", "3", "--n", "2", "--format", "text", "--out", str(out))
    assert code == 0 and stdout == ""
    assert out.read_text().startswith("Carlitz table, q = 3")
