"""Command-line surface: outputs, exit codes, JSON round trips."""

import json

import pytest

from siegelkappa.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCohen:
    def test_reference_row(self, capsys):
        code, out, _ = run(capsys, "cohen", "--r", "2", "--max-N", "20", "--json")
        assert code == 0
        rows = {r["N"]: r["minus120H"] for r in json.loads(out)["rows"]}
        assert rows == {0: "-1", 1: "10", 4: "70", 5: "48", 8: "120", 9: "250",
                        12: "240", 13: "240", 16: "550", 17: "480", 20: "528"}

    def test_text_mode(self, capsys):
        code, out, _ = run(capsys, "cohen", "--r", "2", "--max-N", "4")
        assert code == 0
        assert "-120H = 70" in out


class TestSeries:
    def test_delta_text(self, capsys):
        code, out, _ = run(capsys, "series", "--name", "delta", "--prec", "4")
        assert code == 0
        assert out.strip() == "1 * q^(1) + -24 * q^(2) + 252 * q^(3) + O(q^(4))"

    def test_f1_json(self, capsys):
        code, out, _ = run(capsys, "series", "--name", "f1", "--prec", "3", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["den"] == 4
        assert data["terms"][0] == {"exp": "-1/4", "coeff": "1"}


class TestLvalue:
    def test_zeta_minus_one(self, capsys):
        code, out, _ = run(capsys, "lvalue", "--d", "1", "--s", "-1", "--digits", "20")
        assert code == 0
        assert "-0.0833333333333333333" in out

    def test_deriv_json_fields(self, capsys):
        code, out, _ = run(capsys, "lvalue", "--d", "5", "--s", "-1", "--deriv",
                           "--digits", "25", "--json")
        assert code == 0
        data = json.loads(out)
        assert set(data) >= {"value", "deriv", "logderiv", "err", "digits"}
        assert data["value"].startswith("-0.4000000000")

    def test_non_fundamental_is_computation_error(self, capsys):
        code, out, _ = run(capsys, "lvalue", "--d", "7", "--s", "-1", "--json")
        assert code == 1
        data = json.loads(out)
        assert data["error"] == "NotFundamental"


class TestKappaMu:
    def test_breakdown_json(self, capsys):
        code, out, _ = run(capsys, "kappa-mu", "--mu", "0", "--m", "1",
                           "--digits", "30", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["breakdown"]["prefactor_120H"] == "-70"
        assert data["breakdown"]["prime_terms"] == [
            {"p": 2, "log_coeff": "1", "value": data["breakdown"]["prime_terms"][0]["value"]}]

    def test_with_v(self, capsys):
        code, out, _ = run(capsys, "kappa-mu", "--mu", "1", "--m", "1/4",
                           "--v", "2", "--digits", "20", "--json")
        assert code == 0
        assert "b_at_v" in json.loads(out)


class TestBorcherds:
    def test_t0_report(self, capsys):
        code, out, _ = run(capsys, "borcherds", "--t", "0", "--digits", "25")
        assert code == 0
        assert "weight of Psi^2: 10" in out
        assert "1*Z(1/4,phi_1)" in out
        assert "closed form" in out
        assert "-13/11 log 2" in out

    def test_json_round_trip_through_input_file(self, capsys, tmp_path):
        from siegelkappa.jacobi import build_vv_form, vv_form_to_json_dict
        path = tmp_path / "form.json"
        path.write_text(json.dumps(vv_form_to_json_dict(build_vv_form(12))))
        code1, out1, _ = run(capsys, "borcherds", "--t", "0", "--json")
        code2, out2, _ = run(capsys, "borcherds", "--input", str(path), "--json")
        assert code1 == code2 == 0
        d1, d2 = json.loads(out1), json.loads(out2)
        for key in ("kappa", "weight_psi_squared", "divisor", "degree_check",
                    "principal_part"):
            assert d1[key] == d2[key]

    def test_degree_violation_exit_code(self, capsys, tmp_path):
        bad = {
            "weight": "-1/2",
            "components": [
                {"coset": 0, "series": {"den": 4, "lo": "0", "prec": "3",
                                        "terms": [{"exp": "0", "coeff": "9"}]}},
                {"coset": 1, "series": {"den": 4, "lo": "-1/4", "prec": "3",
                                        "terms": [{"exp": "-1/4", "coeff": "1"}]}},
            ],
        }
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(bad))
        code, out, _ = run(capsys, "borcherds", "--input", str(path), "--json")
        assert code == 1
        assert json.loads(out)["error"] == "DegreeIdentityViolation"


class TestUsageAndCheck:
    def test_usage_error_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["series", "--name", "nonsense"])
        assert exc.value.code == 2

    def test_bad_flag_value_is_computation_error(self, capsys):
        code, _, err = run(capsys, "lvalue", "--d", "5", "--s", "-1", "--digits", "5")
        assert code == 1
        assert "digits" in err

    def test_check_runs_and_reports(self, capsys):
        # digits floor keeps this affordable; the known-red criterion 11 makes
        # the exit code 1 by contract (nonzero on any failure)
        code1, out1, _ = run(capsys, "check", "--digits", "15", "--json")
        data = json.loads(out1)
        per = {r["criterion"]: r["passed"] for r in data["results"]}
        assert per[1] and per[3] and per[8] and per[10]
        assert not per[11]
        assert data["all_passed"] is False
        assert code1 == 1
        # idempotent: a second run reports identically
        code2, out2, _ = run(capsys, "check", "--digits", "15", "--json")
        assert code2 == code1 and out2 == out1
