"""CLI behavior: grammar, exit codes, output formats, replay."""

import json
import math
import subprocess
import sys

import pytest

from protincome import check_consistency_fraction, jsonio
from protincome.cli import main

KA3 = '{"family":"kolm_atkinson","eta":3}'
KA2 = '{"family":"kolm_atkinson","eta":2}'
LINEAR = '{"family":"kolm_pollak","alpha":0}'


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- protect -------------------------------------------------------------------


def test_protect_json(capsys):
    code, out, _ = run(capsys, ["protect", "--family", KA3, "--y", "100", "--json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["protected_income"] == pytest.approx(70.71067811865476, abs=1e-9)
    assert payload["method"] == "closed_form"
    assert payload["positive"] is True


def test_protect_human(capsys):
    code, out, _ = run(capsys, ["protect", "--family", KA3, "--y", "100"])
    assert code == 0
    assert "protected_income = 70.71067811865476" in out


def test_protect_rivals(capsys):
    code, out, _ = run(
        capsys, ["protect", "--family", KA2, "--y", "99", "--rivals", "2", "--json"]
    )
    assert code == 0
    assert json.loads(out)["protected_income"] == pytest.approx(33.0, rel=1e-12)


def test_protect_tradeoff_point(capsys):
    code, out, _ = run(
        capsys, ["protect", "--family", KA2, "--y", "100", "--y2", "200", "--json"]
    )
    assert code == 0
    assert json.loads(out)["tradeoff_income"] == pytest.approx(200.0 / 3.0, rel=1e-12)


def test_protect_tradeoff_limit_marker(capsys):
    code, out, _ = run(
        capsys, ["protect", "--family", KA2, "--y", "100", "--y2", "inf", "--json"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["y2"] == "inf"
    assert payload["tradeoff_income"] == pytest.approx(50.0, rel=1e-12)


def test_protect_domain_error_exit_1(capsys):
    code, _, err = run(capsys, ["protect", "--family", LINEAR, "--y", "100", "--y2", "250"])
    assert code == 1
    assert "f(y2)" in err


def test_floor_violation_names_the_bound(capsys):
    fam = '{"family":"cpie","gamma":2,"c":5}'
    code, _, err = run(capsys, ["protect", "--family", fam, "--y", "4"])
    assert code == 1
    assert "floor" in err


# -- eval ----------------------------------------------------------------------


def test_eval_json(capsys):
    code, out, _ = run(capsys, ["eval", "--family", KA2, "--dist", "50,200", "--json"])
    assert code == 0
    assert out.strip() == '{"ede":80.0,"welfare":-0.025}'


def test_eval_human(capsys):
    code, out, _ = run(capsys, ["eval", "--family", KA2, "--dist", "50,200"])
    assert code == 0
    assert "ede = 80.0" in out


def test_eval_singular_member(capsys):
    code, out, _ = run(capsys, ["eval", "--family", KA2, "--dist", "0,100", "--json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["welfare"] == "-inf"
    assert payload["ede"] == 0.0


def test_eval_dist_from_file(tmp_path, capsys):
    p = tmp_path / "incomes.csv"
    p.write_text("50\n200\n")
    code, out, _ = run(capsys, ["eval", "--family", KA2, "--dist", str(p), "--json"])
    assert code == 0
    assert json.loads(out)["ede"] == pytest.approx(80.0, abs=1e-9)


# -- curve ----------------------------------------------------------------------


def test_curve_csv_header_and_rows(capsys):
    code, out, _ = run(
        capsys,
        ["curve", "--family", KA2, "--y-min", "1", "--y-max", "100", "--points", "5"],
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "y,protected_income,collateral_damage,relative_damage"
    assert len(lines) == 6
    first = [float(t) for t in lines[1].split(",")]
    assert first == [1.0, 0.5, 0.5, 0.5]


def test_curve_json(capsys):
    code, out, _ = run(
        capsys,
        ["curve", "--family", KA2, "--y-min", "1", "--y-max", "100",
         "--points", "5", "--json"],
    )
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 5
    assert rows[-1]["y"] == pytest.approx(100.0)
    assert rows[-1]["protected_income"] == pytest.approx(50.0)


def test_curve_out_file(tmp_path, capsys):
    target = tmp_path / "curve.csv"
    code, out, _ = run(
        capsys,
        ["curve", "--family", KA2, "--y-min", "1", "--y-max", "10",
         "--points", "3", "--out", str(target)],
    )
    assert code == 0
    assert out == ""
    text = target.read_text()
    assert text.startswith("y,protected_income")
    assert text.endswith("\n")


def test_curve_bad_range_exit_1(capsys):
    code, _, err = run(
        capsys, ["curve", "--family", KA2, "--y-min", "10", "--y-max", "1"]
    )
    assert code == 1
    assert "must exceed" in err


# -- parse errors ------------------------------------------------------------------


def test_malformed_family_is_a_parse_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["protect", "--family", "{not json", "--y", "100"])
    assert exc.value.code == 2


def test_missing_required_argument(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["protect", "--family", KA3])
    assert exc.value.code == 2


def test_unknown_family_is_a_domain_error(capsys):
    code, _, err = run(capsys, ["protect", "--family", '{"family":"nope"}', "--y", "1"])
    assert code == 1
    assert "unknown family" in err


def test_bad_parameter_bound_exit_1(capsys):
    bad = '{"family":"kolm_atkinson","eta":-1}'
    code, _, err = run(capsys, ["protect", "--family", bad, "--y", "1"])
    assert code == 1
    assert "eta" in err


# -- elicit -----------------------------------------------------------------------


TRANSCRIPT = [
    {"kind": "protected_fraction", "parameters": {"fraction": 0.5}},
    {"kind": "protected_fraction_two_rivals", "parameters": {"fraction": 1.0 / 3.0}},
]


def test_elicit_transcript_json_bytes(tmp_path, capsys):
    p = tmp_path / "answers.json"
    p.write_text(json.dumps(TRANSCRIPT))
    code, out, _ = run(capsys, ["elicit", "--transcript", str(p), "--json"])
    assert code == 0
    expected = jsonio.dumps(
        jsonio.preference_to_dict(check_consistency_fraction(0.5, 1.0 / 3.0))
    )
    assert out.strip() == expected


def test_elicit_transcript_human(tmp_path, capsys):
    p = tmp_path / "answers.json"
    p.write_text(json.dumps(TRANSCRIPT))
    code, out, _ = run(capsys, ["elicit", "--transcript", str(p)])
    assert code == 0
    assert "coefficient = 2.0" in out
    assert "consistent = True" in out


def test_elicit_incomplete_transcript_exit_1(tmp_path, capsys):
    p = tmp_path / "answers.json"
    p.write_text(json.dumps(TRANSCRIPT[:1]))
    code, _, err = run(capsys, ["elicit", "--transcript", str(p)])
    assert code == 1
    assert "cross-check" in err


def test_elicit_stdin_and_interactive_subprocess(tmp_path):
    # transcript from stdin
    proc = subprocess.run(
        [sys.executable, "-m", "protincome", "elicit", "--transcript", "-", "--json"],
        input=json.dumps(TRANSCRIPT),
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["coefficient"] == 2.0

    # interactive prompts, including an aside and one rejected line
    lines = "\n".join(
        [
            "leaky_bucket 2 8",
            "gibberish",
            "constant_damage 6.931471805599453",
            "constant_damage_two_rivals 10.986122886681098",
        ]
    )
    proc = subprocess.run(
        [sys.executable, "-m", "protincome", "elicit"],
        input=lines + "\n",
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "implied coefficient 3.0" in proc.stdout
    assert "unknown answer kind" in proc.stderr
    assert "family = kolm_pollak" in proc.stdout
    coeff_line = [l for l in proc.stdout.splitlines() if l.startswith("coefficient")][0]
    assert float(coeff_line.split("=")[1]) == pytest.approx(0.1, rel=1e-12)


# -- verify ------------------------------------------------------------------------


@pytest.mark.parametrize("prop", list(range(1, 9)))
def test_verify_all_props_pass_by_default(capsys, prop):
    code, out, _ = run(capsys, ["verify", "--prop", str(prop), "--json"])
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_verify_spec_params_form(capsys):
    code, out, _ = run(
        capsys,
        ["verify", "--prop", "8", "--params", '{"family":"kolm_pollak","alpha":1}'],
    )
    assert code == 0
    assert "invariance-translation" in out
    assert "pass              True" in out


def test_verify_failure_exits_nonzero(capsys, monkeypatch):
    from protincome.charlab import VerificationReport
    import protincome.cli as climod

    bad = VerificationReport(
        proposition="stub", grid=(), max_abs_residual=1.0, tolerance=0.0, passed=False
    )
    monkeypatch.setattr(climod, "_run_verification", lambda prop, params: bad)
    code, out, _ = run(capsys, ["verify", "--prop", "2"])
    assert code == 1
    assert "pass              False" in out


def test_verify_prop_out_of_range_is_parse_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--prop", "9"])
    assert exc.value.code == 2


def test_verify_prop8_rejects_tabulated(capsys):
    # no invariance suite for tabulated families
    params = json.dumps(
        {
            "family": "tabulated",
            "law": {"kind": "fraction", "fraction": 0.5},
            "profile": {
                "positions": [0.0, math.log(2.0)],
                "values": [0.0, -math.log(2.0)],
                "decrement": math.log(2.0),
            },
        }
    )
    code, _, err = run(capsys, ["verify", "--prop", "8", "--params", params])
    assert code == 1
    assert "no invariance suite" in err


# -- entry point --------------------------------------------------------------------


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "protincome", "eval", "--family", KA2,
         "--dist", "50,200", "--json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == '{"ede":80.0,"welfare":-0.025}'
