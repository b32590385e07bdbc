"""Command-line interface: parsing, exit codes, formats, round-trips."""

import json

import numpy as np
import pytest

from besselsix import cli
from besselsix.bessel import CertifiedValue
from besselsix.certify import THEOREM_MAP
from besselsix.core_integrals import core_bound_breakdown
from besselsix.expansions import base_expansion, product_expansion

# Coarse grids so table runs stay fast; table output never consults the
# tail discard budget, so a small R is fine here.
FAST_FLAGS = ["--S", "360", "--R", "3600", "--w-low", "0.03", "--w-high", "0.5"]


# ---------------------------------------------------------------------------
# parsing and validation
# ---------------------------------------------------------------------------


def test_parse_integrate():
    config = cli.parse_args(["integrate", "--variant", "1", "--m", "2", "--n", "9"])
    assert config.command == "integrate"
    assert config.variant == "I1"
    assert (config.m, config.n) == (2, 9)
    assert config.output == "human"
    assert config.workers is None


def test_parse_table_rows():
    config = cli.parse_args(["table", "--rows", "3..5"])
    assert config.rows == (3, 4, 5)
    assert config.csv_path == "-"
    single = cli.parse_args(["table", "--rows", "7"])
    assert single.rows == (7,)


@pytest.mark.parametrize(
    "argv",
    [
        ["integrate", "--variant", "1", "--m", "3", "--n", "5"],  # odd m
        ["integrate", "--variant", "0", "--m", "-2", "--n", "5"],
        ["integrate", "--variant", "0", "--m", "0", "--n", "1"],  # n too small
        ["integrate", "--variant", "0", "--m", "6", "--n", "4"],  # m > n
        ["check-theorem", "--variant", "0", "--m", "1", "--n", "5"],
        ["predict", "--variant", "2", "--m", "0", "--n", "25"],  # bad variant
        ["integrate", "--variant", "0", "--m", "0", "--n", "5", "--frobnicate"],
        ["table", "--rows", "1..5"],
        ["table", "--rows", "18..20"],
        ["table", "--rows", "abc"],
        ["table", "--rows", "5..4"],
        ["expansion", "--which", "j2"],
        ["no-such-command"],
        [],
    ],
)
def test_rejected_command_lines(argv):
    with pytest.raises(cli.UsageError):
        cli.parse_args(argv)


def test_usage_error_exit_code(capsys):
    assert cli.main(["integrate", "--variant", "1", "--m", "3", "--n", "5"]) == 1
    err = capsys.readouterr().err
    assert "usage error" in err
    assert "even" in err


def test_config_rejects_unknown_output():
    with pytest.raises(ValueError):
        cli.RunConfig(command="table", output="xml")


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------


def test_domain_error_exit_code(capsys):
    # The series oracle is only certified out to r = 200.
    assert cli.main(["eval-bessel", "--n", "3", "--r", "500", "--oracle"]) == 3
    assert "domain error" in capsys.readouterr().err


def test_scheme_override_must_keep_panels_integral(capsys):
    code = cli.main(
        ["integrate", "--variant", "0", "--m", "0", "--n", "5", "--R", "70000"]
    )
    assert code == 3
    assert "panels" in capsys.readouterr().err


def test_predict_below_cutoff_is_domain_error(capsys):
    assert cli.main(["predict", "--variant", "0", "--m", "0", "--n", "10"]) == 3
    capsys.readouterr()


def test_check_theorem_pass_exit_zero(capsys):
    code = cli.main(["check-theorem", "--variant", "0", "--m", "2", "--n", "2"])
    out = capsys.readouterr().out
    assert code == 0
    assert "PASS" in out


def test_check_theorem_failure_exit_two(monkeypatch, capsys):
    # No real cell fails, so splice in an enclosure that deviates wildly.
    monkeypatch.setattr(cli, "integral", lambda *a, **k: CertifiedValue(1.0, 0.0))
    code = cli.main(["check-theorem", "--variant", "0", "--m", "2", "--n", "2"])
    out = capsys.readouterr().out
    assert code == 2
    assert "FAIL" in out


# ---------------------------------------------------------------------------
# simple reports
# ---------------------------------------------------------------------------


def test_eval_bessel_output(capsys):
    assert cli.main(["eval-bessel", "--n", "5", "--r", "10", "--oracle"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("J_5(10) = -0.2340615281867936")
    assert "enclosure" in out


def test_closed_form_output(capsys):
    assert cli.main(["closed-form", "--n", "1", "--m", "1", "--k", "2"]) == 0
    out = capsys.readouterr().out
    assert "4/3*sqrtpi^-2" in out
    assert "0.42441318157838759" in out  # 4/(3 pi), 17 significant digits


def test_theorem_map_lists_every_band_and_exception(capsys):
    assert cli.main(["theorem-map"]) == 0
    out = capsys.readouterr().out
    for _, _, _, _, _, constant in THEOREM_MAP:
        assert str(constant) in out
    # Seven small-n cells fall outside the 0.002/0.0015 bands.
    for cell in ["(0, 2)", "(0, 3)", "(0, 4)", "(0, 5)", "(0, 6)"]:
        assert cell in out
    i1_line = next(line for line in out.splitlines() if line.strip().startswith("I1: "))
    assert "(0, 2), (0, 3)" in i1_line
    assert "(0, 4)" not in i1_line


def test_predict_budget_lines(capsys):
    assert cli.main(["predict", "--variant", "0", "--m", "2", "--n", "25", "--budget"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "+/-" in out[0]
    assert len(out) > 1  # itemization follows


# ---------------------------------------------------------------------------
# JSON round-trips
# ---------------------------------------------------------------------------


def test_json_dumps_17_digit_reals():
    text = cli._json_dumps({"x": 0.1, "flag": True, "seq": [1.0 / 3.0, 2]})
    assert "0.10000000000000001" in text
    assert "0.33333333333333331" in text
    assert "true" in text
    assert json.loads(text) == {"x": 0.1, "flag": True, "seq": [1.0 / 3.0, 2]}
    with pytest.raises(TypeError):
        cli._json_dumps({"bad": object()})


@pytest.mark.parametrize("flag,name", [("j0", "J0"), ("j1", "J1")])
def test_expansion_json_round_trip_base(flag, name, capsys):
    assert cli.main(["expansion", "--which", flag, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == 1
    assert cli.expansion_from_payload(payload) == base_expansion(name)


@pytest.mark.parametrize("flag,name", [("j000", "J000"), ("j110", "J110")])
def test_expansion_json_round_trip_product(flag, name, capsys):
    assert cli.main(["expansion", "--which", flag, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert cli.expansion_from_payload(payload) == product_expansion(name)


def test_core_bounds_json_round_trip(capsys):
    assert cli.main(["core-bounds", "--variant", "1", "--m", "2", "--n", "30", "--breakdown"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert cli.breakdown_from_payload(payload) == core_bound_breakdown(2, 30, "I1")


def test_integrate_json_round_trip(capsys):
    assert cli.main(["integrate", "--variant", "0", "--m", "0", "--n", "7", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    value, budget = cli.integrate_from_payload(payload)
    assert payload["schema"] == 1
    assert value.rad == budget.total
    # The rebuilt budget revalidates its own total; mids agree with a fresh run.
    from besselsix.quadrature import integral

    again = integral("I0", 0, 7)
    assert value.mid == again.mid
    assert value.rad == again.rad


# ---------------------------------------------------------------------------
# CSV products
# ---------------------------------------------------------------------------


def test_table_csv_format(capsys):
    assert cli.main(["table", "--rows", "3", *FAST_FLAGS]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,m,top,bottom"
    assert len(lines) == 3  # header + (3,0) + (3,2)
    for line in lines[1:]:
        n, m, top, bottom = line.split(",")
        assert n == "3" and m in ("0", "2")
        # exactly two decimals
        assert len(top.split(".")[1]) == 2
        assert len(bottom.split(".")[1]) == 2


def test_table_csv_to_file(tmp_path, capsys):
    target = tmp_path / "table.csv"
    assert cli.main(["table", "--rows", "3", "--csv", str(target), *FAST_FLAGS]) == 0
    assert capsys.readouterr().out == ""
    content = target.read_text()
    assert content.startswith("n,m,top,bottom\n")
    assert content.endswith("\n")


def test_table_workers_byte_identical(capsys):
    argv = ["table", "--rows", "2..4", *FAST_FLAGS]
    assert cli.main([*argv, "--workers", "1"]) == 0
    one = capsys.readouterr().out
    assert cli.main([*argv, "--workers", "8"]) == 0
    eight = capsys.readouterr().out
    assert one == eight


def test_table_workers_env(monkeypatch, capsys):
    argv = ["table", "--rows", "2", *FAST_FLAGS]
    assert cli.main(argv) == 0
    default = capsys.readouterr().out
    monkeypatch.setenv("BESSELSIX_WORKERS", "6")
    assert cli.main(argv) == 0
    from_env = capsys.readouterr().out
    # flag > env > default; either path must land on identical bytes
    assert cli.main([*argv, "--workers", "2"]) == 0
    from_flag = capsys.readouterr().out
    assert default == from_env == from_flag


def test_ceil2_is_an_upper_bound():
    for x in (0.117295, 0.0267, 0.8489, 1e-12):
        assert cli._ceil2(x) >= x - 1e-9
    assert cli._ceil2(0.1173) == 0.12
    assert cli._ceil2(0.12) == 0.12  # exact two-decimal values stay put


def test_figure1_csv(capsys):
    assert cli.main(["figure1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "r,value"
    assert len(lines) == 2002
    assert lines[1] == "0,0"
    r, value = lines[1001].split(",")
    assert float(r) == 50.0
    assert float(value) != 0.0


def test_figure1_matches_integrand(capsys):
    from besselsix.quadrature import integrand

    assert cli.main(["figure1"]) == 0
    lines = capsys.readouterr().out.splitlines()[1:]
    f = integrand("I1", 6, 9)
    r = np.array([float(line.split(",")[0]) for line in lines])
    got = np.array([float(line.split(",")[1]) for line in lines])
    assert np.array_equal(got, f(r))
