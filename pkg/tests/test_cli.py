"""End-to-end tests for the command-line interface."""

import csv
import io
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from tailsum import ParetoMarginal, gumbel_pickands, var_expansion_ev
from tailsum.cli import main

HEADER = "abscissa,first_order,expansion,mc_point,mc_stderr,case_label,diagnostics"


def _rows(capsys):
    out = capsys.readouterr().out
    return list(csv.reader(io.StringIO(out)))


# ---------------------------------------------------------------------------
# tailprob / var


def test_tailprob_stdout_csv_contract(capsys):
    rc = main(
        [
            "tailprob",
            "--alpha", "0.8", "--family", "gumbel", "--phi", "10",
            "--seed", "1", "--n", "2000", "--points", "4",
        ]
    )
    assert rc == 0
    rows = _rows(capsys)
    assert ",".join(rows[0]) == HEADER
    assert len(rows) == 1 + 4
    for row in rows[1:]:
        assert len(row) == 7
        float(row[0]), float(row[1]), float(row[2])
        assert row[5] == "C1\\(C2∩C3)"
        assert "candidates:" in row[6]


def test_var_csv_values_match_library(capsys):
    rc = main(
        [
            "var",
            "--alpha", "0.8", "--family", "gumbel", "--phi", "10",
            "--seed", "1", "--n", "2000", "--q", "0.99,0.999",
        ]
    )
    assert rc == 0
    rows = _rows(capsys)
    assert ",".join(rows[0]) == HEADER
    m = ParetoMarginal(0.8, 1.0)
    p = gumbel_pickands(10.0)
    for row, q in zip(rows[1:], (0.99, 0.999)):
        assert float(row[0]) == q
        # 17 significant digits reproduce the double exactly
        assert float(row[2]) == var_expansion_ev(m, p, q).value


def test_explicit_threshold_grid(capsys):
    rc = main(
        ["tailprob", "--alpha", "2", "--family", "independence",
         "--seed", "3", "--n", "1000", "--t", "50,100"]
    )
    assert rc == 0
    rows = _rows(capsys)
    assert [float(r[0]) for r in rows[1:]] == [50.0, 100.0]


def test_csv_file_output_and_determinism(tmp_path):
    args = [
        "var", "--alpha", "2", "--family", "independence",
        "--seed", "5", "--n", "1000", "--q", "0.99",
    ]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out-csv", str(a)]) == 0
    assert main(args + ["--out-csv", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_svg_output_is_wellformed(tmp_path):
    svg = tmp_path / "chart.svg"
    rc = main(
        ["tailprob", "--alpha", "0.8", "--family", "independence",
         "--seed", "2", "--n", "1000", "--points", "4",
         "--out-csv", str(tmp_path / "o.csv"), "--out-svg", str(svg)]
    )
    assert rc == 0
    root = ET.parse(svg).getroot()
    assert root.tag.endswith("svg")


# ---------------------------------------------------------------------------
# exit codes


def test_boundary_alpha_exits_3(capsys):
    rc = main(["var", "--alpha", "1", "--family", "independence",
               "--seed", "1", "--n", "1000"])
    assert rc == 3
    assert "boundary" in capsys.readouterr().err.lower()


def test_usage_errors_exit_2(tmp_path, capsys):
    # families with no expansion route
    assert main(["tailprob", "--alpha", "0.8", "--family", "comonotone",
                 "--seed", "1", "--n", "1000"]) == 2
    assert main(["var", "--alpha", "0.8", "--family", "log-interaction",
                 "--sigma", "0.5", "--seed", "1", "--n", "1000"]) == 2
    # missing seed
    assert main(["tailprob", "--alpha", "0.8", "--family", "independence",
                 "--n", "1000"]) == 2
    # sample size below the floor
    assert main(["tailprob", "--alpha", "0.8", "--family", "independence",
                 "--seed", "1", "--n", "500"]) == 2
    # unknown configuration key
    bad = tmp_path / "bad.cfg"
    bad.write_text("marginal.alpha = 0.8\nnot.a.key = 1\n")
    assert main(["tailprob", "--config", str(bad), "--family", "independence",
                 "--seed", "1", "--n", "1000"]) == 2
    # unreadable configuration file
    assert main(["tailprob", "--config", str(tmp_path / "missing.cfg"),
                 "--family", "independence", "--seed", "1", "--n", "1000"]) == 2
    capsys.readouterr()


def test_argparse_usage_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_config_file_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "marginal.alpha = 2.0\n"
        "copula.family = independence\n"
        "mc.n = 1000\n"
        "mc.seed = 9\n"
        "grid.q = 0.999\n"
    )
    # flag overrides the file value for alpha
    rc = main(["var", "--config", str(cfg), "--alpha", "0.8"])
    assert rc == 0
    rows = _rows(capsys)
    m = ParetoMarginal(0.8, 1.0)
    from tailsum import var_expansion_independence

    assert float(rows[1][2]) == var_expansion_independence(m, 0.999).value


# ---------------------------------------------------------------------------
# check


def test_check_passes_for_independence(capsys):
    rc = main(["check", "--family", "independence"])
    assert rc == 0
    out = capsys.readouterr().out
    for name in ("A2", "A3", "A4", "evcond", "taylor_limit"):
        assert name in out
    assert "pass" in out


def test_check_gumbel_defaults_to_deep_scales(capsys):
    rc = main(["check", "--family", "gumbel", "--phi", "10"])
    assert rc == 0
    capsys.readouterr()


def test_check_counterexample_fails_with_4(tmp_path, capsys):
    csv_path = tmp_path / "evidence.csv"
    rc = main(["check", "--family", "log-interaction", "--sigma", "0.5",
               "--out-csv", str(csv_path)])
    assert rc == 4
    rows = list(csv.reader(csv_path.open()))
    assert rows[0] == ["trial_kappa", "check", "verdict", "final_deviation",
                       "fitted_c", "note"]
    kappas = {row[0] for row in rows[1:]}
    assert len(kappas) == 11  # trial sweep 1.0 .. 2.0
    a2 = [row for row in rows[1:] if row[1] == "A2"]
    assert a2 and all(row[2] == "fail" for row in a2)
    capsys.readouterr()


def test_check_comonotone_inconclusive_warns_but_passes(capsys):
    rc = main(["check", "--family", "comonotone"])
    assert rc == 0
    out = capsys.readouterr().out.lower()
    assert "inconclusive" in out
    assert "warning" in out


def test_check_trial_kappa_flag(capsys):
    rc = main(["check", "--family", "log-interaction", "--sigma", "0.5",
               "--trial-kappa", "1.5"])
    assert rc == 4
    out = capsys.readouterr().out
    assert "1.5" in out


# ---------------------------------------------------------------------------
# reproduce-figures


def test_reproduce_figures_single_phi(tmp_path):
    rc = main(["reproduce-figures", "--phi", "1", "--seed", "7",
               "--n", "2000", "--out-dir", str(tmp_path)])
    assert rc == 0
    for panel in "abcd":
        assert (tmp_path / f"figure1-{panel}.csv").exists()
        assert (tmp_path / f"figure1-{panel}.svg").exists()
    assert not (tmp_path / "figure2-a.csv").exists()


def test_reproduce_figures_both_and_deterministic(tmp_path):
    d1, d2 = tmp_path / "r1", tmp_path / "r2"
    for d in (d1, d2):
        rc = main(["reproduce-figures", "--seed", "7", "--n", "2000",
                   "--out-dir", str(d)])
        assert rc == 0
    names = sorted(p.name for p in d1.glob("*.csv"))
    assert names == [f"figure{i}-{p}.csv" for i in (1, 2) for p in "abcd"]
    for name in names:
        assert (d1 / name).read_bytes() == (d2 / name).read_bytes()


# ---------------------------------------------------------------------------
# installed entry point


def test_console_script_help():
    proc = subprocess.run(
        [sys.executable, "-m", "tailsum.cli", "--help"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "tailprob" in proc.stdout
