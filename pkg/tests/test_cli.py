"""End-to-end command-line checks: flags, files, exit codes, determinism."""

import csv
import json
from fractions import Fraction
from pathlib import Path

import pytest

from sievelab import cli
from sievelab.arith import InvariantViolation
from sievelab.cli import EXIT_GATE_FAILED, EXIT_OK, EXIT_VIOLATION, PAIR_COLUMNS, format_rational, main

WORKED = ["--poly", "1,0,1", "--m", "4", "--u", "3", "--y", "5"]


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_format_rational():
    assert format_rational(Fraction(45, 4)) == "11.250000"
    assert format_rational(Fraction(1, 3)) == "0.333333"
    assert format_rational(Fraction(2, 3)) == "0.666667"
    assert format_rational(Fraction(5, 10**7)) == "0.000001"  # half rounds up
    assert format_rational(Fraction(0)) == "0.000000"
    assert format_rational(Fraction(1, 8), places=9) == "0.125000000"
    assert format_rational(Fraction(-45, 4)) == "-11.250000"


def test_compare_worked_instance(tmp_path, capsys):
    out = tmp_path / "run"
    assert main(["compare", *WORKED, "--out", str(out)]) == EXIT_OK
    summary = json.loads((out / "summary.json").read_text())
    assert summary["identities_ok"] is True
    assert summary["tables_match"] is True
    assert summary["correction_total"] == 0
    assert summary["totals"]["classical"] == 52
    assert summary["totals"]["improved"] == 27
    assert summary["ratio_improved_over_classical"] == format_rational(Fraction(27, 52))
    assert capsys.readouterr().out.strip() == json.dumps(summary, indent=2, sort_keys=True)

    rows = read_csv(out / "pairs.csv")
    assert list(rows[0].keys()) == PAIR_COLUMNS
    by_key = {(r["b"], r["l"], r["alg"]): r for r in rows}
    classical = by_key[("1", "5", "classical")]
    improved = by_key[("1", "5", "improved")]
    assert classical["C_exact"] == improved["C_exact"] == "10"
    assert improved["D_exact"] == "5"
    total_classical = sum(
        int(classical[c]) for c in ("attempts_rational", "attempts_algebraic_simple", "attempts_algebraic_multiple")
    )
    total_improved = sum(
        int(improved[c]) for c in ("attempts_rational", "attempts_algebraic_simple", "attempts_algebraic_multiple")
    )
    assert total_classical == 10 and total_improved == 5
    assert classical["C_asym"] == "11.250000" and classical["D_asym"] == "6.250000"


def test_compare_runs_are_deterministic(tmp_path):
    args = ["compare", "--random", "--d", "3", "--m", "20", "--u", "200", "--y", "50", "--seed", "7"]
    out1, out2 = tmp_path / "one", tmp_path / "two"
    assert main([*args, "--out", str(out1)]) == EXIT_OK
    assert main([*args, "--out", str(out2)]) == EXIT_OK
    for name in ("pairs.csv", "summary.json"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_compare_rejects_non_monic_poly(capsys):
    # coefficients are ascending, so the last one must be 1
    with pytest.raises(SystemExit) as exc:
        main(["compare", "--poly", "1,0,2", "--m", "4", "--u", "3", "--y", "5"])
    assert exc.value.code == 2
    assert "monic" in capsys.readouterr().err


def test_compare_accepts_constant_term_two(capsys):
    assert main(["compare", "--poly", "2,0,1", "--m", "4", "--u", "3", "--y", "5"]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary["identities_ok"] is True and summary["poly"] == [2, 0, 1]


def test_compare_rejects_poly_and_random_together():
    with pytest.raises(SystemExit) as exc:
        main(["compare", "--poly", "1,0,1", "--random", "--m", "4", "--u", "3", "--y", "5"])
    assert exc.value.code == 2


def test_compare_requires_m():
    with pytest.raises(SystemExit) as exc:
        main(["compare", "--poly", "1,0,1", "--u", "3", "--y", "5"])
    assert exc.value.code == 2


def test_json_row_format(tmp_path):
    out = tmp_path / "run"
    assert main(["compare", *WORKED, "--format", "json", "--out", str(out)]) == EXIT_OK
    rows = json.loads((out / "pairs.json").read_text())
    assert rows and set(rows[0]) == set(PAIR_COLUMNS)


def test_config_file_supplies_flags(tmp_path, capsys):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"poly": [1, 0, 1], "m": 4, "u": 3, "y": 5}))
    assert main(["compare", "--config", str(config)]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary["u"] == 3 and summary["poly"] == [1, 0, 1]


def test_flags_override_config_file(tmp_path, capsys):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"poly": [1, 0, 1], "m": 4, "u": 3, "y": 5}))
    assert main(["compare", "--config", str(config), "--u", "4"]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary["u"] == 4


def test_config_rejects_bad_json(tmp_path):
    config = tmp_path / "broken.json"
    config.write_text("{not json")
    with pytest.raises(SystemExit) as exc:
        main(["compare", "--config", str(config)])
    assert exc.value.code == 2


def test_sieve_subcommand(tmp_path, capsys):
    out = tmp_path / "run"
    assert main(["sieve", *WORKED, "--alg", "improved", "--out", str(out)]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary["alg"] == "improved"
    assert summary["attempts_total"] == 27
    assert summary["attempts_by_phase"]["rational"] > 0
    smooth = read_csv(out / "smooth.csv")
    assert summary["smooth_entries"] == len(smooth)
    for row in smooth:
        assert row["residual"] in ("1", "-1")


def test_sieve_trivial_reports_single_phase(capsys):
    assert main(["sieve", *WORKED, "--alg", "trivial"]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert list(summary["attempts_by_phase"]) == ["total"]


def test_montecarlo_gate_passes(tmp_path, capsys):
    out = tmp_path / "mc"
    code = main(["montecarlo", "--d", "3", "--y", "30", "--trials", "2000", "--seed", "1", "--out", str(out)])
    assert code == EXIT_OK
    summary = json.loads((out / "summary.json").read_text())
    assert 0.0 <= summary["estimate"] <= 1.0
    assert summary["passes_gate"] is True
    assert abs(summary["reference_product"] - 0.6123) < 1e-3
    capsys.readouterr()


def test_montecarlo_matches_enumeration_probability(capsys):
    assert main(["montecarlo", "--d", "2", "--y", "2", "--trials", "5000", "--seed", "1"]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert abs(summary["estimate"] - 0.75) <= 3 * summary["stderr"] + 1e-9


def test_montecarlo_rejects_zero_trials():
    with pytest.raises(SystemExit) as exc:
        main(["montecarlo", "--d", "2", "--y", "2", "--trials", "0"])
    assert exc.value.code == 2


def test_montecarlo_gate_failure_is_exit_one(monkeypatch, capsys):
    # an estimate pinned to zero cannot clear the gate
    def all_failures(model, trials):
        from sievelab.experiments import LiftEventReport, reference_success_product

        return LiftEventReport(
            degree=model.degree,
            smooth_bound=model.smooth_bound,
            seed=model.seed,
            trials=trials,
            successes=0,
            per_prime_failures={2: trials},
            reference_product=float(reference_success_product(model.smooth_bound)),
        )

    monkeypatch.setattr(cli, "monte_carlo", all_failures)
    assert main(["montecarlo", "--d", "2", "--y", "2", "--trials", "50"]) == EXIT_GATE_FAILED
    capsys.readouterr()


def test_enumerate_prints_count(tmp_path, capsys):
    out = tmp_path / "enum"
    assert main(["enumerate", "--d", "2", "--l", "2", "--out", str(out)]) == EXIT_OK
    stdout = capsys.readouterr().out
    assert stdout.splitlines()[0] == "4/16"
    summary = json.loads((out / "summary.json").read_text())
    assert summary["per_point_counts"] == [2, 2]
    assert summary["per_point_density"] == ["0.125000000", "0.125000000"]


def test_enumerate_rejects_huge_space():
    with pytest.raises(SystemExit) as exc:
        main(["enumerate", "--d", "2", "--l", "97"])
    assert exc.value.code == 2


def test_sweep_subcommand(tmp_path, capsys):
    out = tmp_path / "sweep"
    args = [
        "sweep", "--instances", "2", "--d", "2", "--m", "8", "--u", "25", "--y", "7",
        "--seed", "3", "--out", str(out),
    ]
    assert main(args) == EXIT_OK
    summary = json.loads((out / "summary.json").read_text())
    assert summary["instances"] == 2
    assert summary["improved_total"] < summary["classical_total"]
    rows = read_csv(out / "sweep.csv")
    assert len(rows) == 2
    for row in rows:
        assert int(row["improved_total"]) < int(row["classical_total"])
    capsys.readouterr()

    out2 = tmp_path / "sweep2"
    assert main([*args[:-1], str(out2)]) == EXIT_OK
    assert (out / "sweep.csv").read_bytes() == (out2 / "sweep.csv").read_bytes()
    capsys.readouterr()


def test_sweep_instances_from_config(tmp_path, capsys):
    config = tmp_path / "sweep.json"
    config.write_text(
        json.dumps({"sweep_instances": [{"d": 2, "m": 6, "u": 20, "y": 7, "seed": 1}]})
    )
    assert main(["sweep", "--config", str(config)]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary["instances"] == 1


def test_sweep_requires_instance_count():
    with pytest.raises(SystemExit) as exc:
        main(["sweep"])
    assert exc.value.code == 2


def test_invariant_violation_maps_to_exit_three(monkeypatch, capsys):
    def boom(*args, **kwargs):
        raise InvariantViolation("planted for the exit-code check")

    monkeypatch.setattr(cli, "run_comparison", boom)
    assert main(["compare", *WORKED]) == EXIT_VIOLATION
    assert "invariant violation" in capsys.readouterr().err


def test_identity_mismatch_maps_to_exit_three(monkeypatch, capsys):
    import dataclasses

    real = cli.run_comparison

    def doctored(*args, **kwargs):
        comp = real(*args, **kwargs)
        record = comp.report.rows[0]
        comp.report.rows[0] = dataclasses.replace(record, measured_classical=record.measured_classical + 1)
        return comp

    monkeypatch.setattr(cli, "run_comparison", doctored)
    assert main(["compare", *WORKED]) == EXIT_VIOLATION
    summary = json.loads(capsys.readouterr().out)
    assert summary["identities_ok"] is False
    assert summary["mismatched_pairs"]


def test_console_entry_point_runs():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "sievelab", "enumerate", "--d", "2", "--l", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "9/81"
