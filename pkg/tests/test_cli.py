import json

import numpy as np
import pytest

import pingpong as pp
from pingpong import cli, files, qlinalg


@pytest.fixture
def attack_path(tmp_path, counterexample):
    path = tmp_path / "probe.json"
    files.save_attack(counterexample, path)
    return str(path)


@pytest.fixture
def identity_path(tmp_path, identity_attack):
    path = tmp_path / "identity.json"
    files.save_attack(identity_attack, path)
    return str(path)


# ---------------------------------------------------------------------------
# demo


def test_demo_exit_and_headline_lines(capsys):
    assert cli.main(["demo"]) == 0
    out = capsys.readouterr().out
    assert "d = 0.500000000000" in out
    assert "I0t = 1.000000000000" in out
    assert "claimed I0c  = 2.000000000000" in out
    assert "computed I0c = 1.000000000000" in out
    assert "DEVIATION" in out


def test_demo_is_byte_identical_across_runs(capsys):
    cli.main(["demo"])
    first = capsys.readouterr().out
    cli.main(["demo"])
    second = capsys.readouterr().out
    assert first == second


# ---------------------------------------------------------------------------
# report


def test_report_text_matches_demo_numbers(capsys, attack_path):
    assert cli.main(["report", attack_path]) == 0
    out = capsys.readouterr().out
    assert "d = 0.500000000000" in out
    assert "I0a = 0.000000000000" in out
    assert "I0c = 1.000000000000 (computed)" in out


def test_report_json_payload(capsys, attack_path):
    assert cli.main(["report", attack_path, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert abs(payload["d"] - 0.5) < 1e-12
    assert abs(payload["i0t"] - 1.0) < 1e-12
    assert abs(payload["holevo_c"] - 1.0) < 1e-9
    assert abs(payload["claim_deviation"]["delta"] + 1.0) < 1e-12


def test_report_json_identity_has_null_claim(capsys, identity_path):
    assert cli.main(["report", identity_path, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["claim_deviation"] is None
    assert abs(payload["i0c"]) < 1e-12


def test_report_bell_mode(capsys, attack_path):
    assert cli.main(["report", attack_path, "--mode", "bell", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert abs(payload["d"] - 0.5) < 1e-12
    assert payload["holevo_c"] == 0.0
    assert payload["claim_deviation"] is None


def test_report_missing_file_exits_2(capsys, tmp_path):
    code = cli.main(["report", str(tmp_path / "nope.json")])
    assert code == 2
    assert "cannot read" in capsys.readouterr().err


def test_report_directory_path_exits_2(capsys, tmp_path):
    assert cli.main(["report", str(tmp_path)]) == 2


def test_report_corrupt_json_exits_3(capsys, tmp_path):
    path = tmp_path / "corrupt.json"
    path.write_text("{not json\n")
    assert cli.main(["report", str(path)]) == 3
    assert "line 1" in capsys.readouterr().err


def test_report_invalid_attack_exits_3(capsys, tmp_path):
    bad = pp.AttackSpec(2, np.array([1.0, 1.0]), np.eye(4))
    path = tmp_path / "bad.json"
    files.save_attack(bad, path)
    assert cli.main(["report", str(path)]) == 3
    assert "norm" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# simulate


def test_simulate_counterexample(capsys, attack_path):
    code = cli.main(["simulate", attack_path, "--rounds", "20000", "--seed", "7"])
    out = capsys.readouterr().out
    assert code == 0
    assert "analytic d = 0.500000000000" in out
    assert "control rounds = 20000" in out
    assert "z-score = " in out


def test_simulate_identity_is_exact(capsys, identity_path):
    code = cli.main(["simulate", identity_path, "--rounds", "500", "--seed", "3"])
    out = capsys.readouterr().out
    assert code == 0
    assert "empirical d = 0.000000000000" in out
    assert "z-score = 0.000000" in out


def test_simulate_deterministic(capsys, attack_path):
    cli.main(["simulate", attack_path, "--rounds", "5000", "--seed", "11"])
    first = capsys.readouterr().out
    cli.main(["simulate", attack_path, "--rounds", "5000", "--seed", "11"])
    assert capsys.readouterr().out == first


# ---------------------------------------------------------------------------
# sweep


def test_sweep_empty_grid_prints_header_only(capsys):
    assert cli.main(["sweep", "--grid", ""]) == 0
    captured = capsys.readouterr()
    assert captured.out == "d_target,d_achieved,objective,best_value,evaluations\n"
    assert captured.err.startswith("sweep summary:")
    assert "flagged grid points: 0 of 0" in captured.err


def test_sweep_single_point_csv(capsys):
    code = cli.main([
        "sweep", "--grid", "0.5", "--objective", "i0t",
        "--restarts", "2", "--budget", "400", "--seed", "5",
    ])
    captured = capsys.readouterr()
    assert code == 0
    lines = captured.out.splitlines()
    assert lines[0] == "d_target,d_achieved,objective,best_value,evaluations"
    cells = lines[1].split(",")
    assert cells[0] == "0.5" and cells[2] == "i0t"
    assert float(cells[3]) > 0.999
    assert int(cells[4]) <= 800
    assert "d_target 0.5000" in captured.err


def test_sweep_colon_grid(capsys):
    code = cli.main([
        "sweep", "--grid", "0:0.5:0.25", "--objective", "i0a",
        "--restarts", "1", "--budget", "60", "--family", "product",
    ])
    captured = capsys.readouterr()
    assert code == 0
    targets = [line.split(",")[0] for line in captured.out.splitlines()[1:]]
    assert targets == ["0", "0.25", "0.5"]


def test_sweep_out_file(capsys, tmp_path):
    out = tmp_path / "curve.csv"
    code = cli.main([
        "sweep", "--grid", "0.0", "--objective", "i0t",
        "--restarts", "1", "--budget", "80", "--out", str(out),
    ])
    captured = capsys.readouterr()
    assert code == 0
    rows = files.read_curve_csv(out)
    assert len(rows) == 1 and rows[0].d_target == 0.0
    assert captured.out.startswith("sweep summary:")


def test_sweep_out_directory_exits_2(capsys, tmp_path):
    code = cli.main([
        "sweep", "--grid", "0.0", "--objective", "i0t",
        "--restarts", "1", "--budget", "40", "--out", str(tmp_path),
    ])
    assert code == 2
    assert "cannot write" in capsys.readouterr().err


def test_sweep_malformed_grid_exits_2(capsys):
    assert cli.main(["sweep", "--grid", "abc"]) == 2


def test_sweep_grid_outside_range_exits_2(capsys):
    assert cli.main(["sweep", "--grid", "0.2,1.4"]) == 2
    assert "bad sweep configuration" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# verify


def test_verify_passes_and_lists_suites(capsys):
    assert cli.main(["verify"]) == 0
    lines = capsys.readouterr().out.splitlines()
    suite_lines = [l for l in lines if l.startswith(("PASS", "FAIL"))]
    assert len(suite_lines) >= 12
    assert all(l.startswith("PASS") for l in suite_lines)
    assert lines[-1].endswith("0 failed")


def test_verify_catches_a_wrong_entropy_base(capsys, monkeypatch):
    # sabotage: entropy in nats instead of bits must trip the suite
    def nats(rho):
        evals = np.array(qlinalg.hermitian_eigenvalues(rho))
        evals = evals[evals > 0.0]
        return float(-(evals * np.log(evals)).sum())

    monkeypatch.setattr(qlinalg, "von_neumann_entropy", nats)
    assert cli.main(["verify"]) == 1
    out = capsys.readouterr().out
    assert "FAIL entropy_maximal_mixing" in out


# ---------------------------------------------------------------------------
# argument plumbing


def test_no_arguments_exits_2():
    assert cli.main([]) == 2


def test_unknown_subcommand_exits_2():
    assert cli.main(["frobnicate"]) == 2


def test_internal_errors_map_to_exit_1(capsys, monkeypatch, attack_path):
    def boom(*args, **kwargs):
        raise RuntimeError("synthetic failure")

    monkeypatch.setattr(cli.metrics, "information_report", boom)
    assert cli.main(["report", attack_path]) == 1
    assert "internal error: synthetic failure" in capsys.readouterr().err
