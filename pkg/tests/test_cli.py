import csv
import io
import json
import math

import numpy as np
import pytest

from projpair.cli import main
from projpair.projections import reference_2x2_pair, save_pair_json


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- verify ------------------------------------------------------------------


def test_verify_small_campaign_json(capsys):
    code, out, _ = run(capsys, "verify", "--dims", "2,4", "--trials", "5", "--seed", "7")
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "pass"
    assert payload["config"]["base_seed"] == 7
    assert all(entry["trials"] == 10 for entry in payload["per_check"])


def test_verify_zero_trials_passes(capsys):
    code, out, _ = run(capsys, "verify", "--trials", "0")
    assert code == 0
    assert json.loads(out)["verdict"] == "pass"


def test_verify_negative_tol_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--tol", "-1")
    assert code == 2
    assert "tol" in err


def test_verify_bad_dims_usage_error(capsys):
    code, _, _ = run(capsys, "verify", "--dims", "2,x")
    assert code == 2
    code, _, _ = run(capsys, "verify", "--dims", "1")
    assert code == 2


def test_verify_unknown_check_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--checks", "nonsense")
    assert code == 2
    assert "unknown" in err


def test_verify_failing_tolerance_exits_one(capsys):
    # residuals near 1e-16 cannot beat an absurdly tight tolerance
    code, out, _ = run(
        capsys, "verify", "--dims", "2", "--trials", "3", "--tol", "1e-300"
    )
    assert code == 1
    assert json.loads(out)["verdict"] == "fail"


def test_verify_csv_summary(capsys):
    code, out, _ = run(
        capsys, "verify", "--dims", "2", "--trials", "4", "--format", "csv"
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["check", "trials", "max_residual", "failures", "verdict"]
    assert rows[-1][0] == "overall"
    assert rows[-1][-1] == "pass"
    # full round-trip precision: the residual column must parse back to a float
    float(rows[1][2])


def test_verify_writes_report_file(capsys, tmp_path):
    out_file = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "verify", "--dims", "2", "--trials", "3", "--out", str(out_file)
    )
    assert code == 0
    assert out == ""
    assert json.loads(out_file.read_text())["verdict"] == "pass"


def test_verify_byte_identical_reports(capsys, tmp_path, monkeypatch):
    args = ("verify", "--dims", "2,4", "--trials", "5", "--seed", "3")
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    third = tmp_path / "c.json"
    assert run(capsys, *args, "--out", str(first))[0] == 0
    assert run(capsys, *args, "--out", str(second))[0] == 0
    monkeypatch.setenv("PROJPAIR_THREADS", "4")
    assert run(capsys, *args, "--out", str(third))[0] == 0
    assert first.read_bytes() == second.read_bytes() == third.read_bytes()


def test_verify_io_error(capsys):
    code, _, err = run(
        capsys, "verify", "--trials", "0", "--out", "/nonexistent/dir/report.json"
    )
    assert code == 3
    assert "i/o" in err


# --- poly ---------------------------------------------------------------------


def test_poly_f2(capsys):
    code, out, _ = run(capsys, "poly", "--family", "F", "--n", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["coefficients"] == ["0", "1", "3"]
    assert payload["recursive_closed_match"] is True


def test_poly_q1_zero_polynomial(capsys):
    code, out, _ = run(capsys, "poly", "--family", "Q", "--n", "1")
    assert code == 0
    assert json.loads(out)["coefficients"] == ["0"]


def test_poly_a2(capsys):
    code, out, _ = run(capsys, "poly", "--family", "A", "--n", "2")
    assert code == 0
    assert json.loads(out)["coefficients"] == ["0", "0", "3", "0", "1"]


def test_poly_f0_allowed(capsys):
    code, out, _ = run(capsys, "poly", "--family", "F", "--n", "0")
    assert code == 0
    assert json.loads(out)["coefficients"] == ["1"]


def test_poly_range_validation(capsys):
    assert run(capsys, "poly", "--family", "P", "--n", "0")[0] == 2
    assert run(capsys, "poly", "--family", "P", "--n", "201")[0] == 2
    assert run(capsys, "poly", "--family", "A", "--n", "101")[0] == 2
    assert run(capsys, "poly", "--family", "Z", "--n", "1")[0] == 2


# --- decompose -----------------------------------------------------------------


def test_decompose_reference_pair(capsys, tmp_path):
    path = tmp_path / "pair.json"
    save_pair_json(reference_2x2_pair(), path)
    code, out, _ = run(capsys, "decompose", "--input", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["rank_f"] == 1
    assert payload["D"][0][0] == pytest.approx(0.5, abs=1e-12)
    assert abs(complex(*payload["V"][0])) == pytest.approx(0.5, abs=1e-12)
    assert payload["Dprime"][0][0] == pytest.approx(0.5, abs=1e-12)
    assert payload["norm_identity_residual"] <= 1e-12
    assert max(payload["relation_residuals"].values()) <= 1e-12


def test_decompose_full_f_gives_empty_complement(capsys, tmp_path):
    from projpair.projections import ProjectionPair, Provenance

    path = tmp_path / "full.json"
    g = np.diag([1.0, 0.0]).astype(complex)
    save_pair_json(ProjectionPair(np.eye(2), g, 2, Provenance("file")), path)
    code, out, _ = run(capsys, "decompose", "--input", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["rank_f"] == 2
    assert payload["Dprime"] == []
    assert payload["V_shape"] == [2, 0]


def test_decompose_rejects_non_projection(capsys, tmp_path):
    from projpair.projections import ProjectionPair, Provenance

    path = tmp_path / "bad.json"
    not_proj = np.array([[0.5, 0.0], [0.0, 0.5]], dtype=complex)
    save_pair_json(ProjectionPair(not_proj, np.eye(2), 2, Provenance("file")), path)
    code, _, err = run(capsys, "decompose", "--input", str(path))
    assert code == 2
    assert "idempotency" in err


def test_decompose_missing_file_is_io_error(capsys, tmp_path):
    code, _, _ = run(capsys, "decompose", "--input", str(tmp_path / "nope.json"))
    assert code == 3


def test_decompose_malformed_json_is_usage_error(capsys, tmp_path):
    path = tmp_path / "mangled.json"
    path.write_text("{not json")
    code, _, _ = run(capsys, "decompose", "--input", str(path))
    assert code == 2


# --- bounds ---------------------------------------------------------------------


def test_bounds_zero(capsys):
    code, out, _ = run(capsys, "bounds", "--a", "0", "--max-n", "5")
    assert code == 0
    payload = json.loads(out)
    assert payload["limit"] == 0.0
    assert all(row["upper"] == 0.0 and row["lower"] == 0.0 for row in payload["rows"])


def test_bounds_one_upper_constant(capsys):
    code, out, _ = run(capsys, "bounds", "--a", "1", "--max-n", "5")
    assert code == 0
    payload = json.loads(out)
    for row in payload["rows"]:
        assert row["upper"] == pytest.approx(2.0, abs=1e-12)


def test_bounds_gap_shrinks(capsys):
    code, out, _ = run(
        capsys, "bounds", "--a", "0.70710678", "--max-n", "500", "--format", "csv"
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["N", "upper", "lower", "limit", "gap"]
    assert float(rows[-1][4]) <= 1e-2


def test_bounds_rejects_out_of_range(capsys):
    assert run(capsys, "bounds", "--a", "2", "--max-n", "5")[0] == 2
    assert run(capsys, "bounds", "--a", "-0.5", "--max-n", "5")[0] == 2
    assert run(capsys, "bounds", "--a", "0.5", "--max-n", "0")[0] == 2


# --- counterexample ---------------------------------------------------------------


def test_counterexample_dim4(capsys, tmp_path):
    out_file = tmp_path / "pair.json"
    code, out, _ = run(capsys, "counterexample", "--dim", "4", "--out", str(out_file))
    assert code == 0
    payload = json.loads(out)
    assert payload["violation"] == pytest.approx(0.25, abs=1e-10)
    from projpair.projections import load_pair_json, validate_projection

    pair = load_pair_json(out_file)
    assert validate_projection(pair.f).ok and validate_projection(pair.g).ok


def test_counterexample_dim2_rejected(capsys):
    assert run(capsys, "counterexample", "--dim", "2")[0] == 2
    assert run(capsys, "counterexample", "--dim", "7")[0] == 2


def test_counterexample_random_mode(capsys, tmp_path):
    out_file = tmp_path / "rand.json"
    code, out, _ = run(
        capsys,
        "counterexample", "--dim", "8", "--mode", "random",
        "--budget", "50", "--out", str(out_file),
    )
    assert code == 0
    assert json.loads(out)["violation"] > 0.0


# --- universal ----------------------------------------------------------------------


def test_universal_k999(capsys):
    code, out, _ = run(capsys, "universal", "--grid-size", "999")
    assert code == 0
    payload = json.loads(out)
    assert payload["norm_pq"] >= 1 - 1e-5
    assert abs(payload["norm_commutator"] - 0.5) <= 1e-5
    assert payload["theorem_residual"] <= 1e-10


def test_universal_k2_two_cells(capsys):
    code, out, _ = run(capsys, "universal", "--grid-size", "2")
    assert code == 0
    payload = json.loads(out)
    # grid {pi/6, pi/3} plus the inserted pi/4
    assert payload["cells"] == 3
    assert payload["norm_pq"] == pytest.approx(math.cos(math.pi / 6), abs=1e-12)
    assert payload["norm_commutator"] == pytest.approx(0.5, abs=1e-12)
    assert payload["theorem_residual"] <= 1e-10


def test_universal_rejects_small_grid(capsys):
    assert run(capsys, "universal", "--grid-size", "1")[0] == 2


# --- parser level -----------------------------------------------------------------------


def test_unknown_subcommand_exits_two(capsys):
    assert main(["frobnicate"]) == 2


def test_missing_required_flag_exits_two(capsys):
    assert main(["poly", "--family", "F"]) == 2


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert main(["verify", "--help"]) == 0


def test_checks_flag_tolerates_spaces(capsys):
    code, out, _ = run(
        capsys, "verify", "--dims", "2", "--trials", "2",
        "--checks", "theorem, corollary",
    )
    assert code == 0
    payload = json.loads(out)
    assert [e["name"] for e in payload["per_check"]] == ["theorem", "corollary"]


def test_identical_invocations_byte_identical_stdout(capsys):
    _, first, _ = run(capsys, "bounds", "--a", "0.3", "--max-n", "20")
    _, second, _ = run(capsys, "bounds", "--a", "0.3", "--max-n", "20")
    assert first == second
