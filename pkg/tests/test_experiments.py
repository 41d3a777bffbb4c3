import json

import numpy as np
import pytest

from stlab.experiments import (
    DEFAULT_TOLERANCES,
    ExperimentConfig,
    ExponentError,
    canonical_json_bytes,
    check_exponents,
    content_hash,
    run_continuity,
    run_det_compare,
    run_factor_check,
    run_trace_check,
    run_weyl_scan,
)
from stlab.lorentz import LorentzParams, lorentz_quasinorm
from stlab.nuclear import lorentz_decay_coefficients


class TestExponentSurface:
    def test_special_cases_admissible(self):
        for r, s, p in ((1.0, 1.0, 2.0), (2 / 3, 2 / 3, 1.0), (2 / 3, 1.0, 1.0),
                        (6 / 7, 6 / 7, 1.5)):
            assert check_exponents(r, s, p)

    def test_violations_raise(self):
        with pytest.raises(ExponentError):
            check_exponents(0.9, 1.0, 1.0)
        with pytest.raises(ExponentError):
            check_exponents(2 / 3, 1.5, 1.0)

    def test_unsafe_flag_downgrades_to_exploratory(self):
        assert check_exponents(0.9, 1.0, 1.0, unsafe=True) is False


class TestCanonicalSerialization:
    def test_complex_and_numpy_types(self):
        payload = {"a": np.float64(1.5), "b": 2 + 3j, "c": np.arange(3), "d": np.bool_(True)}
        assert json.loads(canonical_json_bytes(payload)) == {
            "a": 1.5, "b": [2.0, 3.0], "c": [0, 1, 2], "d": True}

    def test_hash_tracks_content(self):
        assert content_hash({"x": 1}) == content_hash({"x": 1})
        assert content_hash({"x": 1}) != content_hash({"x": 2})


class TestTraceCheck:
    def test_all_trials_pass(self):
        report = run_trace_check(ExperimentConfig(
            subcommand="trace-check", dim=12, rank=24, trials=20, seed=5))
        assert report["summary"]["pass"]
        assert report["summary"]["eigensolve_failures"] == []
        assert len(report["results"]) == 20
        assert all(row["seed"] == [5, row["trial"]] for row in report["results"])

    def test_deterministic_bytes(self):
        cfg = ExperimentConfig(subcommand="trace-check", dim=8, rank=10, trials=5, seed=9)
        a = canonical_json_bytes(run_trace_check(cfg))
        b = canonical_json_bytes(run_trace_check(cfg))
        assert a == b

    def test_inadmissible_exponents_rejected(self):
        with pytest.raises(ExponentError):
            run_trace_check(ExperimentConfig(subcommand="trace-check", r=0.5, s=1.0, p=1.0))

    def test_config_echoed_and_hashed(self):
        cfg = ExperimentConfig(subcommand="trace-check", trials=2, seed=1)
        report = run_trace_check(cfg)
        assert report["config"]["subcommand"] == "trace-check"
        assert report["inputs_hash"] == content_hash(report["config"])


class TestDetCompare:
    def test_grid_and_csv(self):
        report, csv_text = run_det_compare(ExperimentConfig(
            subcommand="det-compare", dim=6, trials=3, seed=2))
        assert report["summary"]["pass"]
        assert report["summary"]["max_pairwise_diff"] <= DEFAULT_TOLERANCES["det-compare"]
        lines = csv_text.strip().splitlines()
        assert lines[0] == "z_re,z_im,product,newton,series,max_pairwise_diff"
        assert len(lines) == 1 + 3 * 64
        # z = 0 rows evaluate all three ways to exactly 1
        first = lines[1].split(",")
        assert first[:2] == ["0.0", "0.0"]
        assert first[2] == first[3] == first[4] == "1.0+0.0j"

    def test_divergent_points_skipped_and_flagged(self):
        report, csv_text = run_det_compare(ExperimentConfig(
            subcommand="det-compare", dim=5, trials=1, seed=3, det_scale=1.6))
        assert any(row["skipped_points"] > 0 for row in report["results"])
        assert "skipped" in csv_text

    def test_deterministic(self):
        cfg = ExperimentConfig(subcommand="det-compare", dim=5, trials=2, seed=4)
        r1, c1 = run_det_compare(cfg)
        r2, c2 = run_det_compare(cfg)
        assert canonical_json_bytes(r1) == canonical_json_bytes(r2)
        assert c1 == c2


class TestContinuity:
    def test_scan_below_ceiling(self):
        report = run_continuity(ExperimentConfig(
            subcommand="continuity", dim=8, trials=40, seed=6))
        assert report["summary"]["pass"]
        assert report["summary"]["max_ratio"] <= report["summary"]["ceiling"]
        assert report["summary"]["r0"] == 0.1

    def test_r0_respected(self):
        report = run_continuity(ExperimentConfig(
            subcommand="continuity", dim=4, trials=6, seed=7, r0=0.25))
        assert report["summary"]["r0"] == 0.25
        assert report["summary"]["pass"]


class TestWeylScan:
    def test_diagonal_ratio_is_norm_quotient(self):
        cfg = ExperimentConfig(subcommand="weyl-scan", seed=8, r=2 / 3, s=1.0, p=1.0,
                               ladder_max=16, scan_trials=1)
        report = run_weyl_scan(cfg)
        lam = lorentz_decay_coefficients(16, 2 / 3, 1.0)
        expected = (lorentz_quasinorm(lam, LorentzParams(1.0, 1.0))
                    / lorentz_quasinorm(lam, LorentzParams(2 / 3, 1.0)))
        assert report["results"][0]["ratios"][0] == pytest.approx(expected, rel=1e-12)

    def test_ladder_bounded(self):
        report = run_weyl_scan(ExperimentConfig(
            subcommand="weyl-scan", seed=9, r=2 / 3, s=1.0, p=1.0,
            ladder_max=64, scan_trials=2))
        assert report["summary"]["ladder"] == [16, 32, 64]
        assert report["summary"]["pass"]
        assert not report["summary"]["exploratory"]

    def test_certified_flag_tracks_p(self):
        exact = run_weyl_scan(ExperimentConfig(
            subcommand="weyl-scan", seed=10, r=2 / 3, s=1.0, p=1.0,
            ladder_max=16, scan_trials=1))
        assert all(row["certified"] for row in exact["results"])
        estimated = run_weyl_scan(ExperimentConfig(
            subcommand="weyl-scan", seed=10, r=6 / 7, s=6 / 7, p=1.5,
            ladder_max=16, scan_trials=1))
        assert not any(row["certified"] for row in estimated["results"])

    def test_unsafe_exponents_marked_exploratory(self):
        report = run_weyl_scan(ExperimentConfig(
            subcommand="weyl-scan", seed=11, r=0.9, s=1.0, p=1.0,
            ladder_max=16, scan_trials=1, unsafe_exponents=True))
        assert report["summary"]["exploratory"]


class TestFactorCheck:
    def test_all_identities(self):
        report = run_factor_check(ExperimentConfig(
            subcommand="factor-check", dim=8, rank=12, trials=10, seed=12))
        assert report["summary"]["pass"]
        assert report["summary"]["max_reconstruction_diff"] <= 1e-12
        assert all(row["ab_ba"]["pass"] for row in report["results"])

    def test_deterministic(self):
        cfg = ExperimentConfig(subcommand="factor-check", dim=6, rank=8, trials=4, seed=13)
        assert canonical_json_bytes(run_factor_check(cfg)) == canonical_json_bytes(
            run_factor_check(cfg))
