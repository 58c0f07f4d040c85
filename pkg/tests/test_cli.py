import json
import math

import pytest

from ulambda.cli import main


def run(tmp_path, command, cfg, outdir="out"):
    cfg_path = tmp_path / "config.json"
    cfg_path.write_text(json.dumps(cfg))
    out = tmp_path / outdir
    code = main([command, "--config", str(cfg_path), "--out", str(out)])
    return code, out


class TestVerifyConjecture:
    def test_extremal_rows_hit_conjecture(self, tmp_path):
        code, out = run(tmp_path, "verify-conjecture",
                        {"lambda": 0.5, "n_max": 10, "samples": 0, "seed": 1})
        assert code == 0
        lines = (out / "bounds.csv").read_text().strip().split("\n")
        assert lines[0] == "n,conjecture,theorem2,observed_max,family"
        for line in lines[1:]:
            n, conj, th2, obs, fam = line.split(",")
            assert abs(float(obs) - float(conj)) < 1e-11
            assert fam == "extremal"

    def test_koebe_at_lambda_one(self, tmp_path):
        code, out = run(tmp_path, "verify-conjecture",
                        {"lambda": 1.0, "n_max": 8, "samples": 0, "seed": 1})
        assert code == 0
        rows = (out / "bounds.csv").read_text().strip().split("\n")[1:]
        for line in rows:
            n, conj, th2, obs, fam = line.split(",")
            assert abs(float(obs) - int(n)) < 1e-10

    def test_random_samples_within_bound(self, tmp_path):
        code, out = run(tmp_path, "verify-conjecture",
                        {"lambda": 0.3, "n_max": 10, "samples": 40, "seed": 42})
        assert code == 0
        rows = (out / "bounds.csv").read_text().strip().split("\n")[1:]
        for line in rows:
            n, conj, th2, obs, fam = line.split(",")
            assert float(obs) <= float(conj) + 1e-9


class TestMembership:
    def test_extremal_inside(self, tmp_path):
        code, out = run(tmp_path, "membership",
                        {"lambda": 0.5, "candidate": {"type": "extremal"}})
        assert code == 0
        rep = json.loads((out / "membership.json").read_text())
        assert rep["verdict"] == "Inside"

    def test_z_squared_outside(self, tmp_path):
        code, out = run(tmp_path, "membership",
                        {"lambda": 0.5,
                         "candidate": {"type": "phi",
                                       "phi": {"kind": "monomial", "theta": math.pi, "k": 2}}})
        assert code == 2
        rep = json.loads((out / "membership.json").read_text())
        assert rep["verdict"] == "Outside"

    def test_omega_candidate(self, tmp_path):
        code, out = run(tmp_path, "membership",
                        {"lambda": 0.7,
                         "candidate": {"type": "omega", "a2": 0.9,
                                       "omega": {"kind": "poly", "coeffs": [0.0],
                                                 "normalizer": 1.0}}})
        assert code == 0
        rep = json.loads((out / "membership.json").read_text())
        assert rep["q_disk_zeros"] == 0

    def test_pole_carrying_candidate_outside(self, tmp_path):
        # the operator stays below threshold for every (a2, omega) pair, but
        # this q vanishes inside the disk, so f = z/q has a pole there
        code, out = run(tmp_path, "membership",
                        {"lambda": 0.3,
                         "candidate": {"type": "omega",
                                       "a2": [0.3007386830957319, 0.8294213293396829],
                                       "omega": {"kind": "moebius",
                                                 "a": [0.5268221954758235, -0.09810406994221266],
                                                 "psi": 5.611645507023389}}})
        assert code == 2
        rep = json.loads((out / "membership.json").read_text())
        assert rep["verdict"] == "Outside"
        assert rep["q_disk_zeros"] == 1
        assert rep["sup_estimate"] < 0.3


class TestJulia:
    def test_z_squared(self, tmp_path):
        code, out = run(tmp_path, "julia",
                        {"lambda": 0.5,
                         "phi": {"kind": "monomial", "theta": math.pi, "k": 2},
                         "theta0": 0.0})
        assert code == 0
        rep = json.loads((out / "julia.json").read_text())
        assert abs(rep["m"] - 2) < 1e-10
        assert abs(rep["obstruction_value"] - 3.0) < 1e-10
        assert rep["membership"]["verdict"] == "Outside"

    def test_blaschke(self, tmp_path):
        code, out = run(tmp_path, "julia",
                        {"lambda": 0.25,
                         "phi": {"kind": "blaschke", "zeros": [[0, 0], [0.5, 0]],
                                 "rotation": math.pi},
                         "theta0": 0.0})
        assert code == 0
        rep = json.loads((out / "julia.json").read_text())
        assert abs(rep["obstruction_value"] - 5.5) < 1e-10

    def test_extremal_generator_is_borderline(self, tmp_path):
        # phi = -z gives m = 1, so the obstruction collapses to lambda and the
        # candidate stays a member
        code, out = run(tmp_path, "julia",
                        {"lambda": 0.5,
                         "phi": {"kind": "monomial", "theta": math.pi, "k": 1},
                         "theta0": 0.0})
        assert code == 0
        rep = json.loads((out / "julia.json").read_text())
        assert abs(rep["obstruction_value"] - 0.5) < 1e-10
        assert rep["membership"]["verdict"] == "Inside"

    def test_unnormalized_boundary_point_rejected(self, tmp_path):
        # phi(1) != -1 violates the boundary normalization
        code, _ = run(tmp_path, "julia",
                      {"lambda": 0.5,
                       "phi": {"kind": "monomial", "theta": 0.3, "k": 1},
                       "theta0": 0.0})
        assert code == 3


class TestRegionA2:
    def test_unit_circle_queries(self, tmp_path):
        code, out = run(tmp_path, "region-a2",
                        {"lambda": 0.5, "resolution": 128,
                         "omega": {"kind": "poly", "coeffs": [0.0], "normalizer": 1.0},
                         "queries": [[0.9, 0], [1.1, 0]]})
        assert code == 0
        rep = json.loads((out / "region.json").read_text())
        assert rep["queries"][0]["where"] == "inside"
        assert rep["queries"][1]["where"] == "outside"
        assert (out / "region.csv").read_text().startswith("theta,re,im")
        assert (out / "region.svg").read_text().startswith("<svg")

    def test_moebius_bound_query(self, tmp_path):
        from ulambda.bounds import v_of_x

        lam, a = 0.5, 0.5
        code, out = run(tmp_path, "region-a2",
                        {"lambda": lam, "resolution": 256,
                         "omega": {"kind": "moebius", "a": a, "psi": 0.0},
                         "queries": [[1 + lam * v_of_x(a), 0.0]]})
        assert code == 0
        rep = json.loads((out / "region.json").read_text())
        # the sharp a2 sits on (numerically: next to) the curve
        assert rep["queries"][0]["distance_to_curve"] < 1e-3


class TestFRoots:
    def test_grid_consistency(self, tmp_path):
        code, out = run(tmp_path, "f-roots", {"lambda_count": 20, "R_count": 20})
        assert code == 0
        lines = (out / "f_roots.csv").read_text().strip().split("\n")
        assert lines[0] == "lambda,R,root,r_star"

    def test_spec_cases(self, tmp_path):
        code, out = run(tmp_path, "f-roots",
                        {"lambdas": [0.3, 0.75], "Rs": [0.3, 0.34, 0.5]})
        assert code == 0
        rows = {}
        for line in (out / "f_roots.csv").read_text().strip().split("\n")[1:]:
            lam, R, root, thr = line.split(",")
            rows[(round(float(lam), 3), round(float(R), 3))] = root
        assert abs(float(rows[(0.3, 0.5)]) - 0.22504) < 1e-4
        assert rows[(0.75, 0.3)] == ""
        assert rows[(0.75, 0.34)] != ""


class TestSharpness:
    def test_residuals(self, tmp_path):
        code, out = run(tmp_path, "sharpness", {"lambda": 0.5, "a": 0.5})
        assert code == 0
        rep = json.loads((out / "sharpness.json").read_text())
        assert rep["refined_a2"]["g_at_1_abs"] < 1e-8
        assert rep["region_a2"]["d_boundary_residual"] < 1e-8

    def test_high_lambda_small_a(self, tmp_path):
        code, out = run(tmp_path, "sharpness", {"lambda": 0.9, "a": 0.1})
        assert code == 0

    def test_degenerate_a_zero(self, tmp_path):
        code, out = run(tmp_path, "sharpness", {"lambda": 0.6, "a": 0.0})
        assert code == 0
        rep = json.loads((out / "sharpness.json").read_text())
        a2 = complex(*rep["region_a2"]["a2"])
        assert abs(abs(a2) - (1 + 0.6 / 2)) < 1e-9


class TestFixedPoint:
    def test_trace_and_zero(self, tmp_path):
        code, out = run(tmp_path, "fixed-point",
                        {"lambda": 0.5, "a2": 1.5625,
                         "omega": {"kind": "poly", "coeffs": [0, 1.0], "normalizer": 1.0}})
        assert code == 0
        rep = json.loads((out / "fixed_point.json").read_text())
        assert rep["q_residual"] < 1e-9
        assert len(rep["residuals"]) == rep["iterations"]

    def test_not_contractive_inconclusive(self, tmp_path):
        code, out = run(tmp_path, "fixed-point",
                        {"lambda": 0.9, "a2": 0.5, "r": 0.9,
                         "omega": {"kind": "poly", "coeffs": [0, 1.0], "normalizer": 1.0}})
        assert code == 3
        assert "error" in json.loads((out / "fixed_point.json").read_text())


class TestHarness:
    def test_config_error_exit_code(self, tmp_path):
        code, _ = run(tmp_path, "membership", {"lambda": 0.5})
        assert code == 4

    def test_missing_config_file(self, tmp_path):
        code = main(["membership", "--config", str(tmp_path / "nope.json")])
        assert code == 4

    @pytest.mark.parametrize("command,cfg", [
        ("verify-conjecture", {"lambda": 0.4, "n_max": 6, "samples": 10, "seed": 7}),
        ("membership", {"lambda": 0.5, "candidate": {"type": "extremal"}}),
        ("f-roots", {"lambda_count": 8, "R_count": 8}),
        ("region-a2", {"lambda": 0.5, "resolution": 64,
                       "omega": {"kind": "moebius", "a": 0.3, "psi": 0.2},
                       "queries": [[0.5, 0.5]]}),
    ])
    def test_determinism(self, tmp_path, command, cfg):
        _, out1 = run(tmp_path, command, cfg, outdir="out1")
        _, out2 = run(tmp_path, command, cfg, outdir="out2")
        for p1 in sorted(out1.iterdir()):
            p2 = out2 / p1.name
            assert p1.read_bytes() == p2.read_bytes()
