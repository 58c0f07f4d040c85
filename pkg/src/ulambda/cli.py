"""Batch experiment driver.

Every subcommand reads a JSON config, writes CSV/JSON/SVG artifacts into the
output directory and encodes its verdict in the exit code:

    0  ok / membership Inside
    2  an asserted inequality observed violated (or membership Outside)
    3  inconclusive (tolerance band, or a precondition estimate failed)
    4  malformed configuration

Identical configs (including the seed) produce byte-identical outputs.  The
environment variable ULAMBDA_THREADS is an upper bound on internal
parallelism; sweeps run single-threaded by default, which always complies.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import bounds
from .core import (
    GridSpec,
    count_disk_zeros,
    extremal_q_boundary,
    majorant_h_boundary,
    q_from_omega,
    q_from_phi,
    sup_u,
    taylor_of_f,
    l_of_phi,
    julia_quotient,
    obstruction_value,
)
from .diskfun import Blaschke, Monomial, MoebiusShift, ScaledPolynomial, diskfun_from_json
from .errors import ConfigError, NoConvergence, NotContractive, UlambdaError

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_INCONCLUSIVE = 3
EXIT_CONFIG = 4


def _cplx(v) -> complex:
    if isinstance(v, (list, tuple)):
        return complex(float(v[0]), float(v[1]))
    return complex(float(v))


def _threads_cap() -> int:
    raw = os.environ.get("ULAMBDA_THREADS", "1")
    try:
        cap = int(raw)
    except ValueError as e:
        raise ConfigError(f"ULAMBDA_THREADS must be an integer, got {raw!r}") from e
    if cap < 1:
        raise ConfigError("ULAMBDA_THREADS must be >= 1")
    return cap


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    return cfg


def _grid(cfg: dict) -> GridSpec:
    return GridSpec.from_json(cfg.get("grid", {}))


def _lam(cfg: dict) -> float:
    try:
        lam = float(cfg["lambda"])
    except KeyError as e:
        raise ConfigError("config requires 'lambda'") from e
    if not (0 < lam <= 1):
        raise ConfigError("lambda must lie in (0, 1]")
    return lam


# ---------------------------------------------------------------------------
# seeded family sampling


def sample_phi(rng: np.random.Generator):
    """Random member of the origin-fixing families used by the theorems."""
    kind = rng.integers(0, 3)
    if kind == 0:
        return Monomial(theta=float(rng.uniform(0, 2 * math.pi)), k=int(rng.integers(1, 4)))
    if kind == 1:
        deg = int(rng.integers(2, 5))
        zeros = [0j]  # keep the origin fixed
        for _ in range(deg - 1):
            zeros.append(_random_point(rng, 0.8))
        return Blaschke(zeros=tuple(zeros), rotation=float(rng.uniform(0, 2 * math.pi)))
    deg = int(rng.integers(2, 9))
    raw = [0j] + [_random_point(rng, 1.0) for _ in range(deg)]
    return ScaledPolynomial(raw=tuple(raw))


def sample_omega(rng: np.random.Generator):
    """Random unit-bounded function (origin value free)."""
    kind = rng.integers(0, 3)
    if kind == 0:
        return MoebiusShift(a=_random_point(rng, 0.9), psi=float(rng.uniform(0, 2 * math.pi)))
    if kind == 1:
        deg = int(rng.integers(1, 5))
        zeros = tuple(_random_point(rng, 0.8) for _ in range(deg))
        return Blaschke(zeros=zeros, rotation=float(rng.uniform(0, 2 * math.pi)))
    deg = int(rng.integers(1, 9))
    raw = tuple(_random_point(rng, 1.0) for _ in range(deg + 1))
    return ScaledPolynomial(raw=raw)


def _random_point(rng: np.random.Generator, radius: float) -> complex:
    r = radius * math.sqrt(rng.uniform())
    t = rng.uniform(0, 2 * math.pi)
    return r * cmath.exp(1j * t)


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify_conjecture(cfg: dict, out: Path) -> int:
    lam = _lam(cfg)
    n_max = int(cfg.get("n_max", 10))
    samples = int(cfg.get("samples", 100))
    seed = int(cfg.get("seed", 0))
    grid = _grid(cfg)
    order = max(64, n_max)
    rng = np.random.default_rng(seed)

    candidates = [("extremal", q_from_phi(lam, Monomial(theta=math.pi, k=1), order=order))]
    kept = 0
    for _ in range(samples):
        phi = sample_phi(rng)
        cand = q_from_phi(lam, phi, order=order)
        if sup_u(cand, grid).verdict == "Inside":
            candidates.append(("random", cand))
            kept += 1
        omega = sample_omega(rng)
        a2 = _random_point(rng, 1.0)
        cand = q_from_omega(a2, lam, omega, order=order)
        # the operator stays bounded for every (a2, omega) pair, so the
        # decisive membership question is whether f = z/q has a pole
        if count_disk_zeros(cand) == 0 and sup_u(cand, grid).verdict == "Inside":
            candidates.append(("random", cand))
            kept += 1

    rows = []
    for n in range(2, n_max + 1):
        best = -1.0
        best_fam = "extremal"
        for fam, cand in candidates:
            obs = abs(taylor_of_f(cand).coeffs[n - 1])
            if obs > best:
                best, best_fam = float(obs), fam
        rows.append(
            (n, bounds.conjecture_bound(n, lam), bounds.theorem2_bound(n, lam), best, best_fam)
        )
    table = bounds.BoundTable(rows)
    (out / "bounds.csv").write_text(table.to_csv())
    _write_json(out / "verify_conjecture.json", {
        "lambda": lam, "n_max": n_max, "samples": samples, "seed": seed,
        "members_kept": kept, "violations": len(table.violations()),
    })
    if table.violations():
        print("conjectured bound violated", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def _candidate_from_config(cfg: dict):
    lam = _lam(cfg)
    spec = cfg.get("candidate")
    if not isinstance(spec, dict):
        raise ConfigError("config requires a 'candidate' object")
    order = int(cfg.get("order", 64))
    kind = spec.get("type")
    if kind == "phi":
        return q_from_phi(lam, diskfun_from_json(spec["phi"]), order=order)
    if kind == "omega":
        return q_from_omega(_cplx(spec["a2"]), lam, diskfun_from_json(spec["omega"]), order=order)
    if kind == "extremal":
        return q_from_phi(lam, Monomial(theta=float(spec.get("phase", math.pi)), k=1), order=order)
    raise ConfigError(f"unknown candidate type {kind!r}")


def cmd_membership(cfg: dict, out: Path) -> int:
    cand = _candidate_from_config(cfg)
    report = sup_u(cand, _grid(cfg))
    zeros = count_disk_zeros(cand)
    payload = report.to_json()
    payload["q_disk_zeros"] = zeros
    if zeros:
        # a zero of q is a pole of f, so the candidate is not a member even
        # when the operator sweep stays below the threshold
        payload["verdict"] = "Outside"
    _write_json(out / "membership.json", payload)
    if payload["verdict"] == "Inside":
        return EXIT_OK
    if payload["verdict"] == "Outside":
        return EXIT_VIOLATION
    return EXIT_INCONCLUSIVE


def cmd_julia(cfg: dict, out: Path) -> int:
    lam = _lam(cfg)
    phi = diskfun_from_json(cfg["phi"])
    theta0 = float(cfg.get("theta0", 0.0))
    m = julia_quotient(phi, theta0)
    value = obstruction_value(lam, phi, theta0)
    direct = l_of_phi(lam, phi, cmath.exp(1j * theta0))
    cand = q_from_phi(lam, phi, order=int(cfg.get("order", 64)))
    sweep = sup_u(cand, _grid(cfg))
    _write_json(out / "julia.json", {
        "lambda": lam,
        "theta0": theta0,
        "m": m,
        "obstruction_value": value,
        "l_at_boundary": direct,
        "membership": sweep.to_json(),
    })
    # the theorem says the candidate cannot be a member
    if value > lam and sweep.verdict == "Inside":
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_region_a2(cfg: dict, out: Path) -> int:
    lam = _lam(cfg)
    omega = diskfun_from_json(cfg["omega"])
    resolution = int(cfg.get("resolution", 512))
    region = bounds.c_omega_curve(omega, lam, resolution=resolution)
    (out / "region.csv").write_text(region.to_csv())
    (out / "region.svg").write_text(region.to_svg())
    queries = []
    for q in cfg.get("queries", []):
        p = _cplx(q)
        queries.append({
            "a2": [p.real, p.imag],
            "where": region.contains(p),
            "distance_to_curve": region.curve.distance(p),
        })
    _write_json(out / "region.json", {
        "lambda": lam, "resolution": resolution, "queries": queries,
    })
    return EXIT_OK


def cmd_f_roots(cfg: dict, out: Path) -> int:
    lams = cfg.get("lambdas")
    if lams is None:
        n = int(cfg.get("lambda_count", 50))
        lams = list(np.linspace(0.02, 0.98, n))
    rs = cfg.get("Rs")
    if rs is None:
        n = int(cfg.get("R_count", 50))
        rs = list(np.linspace(0.02, 0.98, n))
    lines = ["lambda,R,root,r_star"]
    mismatches = 0
    for lam in lams:
        lam = float(lam)
        thr = bounds.r_star(lam) if 0.5 < lam < 1 else 0.0
        for R in rs:
            R = float(R)
            root = bounds.f_root_in_unit_interval(lam, R)
            # theorem criterion, away from the threshold band
            expected = lam <= 0.5 or R > thr
            band = abs(R - thr) <= 1e-9 if thr else False
            if not band and (root is not None) != expected:
                mismatches += 1
            lines.append(
                f"{lam:.17g},{R:.17g},{'' if root is None else format(root, '.17g')},{thr:.17g}"
            )
    (out / "f_roots.csv").write_text("\n".join(lines) + "\n")
    _write_json(out / "f_roots.json", {"mismatches": mismatches})
    return EXIT_VIOLATION if mismatches else EXIT_OK


def cmd_sharpness(cfg: dict, out: Path) -> int:
    lam = _lam(cfg)
    a = _cplx(cfg.get("a", 0.5))
    result = {"lambda": lam, "a": [a.real, a.imag]}
    worst = 0.0
    if abs(a.imag) < 1e-15 and 0 < a.real < 1:
        a2, _, rep5 = bounds.sharpness_g_thm5(lam, a.real)
        result["refined_a2"] = rep5
        worst = max(worst, rep5["expr_disagreement"], rep5["g_at_1_abs"], rep5["bound_residual"])
    if abs(a) < 1:
        theta, psi, _, a2c, _, rep6 = bounds.sharpness_construction_thm6(lam, a)
        rep6 = dict(rep6)
        rep6["theta"] = theta
        rep6["psi"] = psi
        rep6["a2"] = [a2c.real, a2c.imag]
        result["region_a2"] = rep6
        worst = max(worst, rep6["d_boundary_residual"], rep6["a2_bound_residual"])
    _write_json(out / "sharpness.json", result)
    return EXIT_VIOLATION if worst > 1e-8 else EXIT_OK


def cmd_fixed_point(cfg: dict, out: Path) -> int:
    lam = _lam(cfg)
    omega = diskfun_from_json(cfg["omega"])
    a2 = _cplx(cfg["a2"])
    if "r" in cfg:
        r = float(cfg["r"])
    else:
        r = (1 + lam * bounds.v_of_omega(omega)) / abs(a2)
    try:
        res = bounds.fixed_point_zero(a2, lam, omega, r)
    except (NotContractive, NoConvergence) as e:
        _write_json(out / "fixed_point.json", {"error": str(e), "r": r})
        return EXIT_INCONCLUSIVE
    cand = q_from_omega(a2, lam, omega)
    from .series import series_eval

    payload = res.to_json()
    payload["r"] = r
    payload["q_residual"] = abs(series_eval(cand.q, res.z0))
    _write_json(out / "fixed_point.json", payload)
    return EXIT_OK


_COMMANDS = {
    "verify-conjecture": cmd_verify_conjecture,
    "membership": cmd_membership,
    "julia": cmd_julia,
    "region-a2": cmd_region_a2,
    "f-roots": cmd_f_roots,
    "sharpness": cmd_sharpness,
    "fixed-point": cmd_fixed_point,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ulambda",
        description="Numerical experiments on the univalence class U(lambda)",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="path to a JSON config")
        p.add_argument("--out", default=".", help="output directory")
    args = parser.parse_args(argv)

    try:
        _threads_cap()
        cfg = _load_config(args.config)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        code = _COMMANDS[args.command](cfg, out)
    except (ConfigError, KeyError, ValueError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except UlambdaError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    return code


if __name__ == "__main__":
    sys.exit(main())
