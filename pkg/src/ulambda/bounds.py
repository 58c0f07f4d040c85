"""Closed-form coefficient bounds, the refined a2 analysis and its
constructive objects: v(x), B_a(z), the forbidden-value curve and admissible
region for a2, the F(R, r) root analysis, the contraction-mapping zero
finder and both sharpness constructions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .diskfun import DiskFunction, MoebiusShift, antiderivative
from .errors import (
    BranchPointSingularity,
    NoConvergence,
    NotContractive,
    OutOfRange,
    OutsideDisk,
    SelfIntersectionSuspected,
)
from .geometry import BoundaryRegion
from .series import (
    DEFAULT_ORDER,
    TruncatedSeries,
    series_eval_many,
    series_reciprocal,
)
from .core import GridSpec, UCandidate, q_from_omega

_GOLDEN = (math.sqrt(5) - 1) / 2


# ---------------------------------------------------------------------------
# coefficient bounds


def conjecture_bound(n: int, lam: float) -> float:
    """Conjectured sharp bound sum_{k=0}^{n-1} lam^k on |a_n|, n >= 2."""
    if n < 2:
        raise OutOfRange("n must be >= 2")
    if not (0 < lam <= 1):
        raise OutOfRange("lambda must lie in (0, 1]")
    return float(sum(lam**k for k in range(n)))


def theorem2_bound(n: int, lam: float) -> float:
    """Proven bound 1 + lam sqrt(n-1) sqrt(sum_{k=0}^{n-2} lam^{2k}), n >= 2."""
    if n < 2:
        raise OutOfRange("n must be >= 2")
    if not (0 < lam <= 1):
        raise OutOfRange("lambda must lie in (0, 1]")
    s = float(sum(lam ** (2 * k) for k in range(n - 1)))
    # written as one sqrt so that lam = 1 gives exactly n
    return 1 + lam * math.sqrt((n - 1) * s)


def rogosinski_check(w: DiskFunction, lam: float, n: int, order: int | None = None) -> dict:
    """Coefficient inequalities for g1 = 1/(1 - lam w) and g2 = 1/(1 - w),
    w a self-map of the disk fixing 0.

    For every m <= n the partial sums must satisfy
    sum_{k=1}^m |b_k|^2 <= sum_{k=1}^m lam^{2k}, and |c_m| <= 1.
    """
    if abs(w.base_point()) > 1e-9:
        raise OutOfRange("w must fix the origin")
    order = max(n, DEFAULT_ORDER) if order is None else order
    t = w.taylor(order)
    one_minus = TruncatedSeries.from_coeffs([1.0], order=order)

    g1 = series_reciprocal(TruncatedSeries(one_minus.coeffs - lam * t.coeffs))
    g2 = series_reciprocal(TruncatedSeries(one_minus.coeffs - t.coeffs))

    b2 = np.abs(g1.coeffs[1 : n + 1]) ** 2
    lhs = np.cumsum(b2)
    rhs = np.cumsum(lam ** (2 * np.arange(1, n + 1)))
    slack = rhs - lhs
    cmax = float(np.max(np.abs(g2.coeffs[1 : n + 1])))
    return {
        "n": n,
        "lambda": lam,
        "partial_sum_slack_min": float(np.min(slack)),
        "partial_sums_hold": bool(np.all(lhs <= rhs + 1e-9)),
        "c_max": cmax,
        "c_bounded": bool(cmax <= 1 + 1e-9),
    }


# ---------------------------------------------------------------------------
# v(x) and B_a(z)

_SMALL = 1e-3


def v_of_x(x: float) -> float:
    """v(x) = int_0^1 (x + t)/(1 + x t) dt, the sharp antiderivative bound.

    Closed form 1/x - ((1 - x^2)/x^2) log(1 + x) for x away from 0; a short
    series near 0 avoids the cancellation of the two large terms.  v(0) = 1/2.
    """
    x = float(x)
    if not (0 <= x < 1):
        raise OutOfRange("x must lie in [0, 1)")
    if x < _SMALL:
        # v(x) = 1/2 + sum_{k>=1} (-1)^{k+1} 2 x^k / (k (k + 2))
        acc = 0.0
        for k in range(10, 0, -1):
            acc += (-1) ** (k + 1) * 2.0 / (k * (k + 2)) * x**k
        return 0.5 + acc
    return 1 / x - (1 - x * x) / (x * x) * math.log1p(x)


def b_a(a: complex, z: complex) -> complex:
    """Majorant B_a(z) of (1/z) int_0^z omega for omega with omega(0) = a.

    Branches: the constant a for |a| = 1, z/2 for a = 0 (covered by the
    series path), otherwise 1/conj(a) - ((1-|a|^2)/(conj(a)^2 z)) log(1+conj(a) z)
    with the principal logarithm.
    """
    a = complex(a)
    z = complex(z)
    if abs(z) > 1 + 1e-12:
        raise OutsideDisk(f"|z| = {abs(z):.6f} > 1")
    if abs(abs(a) - 1) <= 1e-12:
        return a
    w = np.conj(a) * z
    if abs(1 + w) <= 1e-9:
        raise BranchPointSingularity("conj(a) z at the branch point -1")
    if abs(w) < _SMALL:
        # B_a(z) = a + (1 - |a|^2) z sum_{j>=0} (-w)^j / (j + 2)
        acc = 0j
        for j in range(11, -1, -1):
            acc = acc * (-w) + 1.0 / (j + 2)
        return a + (1 - abs(a) ** 2) * z * acc
    return complex(1 / np.conj(a) - (1 - abs(a) ** 2) / (np.conj(a) ** 2 * z) * np.log1p(w))


def b_a_series(a: complex, rotation: float = 0.0, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Taylor series of B_a(z e^{i rotation}) about 0."""
    a = complex(a)
    c = np.zeros(order + 1, dtype=complex)
    c[0] = a
    if abs(abs(a) - 1) > 1e-12 and order >= 1:
        k = np.arange(1, order + 1)
        c[1:] = (1 - abs(a) ** 2) * (-np.conj(a)) ** (k - 1) / (k + 1)
        c[1:] *= np.exp(1j * rotation * k)
    elif abs(abs(a) - 1) <= 1e-12:
        pass  # constant branch
    return TruncatedSeries(c)


def _golden_max(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    # golden-section maximization of a unimodal-on-[lo,hi] function
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    t = 0.5 * (a + b)
    return t, f(t)


def max_boundary_ba(a: complex, scan: int = 4096) -> tuple[float, float]:
    """(t*, max_t |B_a(e^{it})|) by dense scan plus golden-section refinement."""
    a = complex(a)
    if abs(abs(a) - 1) <= 1e-12:
        return 0.0, abs(a)
    ts = np.linspace(0.0, 2 * math.pi, scan, endpoint=False)
    vals = np.array([abs(b_a(a, cmath.exp(1j * t))) for t in ts])
    i = int(np.argmax(vals))
    step = 2 * math.pi / scan
    f = lambda t: abs(b_a(a, cmath.exp(1j * t)))
    t_star, value = _golden_max(f, ts[i] - step, ts[i] + step, 1e-10)
    return t_star % (2 * math.pi), value


def v_of_omega(omega: DiskFunction, scan: int = 4096) -> float:
    """max over the closed disk of |int_0^z omega|; the integral is analytic,
    so the maximum sits on the boundary circle."""
    ts = np.linspace(0.0, 2 * math.pi, scan, endpoint=False)
    vals = np.array([abs(antiderivative(omega, cmath.exp(1j * t))) for t in ts])
    i = int(np.argmax(vals))
    step = 2 * math.pi / scan
    f = lambda t: abs(antiderivative(omega, cmath.exp(1j * t)))
    _, value = _golden_max(f, ts[i] - step, ts[i] + step, 1e-10)
    return value


# ---------------------------------------------------------------------------
# F(R, r) root analysis


def f_quadratic(lam: float, R: float, r: float) -> float:
    """F(R, r) = lam R^2 r^2 - r [R(1+lam) + 1 - lam] + lam."""
    if not (0 < lam < 1) or not (0 < R < 1) or not (0 <= r <= 1):
        raise OutOfRange("need lam, R in (0,1) and r in [0,1]")
    return lam * R * R * r * r - r * (R * (1 + lam) + 1 - lam) + lam


def f_root_in_unit_interval(lam: float, R: float) -> float | None:
    """The root of F(R, .) in (0, 1), if any.

    The two roots multiply to 1/R^2 > 1 and F(R, 0) = lam > 0, so a root in
    (0, 1) exists iff F(R, 1) < 0, and then it is the smaller root.
    """
    if f_quadratic(lam, R, 1.0) >= 0:
        return None
    a = lam * R * R
    b = -(R * (1 + lam) + 1 - lam)
    c = lam
    disc = b * b - 4 * a * c
    return (-b - math.sqrt(disc)) / (2 * a)


def r_star(lam: float) -> float:
    """Threshold R above which F(R, .) has a root in (0, 1), for lam in (1/2, 1):
    (1 + lam - sqrt((1 - lam)(1 + 7 lam))) / (2 lam)."""
    if not (0.5 < lam < 1):
        raise OutOfRange("lambda must lie in (1/2, 1)")
    return (1 + lam - math.sqrt((1 - lam) * (1 + 7 * lam))) / (2 * lam)


# ---------------------------------------------------------------------------
# contraction-mapping zero finder


@dataclass(frozen=True)
class FixedPointResult:
    z0: complex
    iterations: int
    residuals: tuple
    contraction_constant: float
    v: float

    def to_json(self) -> dict:
        return {
            "z0": [self.z0.real, self.z0.imag],
            "iterations": self.iterations,
            "residuals": list(self.residuals),
            "contraction_constant": self.contraction_constant,
            "v": self.v,
        }


def fixed_point_zero(
    a2: complex,
    lam: float,
    omega: DiskFunction,
    r: float,
    tol: float = 1e-12,
    max_iter: int = 10000,
) -> FixedPointResult:
    """Zero of q(z) = 1 - a2 z + lam z int_0^z omega inside |z| <= r, by
    iterating the contraction F(z) = (1 + lam z int_0^z omega) / a2 from 0.

    Raises NotContractive unless F maps the closed r-disk into itself with
    Lipschitz constant lam (r + v)/|a2| < 1, where v bounds the antiderivative.
    """
    if not (0 < r < 1):
        raise OutOfRange("r must lie in (0, 1)")
    a2 = complex(a2)
    v = v_of_omega(omega)
    into = (1 + lam * r * v) / abs(a2)
    lip = lam * (r + v) / abs(a2)
    if into > r + 1e-9 or lip >= 1:
        raise NotContractive(
            f"map radius {into:.6f} vs r = {r}, Lipschitz constant {lip:.6f}"
        )
    z = 0j
    residuals = []
    for it in range(1, max_iter + 1):
        z_next = (1 + lam * z * antiderivative(omega, z)) / a2
        step = abs(z_next - z)
        residuals.append(step)
        z = z_next
        if step < tol:
            return FixedPointResult(
                z0=z,
                iterations=it,
                residuals=tuple(residuals),
                contraction_constant=lip,
                v=v,
            )
    raise NoConvergence(f"no convergence after {max_iter} iterations")


# ---------------------------------------------------------------------------
# admissible region for a2


@dataclass(frozen=True)
class RegionA2:
    """Admissible region for a2 given omega: the bounded component enclosed by
    the curve 1/z + lam int_0^z omega sampled on the unit circle."""

    lam: float
    omega_descriptor: str
    thetas: np.ndarray
    curve: BoundaryRegion

    def contains(self, a2: complex) -> str:
        return self.curve.contains(complex(a2))

    def to_csv(self) -> str:
        lines = ["theta,re,im"]
        for t, p in zip(self.thetas, self.curve.samples):
            lines.append(f"{t:.17g},{p.real:.17g},{p.imag:.17g}")
        return "\n".join(lines) + "\n"

    def to_svg(self, size: int = 512) -> str:
        pts = self.curve.samples
        lo = complex(np.min(pts.real), np.min(pts.imag))
        hi = complex(np.max(pts.real), np.max(pts.imag))
        span = max(hi.real - lo.real, hi.imag - lo.imag, 1e-9)
        pad = 0.05 * span
        scale = size / (span + 2 * pad)

        def sx(p):
            return (p.real - lo.real + pad) * scale

        def sy(p):
            return size - (p.imag - lo.imag + pad) * scale

        path = "M " + " L ".join(f"{sx(p):.3f} {sy(p):.3f}" for p in pts) + " Z"
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
            f'viewBox="0 0 {size} {size}">\n'
            f'<path d="{path}" fill="none" stroke="black" stroke-width="1"/>\n'
            "</svg>\n"
        )


def c_omega_curve(omega: DiskFunction, lam: float, resolution: int = 512) -> RegionA2:
    """Sample the forbidden-value curve 1/z + lam int_0^z omega on the unit
    circle and package the containment test for candidate a2 values.

    The curve is injective in theory; a numerical check flags samples at
    angular distance above 4 grid steps that come closer than 1e-6.
    """
    if resolution < 64:
        raise OutOfRange("resolution must be >= 64")
    thetas = np.linspace(0.0, 2 * math.pi, resolution + 1)
    omega_vals = np.array(
        [antiderivative(omega, cmath.exp(1j * t)) for t in thetas[:-1]]
    )
    pts = np.exp(-1j * thetas[:-1]) + lam * omega_vals
    pts = np.concatenate([pts, pts[:1]])

    open_pts = pts[:-1]
    n = len(open_pts)
    idx = np.arange(n)
    sep = np.abs(idx[:, None] - idx[None, :])
    sep = np.minimum(sep, n - sep)
    dist = np.abs(open_pts[:, None] - open_pts[None, :])
    suspicious = (sep > 4) & (dist < 1e-6)
    if np.any(suspicious):
        raise SelfIntersectionSuspected(
            f"{int(np.count_nonzero(suspicious)) // 2} close sample pairs"
        )

    region = RegionA2(
        lam=lam,
        omega_descriptor=repr(omega),
        thetas=thetas,
        curve=BoundaryRegion(pts),
    )
    centroid = complex(np.mean(open_pts))
    wn = region.curve.winding_number(centroid)
    if abs(wn) != 1:
        raise SelfIntersectionSuspected(f"winding number {wn} around centroid")
    return region


# ---------------------------------------------------------------------------
# sharpness constructions


def sharpness_g_thm5(lam: float, a: float, order: int = DEFAULT_ORDER) -> tuple:
    """Extremal candidate attaining |a2| = 1 + lam v(a) for real a in (0, 1).

    Uses omega(z) = (z + a)/(1 + a z) and verifies that the two expressions
    for the denominator G agree, that G has no interior zero on the grid, and
    that G vanishes at z = 1 (which is why the bound is attained only in the
    boundary limit).
    """
    if not (0 < a < 1):
        raise OutOfRange("a must lie in (0, 1)")
    v = v_of_x(a)
    a2 = 1 + lam * v
    omega = MoebiusShift(a, 0.0)
    cand = q_from_omega(a2, lam, omega, order=order)

    rng_pts = [
        0.97 * cmath.exp(2j * math.pi * k / 100) * (0.3 + 0.7 * ((7 * k) % 100) / 100)
        for k in range(100)
    ]
    disagree = 0.0
    for z in rng_pts:
        om = antiderivative(omega, z)
        expr1 = 1 - a2 * z + lam * z * om
        expr2 = 1 - z - lam * z * (v - om)
        disagree = max(disagree, abs(expr1 - expr2))

    grid = GridSpec()
    theta = np.linspace(0.0, 2 * math.pi, grid.angles, endpoint=False)
    ring = np.exp(1j * theta)
    min_abs = math.inf
    for r in grid.radii:
        vals = np.abs(series_eval_many(cand.q, r * ring))
        min_abs = min(min_abs, float(np.min(vals)))

    g_at_1 = 1 - 1 - lam * 1 * (v - antiderivative(omega, 1.0))

    report = {
        "a2": a2,
        "v": v,
        "expr_disagreement": disagree,
        "min_interior_abs_g": min_abs,
        "g_at_1_abs": abs(g_at_1),
        "bound_residual": abs(abs(a2) - (1 + lam * v)),
    }
    return a2, cand, report


def sharpness_construction_thm6(lam: float, a: complex, order: int = DEFAULT_ORDER) -> tuple:
    """Sharpness witness for |a2| <= 1 + lam max_t |B_a(e^{it})|, |a| < 1.

    Returns (theta, psi, omega, a2, D, report) where D is the series of the
    denominator 1 - a2 z + lam z^2 B_a(z e^{i psi}) and f = z/D attains the
    bound.
    """
    a = complex(a)
    if abs(a) >= 1:
        raise OutOfRange("|a| must be < 1")
    t0, value = max_boundary_ba(a)
    B = b_a(a, cmath.exp(1j * t0))
    alpha = cmath.phase(B) if abs(B) > 0 else 0.0
    theta = -alpha / 2
    psi = t0 - theta
    omega = MoebiusShift(a, psi)
    a2 = cmath.exp(-1j * theta) + lam * cmath.exp(1j * theta) * B

    ba_rot = b_a_series(a, rotation=psi, order=order)
    d = np.zeros(order + 1, dtype=complex)
    d[0] = 1.0
    if order >= 1:
        d[1] = -a2
    d[2:] += lam * ba_rot.coeffs[:-2]
    D = TruncatedSeries(d)

    zb = cmath.exp(1j * theta)
    d_boundary = 1 - a2 * zb + lam * zb * zb * b_a(a, zb * cmath.exp(1j * psi))

    grid = GridSpec()
    min_abs = math.inf
    thg = np.linspace(0.0, 2 * math.pi, grid.angles, endpoint=False)
    for r in grid.radii:
        for t in thg[:: max(1, grid.angles // 180)]:
            z = r * cmath.exp(1j * t)
            val = 1 - a2 * z + lam * z * z * b_a(a, z * cmath.exp(1j * psi))
            min_abs = min(min_abs, abs(val))

    ident = 0.0
    for k in range(100):
        z = 0.95 * cmath.exp(2j * math.pi * k / 100) * (0.2 + 0.8 * ((13 * k) % 100) / 100)
        ident = max(ident, abs(antiderivative(omega, z) - z * b_a(a, z * cmath.exp(1j * psi))))

    report = {
        "t0": t0,
        "alpha": alpha,
        "max_boundary_ba": value,
        "d_boundary_residual": abs(d_boundary),
        "min_interior_abs_d": min_abs,
        "integral_identity_max_err": ident,
        "a2_bound_residual": abs(abs(a2) - (1 + lam * value)),
    }
    return theta, psi, omega, a2, D, report


# ---------------------------------------------------------------------------
# bound table


@dataclass
class BoundTable:
    """Rows (n, conjectured bound, proven bound, max observed |a_n|, family)."""

    rows: list

    def __post_init__(self):
        for n, conj, th2, obs, fam in self.rows:
            if th2 < conj - 1e-12:
                raise ValueError(f"proven bound below conjectured bound at n = {n}")

    def to_csv(self) -> str:
        lines = ["n,conjecture,theorem2,observed_max,family"]
        for n, conj, th2, obs, fam in self.rows:
            lines.append(f"{n},{conj:.17g},{th2:.17g},{obs:.17g},{fam}")
        return "\n".join(lines) + "\n"

    def violations(self, tol: float = 1e-9) -> list:
        return [row for row in self.rows if row[3] > row[1] + tol]
