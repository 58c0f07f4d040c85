"""The class U(lambda): membership operator, representations, boundary
obstruction and numerical subordination testing.

A candidate member f is carried as q(z) = z/f(z) with q(0) = 1, which keeps
all series work away from the zero of f at the origin.  The membership
quantity is q(z) - z q'(z) - 1, whose modulus must stay below lambda on the
disk.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .diskfun import DiskFunction
from .errors import (
    BasePointNotZero,
    HypothesisViolated,
    NotBoundaryMax,
    OutOfRange,
    OutsideDisk,
)
from .geometry import BoundaryRegion
from .series import (
    DEFAULT_ORDER,
    TruncatedSeries,
    series_eval_many,
    series_integrate,
    series_mul,
    series_reciprocal,
    series_shift,
)

DEFAULT_RADII = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 0.999)
DEFAULT_ANGLES = 720
MEMBERSHIP_TOL = 1e-6


@dataclass(frozen=True)
class GridSpec:
    """Concentric evaluation grid: circles of the given radii, uniformly
    sampled in angle."""

    radii: tuple = DEFAULT_RADII
    angles: int = DEFAULT_ANGLES

    def __post_init__(self):
        r = tuple(float(x) for x in self.radii)
        if not r or any(not (0 < x < 1) for x in r):
            raise ValueError("radii must lie strictly in (0, 1)")
        object.__setattr__(self, "radii", tuple(sorted(r)))
        object.__setattr__(self, "angles", int(self.angles))

    @staticmethod
    def from_json(obj: dict) -> "GridSpec":
        return GridSpec(
            radii=tuple(obj.get("radii", DEFAULT_RADII)),
            angles=int(obj.get("angles", DEFAULT_ANGLES)),
        )

    def describe(self) -> dict:
        return {"radii": list(self.radii), "angles": self.angles}


@dataclass(frozen=True)
class UCandidate:
    """Candidate member of U(lambda), stored via q(z) = z/f(z), q(0) = 1."""

    q: TruncatedSeries
    lam: float
    provenance: str | None = None

    def __post_init__(self):
        if abs(self.q.coeffs[0] - 1) > 1e-12:
            raise ValueError("q(0) must equal 1")
        if not (0 < self.lam <= 1):
            raise ValueError("lambda must lie in (0, 1]")
        # pin q0 to exactly 1
        c = self.q.coeffs.copy()
        c[0] = 1.0
        object.__setattr__(self, "q", TruncatedSeries(c))

    @property
    def a2(self) -> complex:
        """Second Taylor coefficient of f; equals -q_1."""
        return -complex(self.q.coeffs[1]) if self.q.order >= 1 else 0j


@dataclass(frozen=True)
class MembershipReport:
    sup_estimate: float
    argmax: complex
    margin: float
    verdict: str  # Inside | Outside | Inconclusive
    grid: dict
    radial_max: tuple = ()

    def to_json(self) -> dict:
        return {
            "sup_estimate": self.sup_estimate,
            "argmax": [self.argmax.real, self.argmax.imag],
            "margin": self.margin,
            "verdict": self.verdict,
            "grid": self.grid,
            "radial_max": list(self.radial_max),
        }


def _u_series(cand: UCandidate) -> TruncatedSeries:
    # q - z q' - 1 has coefficients (1 - k) q_k, and constant term q_0 - 1 = 0
    k = np.arange(len(cand.q.coeffs))
    c = (1 - k) * cand.q.coeffs
    c[0] -= 1.0
    return TruncatedSeries(c)


def u_of_q(cand: UCandidate, z: complex) -> complex:
    """Membership quantity q(z) - z q'(z) - 1 at a point of the open disk."""
    z = complex(z)
    if abs(z) >= 1:
        raise OutsideDisk(f"|z| = {abs(z):.6f} >= 1")
    return complex(series_eval_many(_u_series(cand), np.asarray(z))[()])


def sup_u(cand: UCandidate, grid: GridSpec = GridSpec(), tol: float = MEMBERSHIP_TOL) -> MembershipReport:
    """Estimate sup |U_f| over the grid.

    The quantity is analytic, so per-radius maxima are nondecreasing in the
    radius and the outermost circle decides the estimate.  The verdict is a
    numerical report, not a proof: Inside / Outside when the margin exceeds
    tol, Inconclusive otherwise.
    """
    u = _u_series(cand)
    theta = np.linspace(0.0, 2 * math.pi, grid.angles, endpoint=False)
    ring = np.exp(1j * theta)
    radial = []
    best = -1.0
    best_z = 0j
    for r in grid.radii:
        vals = np.abs(series_eval_many(u, r * ring))
        i = int(np.argmax(vals))
        m = float(vals[i])
        radial.append(m)
        if m > best:
            best, best_z = m, complex(r * ring[i])
    margin = cand.lam - best
    if best > cand.lam + tol:
        verdict = "Outside"
    elif best < cand.lam - tol:
        verdict = "Inside"
    else:
        verdict = "Inconclusive"
    return MembershipReport(
        sup_estimate=best,
        argmax=best_z,
        margin=margin,
        verdict=verdict,
        grid=grid.describe(),
        radial_max=tuple(radial),
    )


def count_disk_zeros(cand: UCandidate, radius: float = 0.999, samples: int = 8192) -> int:
    """Number of zeros of q inside |z| < radius, by the argument principle.

    A zero of q is a pole of f = z/q, so a candidate whose q vanishes in the
    disk does not describe a member no matter what the operator sweep says.
    q(0) = 1, so the winding of the image of the circle about 0 counts the
    zeros enclosed.
    """
    if not (0 < radius < 1):
        raise OutOfRange(f"radius must lie in (0, 1), got {radius}")
    theta = np.linspace(0.0, 2 * math.pi, samples, endpoint=False)
    vals = series_eval_many(cand.q, radius * np.exp(1j * theta))
    phases = np.unwrap(np.angle(np.append(vals, vals[:1])))
    return round(float(phases[-1] - phases[0]) / (2 * math.pi))


def q_from_phi(lam: float, phi: DiskFunction, order: int = DEFAULT_ORDER) -> UCandidate:
    """Candidate with z/f = 1 - (1+lam) phi + lam phi^2, phi fixing 0."""
    if abs(phi.base_point()) > 1e-9:
        raise BasePointNotZero(f"|phi(0)| = {abs(phi.base_point()):.3e}")
    p = phi.taylor(order)
    q = np.zeros(order + 1, dtype=complex)
    q[0] = 1.0
    q -= (1 + lam) * p.coeffs
    q += lam * series_mul(p, p).coeffs
    return UCandidate(TruncatedSeries(q), lam, provenance="phi")


def q_from_omega(
    a2: complex, lam: float, omega: DiskFunction, order: int = DEFAULT_ORDER
) -> UCandidate:
    """Candidate with z/f = 1 - a2 z + lam z * int_0^z omega."""
    integ = series_integrate(omega.taylor(order))
    q = series_shift(integ).coeffs * lam
    q[0] += 1.0
    if order >= 1:
        q[1] -= complex(a2)
    return UCandidate(TruncatedSeries(q), lam, provenance="omega")


def taylor_of_f(cand: UCandidate) -> TruncatedSeries:
    """Series of f(z)/z = 1/q(z); coefficient k is the Taylor coefficient
    a_{k+1} of f."""
    return series_reciprocal(cand.q)


def f_coefficient(cand: UCandidate, n: int) -> complex:
    """Taylor coefficient a_n of f, for 1 <= n <= order + 1."""
    if n < 1 or n > cand.q.order + 1:
        raise ValueError(f"coefficient a_{n} not carried at order {cand.q.order}")
    return complex(taylor_of_f(cand).coeffs[n - 1])


def dilate(cand: UCandidate, R: float) -> UCandidate:
    """Candidate for f_R(z) = f(Rz)/R, i.e. q_R(z) = q(Rz)."""
    if not (0 < R < 1):
        raise ValueError("R must lie in (0, 1)")
    k = np.arange(len(cand.q.coeffs))
    return UCandidate(
        TruncatedSeries(cand.q.coeffs * R**k), cand.lam, provenance=cand.provenance
    )


def l_of_phi(lam: float, phi: DiskFunction, z: complex) -> float:
    """|-(1+lam)(phi - z phi') + lam phi (phi - 2 z phi')| at z, closed disk."""
    z = complex(z)
    if abs(z) > 1 + 1e-12:
        raise OutsideDisk(f"|z| = {abs(z):.6f} > 1")
    p = complex(phi.eval(z))
    zdp = z * complex(phi.deriv(z))
    return abs(-(1 + lam) * (p - zdp) + lam * p * (p - 2 * zdp))


def julia_quotient(phi: DiskFunction, theta0: float) -> float:
    """Boundary quotient z0 phi'(z0)/phi(z0) at z0 = e^{i theta0}.

    The point must be a boundary maximum of |phi| (modulus 1); the quotient
    is then real and >= 1.
    """
    z0 = cmath.exp(1j * theta0)
    p = complex(phi.eval(z0))
    if abs(p) < 1 - 1e-9:
        raise NotBoundaryMax(f"|phi(z0)| = {abs(p):.9f} < 1")
    m = z0 * complex(phi.deriv(z0)) / p
    if abs(m.imag) > 1e-9:
        raise NotBoundaryMax(f"quotient not real: imag = {m.imag:.3e}")
    return m.real


def obstruction_value(lam: float, phi: DiskFunction, theta0: float) -> float:
    """lam + (1 + 3 lam)(m(theta0) - 1) at a boundary point where phi = -1.

    A value above lam certifies that the phi-represented f is not in
    U(lambda).  Cross-checked against the membership quantity at z0.
    """
    z0 = cmath.exp(1j * theta0)
    p = complex(phi.eval(z0))
    if abs(p + 1) > 1e-9:
        raise HypothesisViolated(f"phi(e^(i theta0)) = {p:.9f}, expected -1")
    m = julia_quotient(phi, theta0)
    value = lam + (1 + 3 * lam) * (m - 1)
    direct = l_of_phi(lam, phi, z0)
    if abs(value - direct) > 1e-8:
        raise HypothesisViolated(
            f"closed form {value:.12f} disagrees with direct value {direct:.12f}"
        )
    return value


@dataclass(frozen=True)
class SubordinationVerdict:
    verdict: str  # Holds | Fails | Inconclusive
    witness: complex | None = None

    def to_json(self) -> dict:
        out = {"verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = [self.witness.real, self.witness.imag]
        return out


def subordination_check(
    g: TruncatedSeries,
    h_boundary: BoundaryRegion,
    h_at_0: complex,
    test_radii=(0.3, 0.6, 0.9),
    angles: int = 360,
) -> SubordinationVerdict:
    """Numerical test of g < h for a univalent majorant h.

    Checks g(0) = h(0) and that every sampled g(r e^{i theta}) lies inside
    the sampled boundary curve of h.  A sample within the containment
    tolerance of the curve makes the result Inconclusive rather than a
    verdict either way.
    """
    g0 = complex(series_eval_many(g, np.asarray(0j))[()])
    if abs(g0 - complex(h_at_0)) > 1e-9:
        return SubordinationVerdict("Fails", witness=0j)
    theta = np.linspace(0.0, 2 * math.pi, angles, endpoint=False)
    ring = np.exp(1j * theta)
    inconclusive = None
    for r in test_radii:
        pts = series_eval_many(g, r * ring)
        for z, w in zip(r * ring, pts):
            where = h_boundary.contains(complex(w))
            if where == "outside":
                return SubordinationVerdict("Fails", witness=complex(z))
            if where == "boundary" and inconclusive is None:
                inconclusive = complex(z)
    if inconclusive is not None:
        return SubordinationVerdict("Inconclusive", witness=inconclusive)
    return SubordinationVerdict("Holds")


def majorant_h_boundary(lam: float, resolution: int = 4096, tol: float = 1e-7) -> BoundaryRegion:
    """Boundary curve of h(z) = 1 + 2 lam z + lam z^2 (univalent on the disk:
    h' vanishes only at z = -1)."""
    return BoundaryRegion.from_function(
        lambda z: 1 + 2 * lam * z + lam * z**2, resolution=resolution, tol=tol
    )


def extremal_q_boundary(lam: float, resolution: int = 4096, tol: float = 1e-7) -> BoundaryRegion:
    """Boundary curve of (1 - z)(1 - lam z), the extremal q.

    Used for the second subordination of the representation theorem in its
    reciprocal-equivalent form q < (1 - z)(1 - lam z): since inversion is
    injective and the extremal q omits 0 on the open disk, this is the same
    range inclusion as f/z < 1/((1 - z)(1 - lam z)) with a bounded curve.
    """
    return BoundaryRegion.from_function(
        lambda z: (1 - z) * (1 - lam * z), resolution=resolution, tol=tol
    )
