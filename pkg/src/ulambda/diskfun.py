"""Parametric families of analytic self-maps of the unit disk.

Every family here is bounded by 1 on the disk *by construction* (Moebius
transforms, Blaschke products, rotated monomials, polynomials normalized by
the sum of absolute coefficients), so membership in the class of unit-bounded
functions never rests on a numerical optimization.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BasePointOutsideClosedDisk,
    OutsideDisk,
    ZeroOnOrOutsideBoundary,
)
from .series import (
    DEFAULT_ORDER,
    TruncatedSeries,
    series_mul,
    series_reciprocal,
)

_BOUNDARY_SAMPLES = 2048
_BOUNDARY_SLACK = 1e-9


class DiskFunction:
    """Analytic function with sup norm <= 1 on the unit disk.

    Subclasses provide pointwise evaluation, a closed-form derivative, and
    exact Taylor coefficients about 0.
    """

    def __call__(self, z):
        return self.eval(z)

    def eval(self, z):
        raise NotImplementedError

    def deriv(self, z):
        raise NotImplementedError

    def taylor(self, order: int = DEFAULT_ORDER) -> TruncatedSeries:
        raise NotImplementedError

    def base_point(self) -> complex:
        """Value at the origin."""
        return complex(self.eval(0j))

    def _check_bounded(self):
        t = np.linspace(0.0, 2 * math.pi, _BOUNDARY_SAMPLES, endpoint=False)
        vals = self.eval(np.exp(1j * t))
        sup = float(np.max(np.abs(vals)))
        if not sup <= 1 + _BOUNDARY_SLACK:
            raise ValueError(f"boundary sup {sup:.12f} exceeds 1")


@dataclass(frozen=True)
class MoebiusShift(DiskFunction):
    """w(z) = (a + z e^{i psi}) / (1 + conj(a) z e^{i psi}); w(0) = a.

    For |a| = 1 the transform degenerates to the constant a.
    """

    a: complex
    psi: float = 0.0

    def __post_init__(self):
        a = complex(self.a)
        if abs(a) > 1 + 1e-12:
            raise BasePointOutsideClosedDisk(f"|a| = {abs(a):.6f} > 1")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "psi", float(self.psi))
        self._check_bounded()

    @property
    def _degenerate(self) -> bool:
        return abs(self.a) >= 1 - 1e-12

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        if self._degenerate:
            return np.broadcast_to(np.asarray(self.a), z.shape).copy() if z.ndim else self.a
        w = z * cmath.exp(1j * self.psi)
        out = (self.a + w) / (1 + np.conj(self.a) * w)
        return out if z.ndim else complex(out)

    def deriv(self, z):
        z = np.asarray(z, dtype=complex)
        if self._degenerate:
            return np.zeros(z.shape, dtype=complex) if z.ndim else 0j
        e = cmath.exp(1j * self.psi)
        out = e * (1 - abs(self.a) ** 2) / (1 + np.conj(self.a) * z * e) ** 2
        return out if z.ndim else complex(out)

    def taylor(self, order: int = DEFAULT_ORDER) -> TruncatedSeries:
        c = np.zeros(order + 1, dtype=complex)
        c[0] = self.a
        if not self._degenerate and order >= 1:
            e = cmath.exp(1j * self.psi)
            lead = (1 - abs(self.a) ** 2)
            # c_k = e^{ik psi} (1-|a|^2) (-conj(a))^{k-1}
            k = np.arange(1, order + 1)
            c[1:] = lead * e**k * (-np.conj(self.a)) ** (k - 1)
        return TruncatedSeries(c)


@dataclass(frozen=True)
class Blaschke(DiskFunction):
    """e^{i rot} * prod_k (z - b_k) / (1 - conj(b_k) z), zeros strictly inside."""

    zeros: tuple = ()
    rotation: float = 0.0

    def __post_init__(self):
        zs = tuple(complex(b) for b in self.zeros)
        for b in zs:
            if abs(b) >= 1:
                raise ZeroOnOrOutsideBoundary(f"zero with |b| = {abs(b):.6f} >= 1")
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "rotation", float(self.rotation))
        self._check_bounded()

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.full(z.shape, cmath.exp(1j * self.rotation), dtype=complex)
        for b in self.zeros:
            out = out * (z - b) / (1 - np.conj(b) * z)
        return out if z.ndim else complex(out)

    def deriv(self, z):
        z = np.asarray(z, dtype=complex)
        factors = [(z - b) / (1 - np.conj(b) * z) for b in self.zeros]
        dfactors = [
            (1 - abs(b) ** 2) / (1 - np.conj(b) * z) ** 2 for b in self.zeros
        ]
        out = np.zeros(z.shape, dtype=complex)
        for k in range(len(self.zeros)):
            term = dfactors[k]
            for j, f in enumerate(factors):
                if j != k:
                    term = term * f
            out = out + term
        out = out * cmath.exp(1j * self.rotation)
        return out if z.ndim else complex(out)

    def taylor(self, order: int = DEFAULT_ORDER) -> TruncatedSeries:
        acc = TruncatedSeries.from_coeffs([cmath.exp(1j * self.rotation)], order=order)
        for b in self.zeros:
            num = TruncatedSeries.from_coeffs([-b, 1.0], order=order)
            acc = series_mul(acc, num)
            if b != 0:
                den = TruncatedSeries.from_coeffs([1.0, -np.conj(b)], order=order)
                acc = series_mul(acc, series_reciprocal(den))
        return acc


@dataclass(frozen=True)
class Monomial(DiskFunction):
    """e^{i theta} z^k for k >= 1."""

    theta: float = 0.0
    k: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("monomial degree must be >= 1")
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "k", int(self.k))

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        out = cmath.exp(1j * self.theta) * z**self.k
        return out if z.ndim else complex(out)

    def deriv(self, z):
        z = np.asarray(z, dtype=complex)
        out = cmath.exp(1j * self.theta) * self.k * z ** (self.k - 1)
        return out if z.ndim else complex(out)

    def taylor(self, order: int = DEFAULT_ORDER) -> TruncatedSeries:
        c = np.zeros(order + 1, dtype=complex)
        if self.k <= order:
            c[self.k] = cmath.exp(1j * self.theta)
        return TruncatedSeries(c)


@dataclass(frozen=True)
class ScaledPolynomial(DiskFunction):
    """p(z) / normalizer with normalizer >= sum |p_k|, hence bounded by 1."""

    raw: tuple = (0.0,)
    normalizer: float = field(default=0.0)

    def __post_init__(self):
        raw = tuple(complex(c) for c in self.raw)
        total = float(sum(abs(c) for c in raw))
        norm = float(self.normalizer)
        if norm == 0.0:
            norm = total if total > 0 else 1.0
        if norm < total - 1e-12:
            raise ValueError(
                f"normalizer {norm} below coefficient sum {total}: bound not certified"
            )
        object.__setattr__(self, "raw", raw)
        object.__setattr__(self, "normalizer", norm)

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros(z.shape, dtype=complex)
        for c in self.raw[::-1]:
            acc = acc * z + c
        acc = acc / self.normalizer
        return acc if z.ndim else complex(acc)

    def deriv(self, z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros(z.shape, dtype=complex)
        for k in range(len(self.raw) - 1, 0, -1):
            acc = acc * z + k * self.raw[k]
        acc = acc / self.normalizer
        return acc if z.ndim else complex(acc)

    def taylor(self, order: int = DEFAULT_ORDER) -> TruncatedSeries:
        return TruncatedSeries.from_coeffs(
            [c / self.normalizer for c in self.raw], order=order
        )


def schwarz_pick_envelope(a_mod: float, r: float) -> float:
    """Sharp bound (|a| + r) / (1 + |a| r) on |w(z)| when w(0) = a, |z| = r."""
    if not (0 <= a_mod <= 1 and 0 <= r <= 1):
        raise ValueError("arguments must lie in [0, 1]")
    return (a_mod + r) / (1 + a_mod * r)


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _segment_integral(fun: DiskFunction, z0: complex, z1: complex) -> complex:
    # 16-point Gauss-Legendre on the straight segment [z0, z1]
    mid = 0.5 * (z0 + z1)
    half = 0.5 * (z1 - z0)
    pts = mid + half * _GL_NODES
    vals = fun.eval(np.asarray(pts, dtype=complex))
    return complex(half * np.dot(_GL_WEIGHTS, vals))


def antiderivative(fun: DiskFunction, z: complex) -> complex:
    """Line integral of fun along [0, z]; one GL segment for |z| <= 0.5, two
    otherwise (the integrands are analytic and bounded by 1)."""
    z = complex(z)
    if abs(z) > 1 + 1e-12:
        raise OutsideDisk(f"|z| = {abs(z):.6f} > 1")
    if abs(z) <= 0.5:
        return _segment_integral(fun, 0j, z)
    return _segment_integral(fun, 0j, z / 2) + _segment_integral(fun, z / 2, z)


def antiderivative_boundary(fun: DiskFunction, thetas: np.ndarray) -> np.ndarray:
    """Vectorized antiderivative at e^{i theta} for an array of angles."""
    return np.array(
        [antiderivative(fun, cmath.exp(1j * t)) for t in np.asarray(thetas)]
    )


def diskfun_from_json(obj: dict) -> DiskFunction:
    """Build a DiskFunction from its JSON description.

    Schemas::

        {"kind": "moebius", "a": <complex>, "psi": <float>}
        {"kind": "blaschke", "zeros": [<complex>, ...], "rotation": <float>}
        {"kind": "monomial", "theta": <float>, "k": <int>}
        {"kind": "poly", "coeffs": [<complex>, ...], "normalizer": <float, optional>}

    Complex numbers are written as a [re, im] pair or a bare real number.
    """
    kind = obj.get("kind")
    if kind == "moebius":
        return MoebiusShift(a=_cplx(obj["a"]), psi=float(obj.get("psi", 0.0)))
    if kind == "blaschke":
        return Blaschke(
            zeros=tuple(_cplx(b) for b in obj["zeros"]),
            rotation=float(obj.get("rotation", 0.0)),
        )
    if kind == "monomial":
        return Monomial(theta=float(obj.get("theta", 0.0)), k=int(obj.get("k", 1)))
    if kind == "poly":
        return ScaledPolynomial(
            raw=tuple(_cplx(c) for c in obj["coeffs"]),
            normalizer=float(obj.get("normalizer", 0.0)),
        )
    raise ValueError(f"unknown disk-function kind: {kind!r}")


def _cplx(v) -> complex:
    if isinstance(v, (list, tuple)):
        return complex(float(v[0]), float(v[1]))
    return complex(float(v))
