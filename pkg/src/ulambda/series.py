"""Truncated complex power series about the origin.

A series carries coefficients c_0..c_N and its order N.  Arithmetic always
truncates to the minimum order of the operands; no operation extends the
order, so a result never pretends to more precision than its inputs carry.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InnerNotVanishing, NearZeroConstantTerm, OutsideDisk

DEFAULT_ORDER = 64

# Constant terms below this are treated as zero (reciprocal conditioning).
EPS0 = 1e-12


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients c_0..c_N of an analytic germ at 0, truncated at order N."""

    coeffs: np.ndarray = field()

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coeffs must be a nonempty 1-d array")
        if not np.all(np.isfinite(c.view(float))):
            raise ValueError("coefficients must be finite")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> complex:
        return complex(self.coeffs[k])

    @staticmethod
    def from_coeffs(coeffs, order: int | None = None) -> "TruncatedSeries":
        """Build a series, zero-padding (or truncating) to the given order."""
        c = np.asarray(list(coeffs), dtype=complex)
        if order is not None:
            if len(c) > order + 1:
                c = c[: order + 1]
            elif len(c) < order + 1:
                c = np.concatenate([c, np.zeros(order + 1 - len(c))])
        return TruncatedSeries(c)

    @staticmethod
    def zero(order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        return TruncatedSeries(np.zeros(order + 1, dtype=complex))

    @staticmethod
    def one(order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        c = np.zeros(order + 1, dtype=complex)
        c[0] = 1.0
        return TruncatedSeries(c)

    @staticmethod
    def identity(order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        c = np.zeros(order + 1, dtype=complex)
        if order >= 1:
            c[1] = 1.0
        return TruncatedSeries(c)


def _common_order(a: TruncatedSeries, b: TruncatedSeries) -> int:
    return min(a.order, b.order)


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = _common_order(a, b)
    return TruncatedSeries(a.coeffs[: n + 1] + b.coeffs[: n + 1])


def series_sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = _common_order(a, b)
    return TruncatedSeries(a.coeffs[: n + 1] - b.coeffs[: n + 1])


def series_scale(a: TruncatedSeries, c: complex) -> TruncatedSeries:
    return TruncatedSeries(a.coeffs * complex(c))


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the minimum order."""
    n = _common_order(a, b)
    full = np.convolve(a.coeffs[: n + 1], b.coeffs[: n + 1])
    return TruncatedSeries(full[: n + 1])


def series_shift(a: TruncatedSeries) -> TruncatedSeries:
    """Multiply by z, keeping the order (top coefficient drops off)."""
    c = np.empty_like(a.coeffs)
    c[0] = 0.0
    c[1:] = a.coeffs[:-1]
    return TruncatedSeries(c)


def series_reciprocal(a: TruncatedSeries) -> TruncatedSeries:
    """Series r with a*r = 1 up to the order, by the standard recurrence."""
    a0 = complex(a.coeffs[0])
    if abs(a0) <= EPS0:
        raise NearZeroConstantTerm(f"|constant term| = {abs(a0):.3e} <= {EPS0}")
    n = a.order
    r = np.zeros(n + 1, dtype=complex)
    r[0] = 1.0 / a0
    for k in range(1, n + 1):
        r[k] = -np.dot(a.coeffs[1 : k + 1], r[k - 1 :: -1]) / a0
    return TruncatedSeries(r)


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """Horner-style composition outer(inner(z)); inner must vanish at 0."""
    if abs(inner.coeffs[0]) > EPS0:
        raise InnerNotVanishing(f"|inner(0)| = {abs(inner.coeffs[0]):.3e} > {EPS0}")
    n = _common_order(outer, inner)
    inner_n = TruncatedSeries(inner.coeffs[: n + 1])
    acc = TruncatedSeries.from_coeffs([outer.coeffs[n]], order=n)
    for k in range(n - 1, -1, -1):
        acc = series_mul(acc, inner_n)
        c = acc.coeffs.copy()
        c[0] += outer.coeffs[k]
        acc = TruncatedSeries(c)
    return acc


def series_integrate(a: TruncatedSeries) -> TruncatedSeries:
    """Termwise antiderivative with value 0 at 0; top coefficient is dropped
    so the order does not grow."""
    n = a.order
    c = np.zeros(n + 1, dtype=complex)
    k = np.arange(1, n + 1)
    c[1:] = a.coeffs[:-1] / k
    return TruncatedSeries(c)


def series_differentiate(a: TruncatedSeries) -> TruncatedSeries:
    """Termwise derivative; order shrinks by one (constants stay order 0)."""
    n = a.order
    if n == 0:
        return TruncatedSeries.zero(0)
    k = np.arange(1, n + 1)
    return TruncatedSeries(a.coeffs[1:] * k)


def series_eval(a: TruncatedSeries, z: complex) -> complex:
    """Horner evaluation of the truncated sum; |z| <= 1 only."""
    z = complex(z)
    if abs(z) > 1 + 1e-14:
        raise OutsideDisk(f"|z| = {abs(z):.6f} > 1")
    acc = 0j
    for c in a.coeffs[::-1]:
        acc = acc * z + c
    return acc


def series_eval_many(a: TruncatedSeries, z: np.ndarray) -> np.ndarray:
    """Vectorized Horner evaluation over an array of points, |z| <= 1."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > 1 + 1e-14):
        raise OutsideDisk("some |z| > 1")
    acc = np.zeros_like(z)
    for c in a.coeffs[::-1]:
        acc = acc * z + c
    return acc
