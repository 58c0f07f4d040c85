"""Sampled closed curves in the plane with winding-number containment."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class BoundaryRegion:
    """Ordered samples of a closed curve; first and last point coincide.

    Containment is decided by the winding number of the sampled polygon.
    Points closer to the curve than ``tol`` are reported as on-curve, since
    the winding test is unstable exactly there.
    """

    samples: np.ndarray
    tol: float = 1e-7

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        if s.ndim != 1 or len(s) < 4:
            raise ValueError("need at least 4 samples of a closed curve")
        if abs(s[0] - s[-1]) > 1e-9 * max(1.0, float(np.max(np.abs(s)))):
            raise ValueError("curve does not close")
        s = s.copy()
        s[-1] = s[0]
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @staticmethod
    def from_function(fun, resolution: int = 2048, tol: float = 1e-7) -> "BoundaryRegion":
        """Sample fun(e^{i theta}) on a closed uniform angular grid."""
        t = np.linspace(0.0, 2 * np.pi, resolution + 1)
        pts = np.asarray(fun(np.exp(1j * t)), dtype=complex)
        pts[-1] = pts[0]
        return BoundaryRegion(pts, tol=tol)

    def max_gap(self) -> float:
        return float(np.max(np.abs(np.diff(self.samples))))

    def distance(self, p: complex) -> float:
        """Distance from p to the sampled polygon (segment-wise)."""
        a = self.samples[:-1]
        b = self.samples[1:]
        ab = b - a
        ap = p - a
        denom = np.abs(ab) ** 2
        with np.errstate(invalid="ignore", divide="ignore"):
            t = np.real(ap * np.conj(ab)) / np.where(denom == 0, 1.0, denom)
        t = np.clip(t, 0.0, 1.0)
        closest = a + t * ab
        return float(np.min(np.abs(p - closest)))

    def winding_number(self, p: complex) -> int:
        """Winding number of the polygon around p (crossing rule)."""
        x, y = p.real, p.imag
        sx = self.samples.real
        sy = self.samples.imag
        x0, y0 = sx[:-1], sy[:-1]
        x1, y1 = sx[1:], sy[1:]
        # is_left > 0 when p lies left of the directed segment
        is_left = (x1 - x0) * (y - y0) - (x - x0) * (y1 - y0)
        up = (y0 <= y) & (y1 > y) & (is_left > 0)
        down = (y0 > y) & (y1 <= y) & (is_left < 0)
        return int(np.count_nonzero(up)) - int(np.count_nonzero(down))

    def contains(self, p: complex) -> str:
        """Classify p as 'inside', 'outside', or 'boundary' (within tol)."""
        if self.distance(p) <= self.tol:
            return "boundary"
        return "inside" if self.winding_number(p) != 0 else "outside"
