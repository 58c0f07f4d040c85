import numpy as np
import pytest

from ulambda.geometry import BoundaryRegion


def unit_circle(n=256):
    t = np.linspace(0, 2 * np.pi, n + 1)
    return BoundaryRegion(np.exp(1j * t))


class TestWinding:
    def test_circle_contains_center(self):
        assert unit_circle().winding_number(0j) == 1

    def test_circle_excludes_far_point(self):
        assert unit_circle().winding_number(2 + 0j) == 0

    def test_reversed_orientation(self):
        t = np.linspace(0, 2 * np.pi, 257)
        region = BoundaryRegion(np.exp(-1j * t))
        assert region.winding_number(0j) == -1
        assert region.contains(0j) == "inside"


class TestDistance:
    def test_distance_from_center(self):
        assert abs(unit_circle().distance(0j) - 1) < 1e-3

    def test_distance_outside(self):
        assert abs(unit_circle().distance(3 + 0j) - 2) < 1e-3


class TestContains:
    def test_classification(self):
        region = unit_circle(1024)
        assert region.contains(0.5 + 0.2j) == "inside"
        assert region.contains(1.5j) == "outside"
        assert region.contains(1.0 + 0j) == "boundary"

    def test_open_curve_rejected(self):
        pts = np.array([0, 1, 1 + 1j, 1j], dtype=complex)
        with pytest.raises(ValueError):
            BoundaryRegion(pts)
