import numpy as np
import pytest
from hypothesis import given, strategies as st

from numrad.hull import convex_hull, hull_contains, hull_distance


def test_square_hull_ccw_and_collinear_dropped():
    pts = [0, 1, 1 + 1j, 1j, 0.5, 0.5 + 0.5j]
    hull = convex_hull(pts)
    assert set(hull) == {0, 1, 1 + 1j, 1j}
    # counter-clockwise: positive signed area
    x, y = hull.real, hull.imag
    assert 0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y) == pytest.approx(1.0)


def test_degenerate_hulls():
    assert list(convex_hull([2 + 1j, 2 + 1j])) == [2 + 1j]
    seg = convex_hull([0, 0.25, 0.5, 1])
    assert set(seg) == {0, 1}
    assert hull_contains(seg, 0.3, 1e-12)
    assert not hull_contains(seg, 0.3 + 1e-6j, 1e-9)
    assert hull_distance(convex_hull([1j]), 0) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        hull_distance(np.array([], dtype=complex), 0)


def test_distance_outside():
    hull = convex_hull([0, 1, 1 + 1j, 1j])
    assert hull_distance(hull, 2 + 0.5j) == pytest.approx(1.0)
    assert hull_distance(hull, 0.5 + 0.5j) == 0.0
    assert hull_contains(hull, 1 + 1e-10, 1e-9)
    assert not hull_contains(hull, 1 + 1e-8, 1e-9)


@given(st.integers(0, 2**32 - 1), st.integers(3, 40))
def test_points_inside_their_hull(seed, k):
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal(k) + 1j * rng.standard_normal(k)
    hull = convex_hull(pts)
    for p in pts:
        assert hull_contains(hull, p, 1e-12)
    # convex combinations stay inside
    w = rng.dirichlet(np.ones(k))
    assert hull_contains(hull, complex(np.dot(w, pts)), 1e-12)
