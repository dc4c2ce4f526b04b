"""Planar convex hulls of complex points and tolerant membership tests."""

from __future__ import annotations

import numpy as np


def _cross(o: complex, a: complex, b: complex) -> float:
    return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)


def convex_hull(points) -> np.ndarray:
    """Counter-clockwise hull vertices (Andrew's monotone chain, collinear points dropped).

    Degenerate inputs come back as one point or the two ends of a segment.
    """
    pts = sorted({(float(z.real), float(z.imag)) for z in np.asarray(points, dtype=complex).ravel()})
    pts = [complex(x, y) for x, y in pts]
    if len(pts) <= 2:
        return np.array(pts, dtype=complex)
    lower: list[complex] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[complex] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return np.array(hull, dtype=complex)


def _segment_distance(z: complex, a: complex, b: complex) -> float:
    d = b - a
    length2 = d.real * d.real + d.imag * d.imag
    if length2 == 0.0:
        return abs(z - a)
    t = ((z - a) * d.conjugate()).real / length2
    t = min(1.0, max(0.0, t))
    return abs(z - (a + t * d))


def hull_distance(hull: np.ndarray, z: complex) -> float:
    """Euclidean distance from ``z`` to the hull (0 inside)."""
    z = complex(z)
    verts = [complex(v) for v in hull]
    if not verts:
        raise ValueError("empty hull")
    if len(verts) == 1:
        return abs(z - verts[0])
    if len(verts) == 2:
        return _segment_distance(z, verts[0], verts[1])
    inside = all(_cross(verts[i], verts[(i + 1) % len(verts)], z) >= 0 for i in range(len(verts)))
    if inside:
        return 0.0
    return min(_segment_distance(z, verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts)))


def hull_contains(hull: np.ndarray, z: complex, tol: float = 0.0) -> bool:
    return hull_distance(hull, z) <= tol
