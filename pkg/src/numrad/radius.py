"""Certified numerical radius and field-of-values queries.

The numerical radius is the maximum over ``theta`` of
``g(theta) = ||Re(e^{i theta} T)||``.  Since ``Re(e^{i(theta + pi)} T)`` is the
negative of ``Re(e^{i theta} T)``, ``g`` has period ``pi`` and only
``[0, pi)`` is swept.  The sweep returns an enclosure ``[lower, upper]`` of
``w(T)``; ``lower`` is an attained value ``g(theta_star)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from numrad.cartesian import circle_combinations, decompose, rotated_real_parts
from numrad.errors import InvalidArgument, NumericalError, Unachievable
from numrad.hull import convex_hull, hull_contains
from numrad.linalg import _freeze, as_matrix, eigh_stack, spectral_norm, spectral_norm_stack
from numrad.sweep import SweepResult, sup_support

DEFAULT_TOL = 1e-9
DEFAULT_ANGLES = 360
_EPS = np.finfo(np.float64).eps


@dataclass(frozen=True)
class RadiusCertificate:
    lower: float
    upper: float
    theta_star: float
    grid_evals: int
    refinement_rounds: int
    trace: tuple[tuple[float, float], ...] = ()
    method: str = "theta"

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def as_dict(self) -> dict:
        return {
            "lower": self.lower, "upper": self.upper, "midpoint": self.midpoint,
            "theta_star": self.theta_star, "grid_evals": self.grid_evals,
            "refinement_rounds": self.refinement_rounds, "method": self.method,
        }


def _check_tol(tol: float, norm_t: float) -> None:
    if not tol > 0:
        raise InvalidArgument(f"tolerance must be positive, got {tol}")
    floor = 1e3 * _EPS * norm_t
    if tol < floor:
        raise Unachievable(f"tolerance {tol:.3e} is below the certifiable floor {floor:.3e}")


def _certificate(res: SweepResult, method: str) -> RadiusCertificate:
    return RadiusCertificate(res.lower, res.upper, res.argmax, res.evals, res.rounds, res.trace, method)


def _eigh_vectors(stack):
    return eigh_stack(stack, vectors=True)


def a_priori_upper(t) -> float:
    """Kittaneh's bound ``w(T) <= (||T|| + ||T^2||^{1/2}) / 2``, rounded upwards.

    It is exact for ``T^2 = 0``, where ``Re(e^{i theta} T)`` has constant norm
    and the sweep alone would have nothing to localise on.
    """
    a = np.asarray(t, dtype=np.complex128)
    _, up = spectral_norm_stack(np.stack([a, a @ a]))
    return float(0.5 * (up[0] + math.sqrt(up[1])) * (1.0 + 4 * _EPS))


def _sweep(t: np.ndarray, tol: float, evaluate, method: str) -> RadiusCertificate:
    pair = decompose(t)
    _check_tol(tol, spectral_norm(t))
    lip = spectral_norm(pair.H.matrix) + spectral_norm(pair.K.matrix)
    if lip == 0.0:
        return RadiusCertificate(0.0, 0.0, 0.0, 0, 0, ((0.0, 0.0),), method)
    res = sup_support(lambda th: evaluate(pair, th), _eigh_vectors, lip, tol, cap=a_priori_upper(t))
    return _certificate(res, method)


def radius_certified(t, tol: float = DEFAULT_TOL) -> RadiusCertificate:
    """Enclose ``w(T)`` by sweeping ``||Re(e^{i theta} T)||`` over ``[0, pi)``."""
    a = as_matrix(t)

    def evaluate(pair, th):
        return (rotated_real_parts(a, th, pair),
                rotated_real_parts(a, th + 0.5 * math.pi, pair, check=False))

    return _sweep(a, tol, evaluate, "theta")


def radius_via_circle(t, tol: float = DEFAULT_TOL) -> RadiusCertificate:
    """Enclose ``w(T)`` as ``sup ||alpha H + beta K||`` over ``alpha^2 + beta^2 = 1``.

    The circle is parametrised as ``(alpha, beta) = (cos phi, sin phi)``; the
    certificate's ``theta_star`` is the maximising ``phi`` in ``[0, pi)``.
    """
    a = as_matrix(t)

    def evaluate(pair, phi):
        c, s = np.cos(phi), np.sin(phi)
        return circle_combinations(pair, c, s), circle_combinations(pair, -s, c)

    return _sweep(a, tol, evaluate, "circle")


def numerical_radius(t, tol: float = DEFAULT_TOL) -> float:
    """Midpoint of :func:`radius_certified`."""
    return radius_certified(t, tol).midpoint


def rayleigh_lower_bound(t, trials: int, seed: int, probes=None) -> float:
    """Largest ``|<T x, x>|`` over seeded random unit vectors (plus optional fixed probes)."""
    if trials < 1:
        raise InvalidArgument(f"trials must be >= 1, got {trials}")
    a = np.asarray(as_matrix(t))
    n = a.shape[0]
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((trials, n)) + 1j * rng.standard_normal((trials, n))
    if probes is not None:
        x = np.vstack([np.atleast_2d(np.asarray(probes, dtype=np.complex128)), x])
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    vals = np.abs(np.einsum("ki,ij,kj->k", np.conj(x), a, x))
    return float(vals.max())


@dataclass(frozen=True)
class FovBoundary:
    angles: np.ndarray
    points: np.ndarray
    support_values: np.ndarray

    def max_modulus(self) -> float:
        return float(np.max(np.abs(self.points)))


def fov_boundary(t, n_angles: int = DEFAULT_ANGLES, residual_tol: float = 1e-10) -> FovBoundary:
    """Boundary points of ``W(T)``: ``<T x, x>`` for top eigenvectors of ``Re(e^{i theta_j} T)``."""
    if n_angles < 8:
        raise InvalidArgument(f"need at least 8 angles, got {n_angles}")
    a = np.asarray(as_matrix(t))
    n = a.shape[0]
    angles = 2.0 * math.pi * np.arange(n_angles) / n_angles
    stack = rotated_real_parts(a, angles)
    values, vecs, _ = eigh_stack(stack, vectors=True)
    x = vecs[:, :, -1]
    scale = max(1.0, float(np.max(np.abs(a))))
    eye = np.eye(n)
    for j in range(n_angles):
        # one step of shifted inverse iteration from the Jacobi vector
        shift = values[j, -1] + 1e-10 * scale
        y = np.linalg.solve(stack[j] - shift * eye, x[j])
        nrm = np.linalg.norm(y)
        if np.isfinite(nrm) and nrm > 0:
            x[j] = y / nrm
    support = np.einsum("ki,kij,kj->k", np.conj(x), stack, x).real
    resid = np.linalg.norm(np.einsum("kij,kj->ki", stack, x) - support[:, None] * x, axis=1)
    if np.any(resid > residual_tol * scale):
        raise NumericalError(f"top eigenvector residual {resid.max():.3e} above {residual_tol:.1e}")
    points = np.einsum("ki,ij,kj->k", np.conj(x), a, x)
    return FovBoundary(_freeze(angles), _freeze(points), _freeze(support))


def fov_contains(boundary: FovBoundary, z: complex, tol: float = 1e-9) -> bool:
    """Whether ``z`` lies in the convex hull of the boundary sample, inflated by ``tol``."""
    if boundary.points.shape[0] < 8:
        raise InvalidArgument("boundary sample needs at least 8 points")
    return hull_contains(convex_hull(boundary.points), complex(z), tol)
