"""Cartesian decomposition ``T = H + iK`` and the rotated real part.

``K`` is stored as the Hermitian matrix ``(T - T*)/(2i)``, not as the
skew-Hermitian ``iK``.  The rotated real part ``Re(e^{i theta} T)`` equals
``cos(theta) H - sin(theta) K``; both formulas are evaluated and compared
on every call unless Python runs with ``-O``, in which case one call in
``CROSS_CHECK_EVERY`` is compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import count

import numpy as np

from numrad.errors import DimensionMismatch, InvalidArgument, NumericalError
from numrad.linalg import HermitianWitness, _freeze, as_matrix, hermitian

CROSS_CHECK_TOL = 1e-13
CROSS_CHECK_EVERY = 64
_calls = count()


@dataclass(frozen=True)
class CartesianPair:
    H: HermitianWitness
    K: HermitianWitness

    @property
    def dim(self) -> int:
        return self.H.dim


def decompose(t) -> CartesianPair:
    a = as_matrix(t)
    adj = np.conj(a.T)
    h = 0.5 * (a + adj)
    # multiplying by -i/2 is exact, so K comes out exactly Hermitian
    k = (a - adj) * (-0.5j)
    return CartesianPair(hermitian(h), hermitian(k))


def recompose(pair: CartesianPair) -> np.ndarray:
    h, k = pair.H.matrix, pair.K.matrix
    if h.shape != k.shape:
        raise DimensionMismatch(f"H is {h.shape}, K is {k.shape}")
    return _freeze(h + 1j * k)


def _should_cross_check() -> bool:
    return __debug__ or next(_calls) % CROSS_CHECK_EVERY == 0


def rotated_real_parts(t, thetas, pair: CartesianPair | None = None, check: bool | None = None) -> np.ndarray:
    """Stack of ``Re(e^{i theta} T) = (e^{i theta} T + e^{-i theta} T*)/2`` over ``thetas``."""
    a = np.asarray(t, dtype=np.complex128)
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    ph = np.exp(1j * thetas)[:, None, None]
    out = 0.5 * (ph * a[None] + np.conj(ph) * np.conj(a.T)[None])
    out = 0.5 * (out + np.conj(np.swapaxes(out, 1, 2)))
    if check is None:
        check = _should_cross_check()
    if check:
        pair = decompose(a) if pair is None else pair
        alt = (np.cos(thetas)[:, None, None] * pair.H.matrix[None]
               - np.sin(thetas)[:, None, None] * pair.K.matrix[None])
        err = float(np.max(np.abs(out - alt))) if out.size else 0.0
        scale = max(1.0, float(np.max(np.abs(a))))
        if err > CROSS_CHECK_TOL * scale:
            raise NumericalError(f"rotation identity mismatch {err:.3e}")
    return out


def rotated_real_part(t, theta: float) -> HermitianWitness:
    return hermitian(_freeze(rotated_real_parts(t, [theta], check=True)[0]))


def circle_combinations(pair: CartesianPair, alphas, betas) -> np.ndarray:
    """Stack of ``alpha H + beta K`` (no unit-circle check)."""
    alphas = np.atleast_1d(np.asarray(alphas, dtype=float))[:, None, None]
    betas = np.atleast_1d(np.asarray(betas, dtype=float))[:, None, None]
    return alphas * pair.H.matrix[None] + betas * pair.K.matrix[None]


def circle_combination(pair: CartesianPair, alpha: float, beta: float) -> HermitianWitness:
    if abs(alpha * alpha + beta * beta - 1.0) > 1e-12:
        raise InvalidArgument(f"(alpha, beta) = ({alpha}, {beta}) is not on the unit circle")
    return hermitian(_freeze(circle_combinations(pair, [alpha], [beta])[0]))


def angle_to_circle(theta: float) -> tuple[float, float]:
    """The ``(alpha, beta)`` pair for which ``alpha H + beta K = Re(e^{i theta} T)``."""
    return math.cos(theta), -math.sin(theta)
