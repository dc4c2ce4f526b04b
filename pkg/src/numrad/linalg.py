"""Dense complex matrix arithmetic, Hermitian eigensolving and norms.

Matrices are plain ``numpy`` arrays of dtype ``complex128`` with shape
``(n, n)``.  Every function returns a fresh, read-only array, so values can
be shared freely between callers (and processes) without copying.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from numrad._jacobi import eigh_batch
from numrad.errors import DimensionMismatch, IllConditioned, InvalidArgument, NotHermitian

__all__ = [
    "LinalgConfig", "config", "HermitianWitness", "EigenResult",
    "as_matrix", "identity", "zeros", "adjoint", "mat_add", "mat_sub", "mat_mul",
    "scalar_mul", "hermitian", "hermitian_eigenvalues", "eigh_stack",
    "spectral_norm", "spectral_norm_stack", "singular_values", "schatten_norm",
    "frobenius_norm", "block_2x2", "rayleigh", "is_hermitian",
]


@dataclass
class LinalgConfig:
    hermitian_tol: float = 1e-10  # relative to the largest entry modulus
    eigen_tol: float = 1e-12      # residual bound relative to the Frobenius norm
    max_sweeps: int = 100


config = LinalgConfig()


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def as_matrix(m) -> np.ndarray:
    """Validate ``m`` as a finite square complex matrix and return a frozen copy."""
    a = np.array(m, dtype=np.complex128, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidArgument("matrix entries must be finite")
    return _freeze(a)


def _same_dim(*ms: np.ndarray) -> int:
    n = ms[0].shape[0]
    for m in ms[1:]:
        if m.shape != ms[0].shape:
            raise DimensionMismatch(f"dimension mismatch: {ms[0].shape} vs {m.shape}")
    return n


def identity(n: int) -> np.ndarray:
    return _freeze(np.eye(n, dtype=np.complex128))


def zeros(n: int) -> np.ndarray:
    return _freeze(np.zeros((n, n), dtype=np.complex128))


def adjoint(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return _freeze(np.ascontiguousarray(np.conj(np.asarray(m, dtype=np.complex128).T)))


def mat_add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    _same_dim(a, b)
    return _freeze(np.add(a, b, dtype=np.complex128))


def mat_sub(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    _same_dim(a, b)
    return _freeze(np.subtract(a, b, dtype=np.complex128))


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    _same_dim(a, b)
    return _freeze(np.asarray(a, dtype=np.complex128) @ np.asarray(b, dtype=np.complex128))


def scalar_mul(c: complex, m: np.ndarray) -> np.ndarray:
    return _freeze(complex(c) * np.asarray(m, dtype=np.complex128))


def frobenius_norm(m: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(m).ravel()))


def _asymmetry(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - np.conj(m.T)))) if m.size else 0.0


def is_hermitian(m: np.ndarray, tol: float | None = None) -> bool:
    m = np.asarray(m)
    tol = config.hermitian_tol if tol is None else tol
    scale = float(np.max(np.abs(m))) if m.size else 0.0
    return _asymmetry(m) <= tol * max(scale, 1.0)


@dataclass(frozen=True)
class HermitianWitness:
    """A matrix certified Hermitian up to ``asymmetry``."""

    matrix: np.ndarray
    asymmetry: float

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def hermitian(m, tol: float | None = None) -> HermitianWitness:
    """Wrap ``m`` as a :class:`HermitianWitness`, raising :class:`NotHermitian` if it is not."""
    if isinstance(m, HermitianWitness):
        return m
    a = as_matrix(m)
    tol = config.hermitian_tol if tol is None else tol
    asym = _asymmetry(a)
    scale = float(np.max(np.abs(a)))
    if asym > tol * max(scale, 1.0):
        raise NotHermitian(f"asymmetry {asym:.3e} exceeds tolerance {tol:.1e} x {max(scale, 1.0):.3e}")
    return HermitianWitness(a, asym)


@dataclass(frozen=True)
class EigenResult:
    values: np.ndarray          # ascending
    residual: float             # max_k ||H v_k - lambda_k v_k||
    vectors: np.ndarray | None = None
    error_bound: float = 0.0    # Weyl bound on |computed - exact| eigenvalue


def eigh_stack(stack: np.ndarray, vectors: bool = False):
    """Jacobi eigen-decomposition of a ``(b, n, n)`` Hermitian stack.

    Returns ``(values, vectors, errors)``; raises :class:`IllConditioned` if any
    member fails to converge within ``config.max_sweeps`` sweeps.
    """
    stack = np.ascontiguousarray(stack, dtype=np.complex128)
    if stack.ndim == 2:
        stack = stack[None]
    values, vecs, errs, sweeps = eigh_batch(stack, vectors, config.max_sweeps)
    if np.any(sweeps < 0):
        bad = int(np.flatnonzero(sweeps < 0)[0])
        raise IllConditioned(f"Jacobi iteration did not converge in {config.max_sweeps} sweeps (batch index {bad})")
    return values, vecs, errs


def hermitian_eigenvalues(h, eigen_tol: float | None = None) -> EigenResult:
    """Eigenvalues (ascending) of the Hermitian part ``(H + H*)/2``."""
    w = hermitian(h)
    a = w.matrix
    sym = 0.5 * (a + np.conj(a.T))
    values, vecs, errs = eigh_stack(sym, vectors=True)
    values, vecs = values[0], vecs[0]
    resid = float(np.max(np.linalg.norm(sym @ vecs - vecs * values[None, :], axis=0)))
    tol = config.eigen_tol if eigen_tol is None else eigen_tol
    fro = frobenius_norm(sym)
    if resid > tol * max(fro, np.finfo(float).tiny):
        raise IllConditioned(f"eigen residual {resid:.3e} exceeds {tol:.1e} x ||H||_F")
    return EigenResult(_freeze(values), resid, _freeze(vecs), float(errs[0]))


def spectral_norm_stack(stack: np.ndarray):
    """Largest singular value of each matrix in a stack, with an upper error bound.

    Computed as ``sqrt(lambda_max(M* M))``; returns ``(values, upper)`` where
    ``upper`` already absorbs the eigensolver's error bound.
    """
    stack = np.asarray(stack, dtype=np.complex128)
    gram = np.conj(np.swapaxes(stack, -1, -2)) @ stack
    values, _, errs = eigh_stack(gram)
    top = np.maximum(values[:, -1], 0.0)
    return np.sqrt(top), np.sqrt(top + errs)


def spectral_norm(m) -> float:
    """Operator 2-norm.

    Exactly Hermitian input uses ``max |eigenvalue|``; anything else goes
    through the Gram matrix ``M* M``.
    """
    a = np.asarray(m, dtype=np.complex128)
    if np.array_equal(a, np.conj(a.T)):
        values, _, _ = eigh_stack(a)
        return float(max(abs(values[0, 0]), abs(values[0, -1])))
    return float(spectral_norm_stack(a[None])[0][0])


def singular_values(m) -> np.ndarray:
    """Singular values in descending order (square roots of eig(M* M), clamped at 0)."""
    a = np.asarray(m, dtype=np.complex128)
    values, _, _ = eigh_stack(np.conj(a.T) @ a)
    return _freeze(np.sqrt(np.maximum(values[0], 0.0))[::-1].copy())


def schatten_norm(m, p: float) -> float:
    """Schatten p-norm; ``p = math.inf`` dispatches to :func:`spectral_norm`."""
    if not p >= 1:
        raise InvalidArgument(f"Schatten index must satisfy p >= 1, got {p}")
    if math.isinf(p):
        return spectral_norm(m)
    s = singular_values(m)
    top = s[0] if s.size else 0.0
    if top == 0.0:
        return 0.0
    # scale by the largest singular value to keep s**p in range
    return float(top * np.sum((s / top) ** p) ** (1.0 / p))


def block_2x2(p, q, r, s) -> np.ndarray:
    """The ``2n x 2n`` matrix ``[[P, Q], [R, S]]``."""
    blocks = [np.asarray(b, dtype=np.complex128) for b in (p, q, r, s)]
    _same_dim(*blocks)
    return _freeze(np.block([[blocks[0], blocks[1]], [blocks[2], blocks[3]]]))


def rayleigh(m, x, unit_tol: float = 1e-12) -> complex:
    """The quadratic form ``<M x, x> = sum_k (M x)_k conj(x_k)`` for a unit vector ``x``."""
    a = np.asarray(m, dtype=np.complex128)
    v = np.asarray(x, dtype=np.complex128).ravel()
    if v.shape[0] != a.shape[0]:
        raise DimensionMismatch(f"vector of length {v.shape[0]} for a {a.shape[0]}x{a.shape[0]} matrix")
    norm = math.sqrt(float(np.sum(np.abs(v) ** 2)))
    if abs(norm - 1.0) > unit_tol:
        raise InvalidArgument(f"probe vector must be a unit vector, has norm {norm!r}")
    return complex(np.vdot(v, a @ v))
