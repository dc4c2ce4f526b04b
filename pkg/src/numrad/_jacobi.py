"""Cyclic complex Jacobi eigensolver for small dense Hermitian matrices.

Each rotation first removes the phase of the pivot ``a[p, q]`` with a
diagonal unitary and then applies a real plane rotation, so the working
matrix stays exactly Hermitian (the lower triangle is mirrored from the
upper one after every update).
"""

import math

import numpy as np
from numba import njit

EPS = np.finfo(np.float64).eps


@njit(cache=True)
def _frobenius(a):
    n = a.shape[0]
    acc = 0.0
    for i in range(n):
        for j in range(n):
            z = a[i, j]
            acc += z.real * z.real + z.imag * z.imag
    return math.sqrt(acc)


@njit(cache=True)
def _off_norm(a):
    n = a.shape[0]
    acc = 0.0
    for i in range(n - 1):
        for j in range(i + 1, n):
            z = a[i, j]
            acc += z.real * z.real + z.imag * z.imag
    return math.sqrt(2.0 * acc)


@njit(cache=True)
def jacobi_inplace(a, v, want_vectors, max_sweeps):
    """Diagonalise the Hermitian ``a`` in place.

    Returns ``(sweeps, off)`` where ``off`` is the Frobenius norm of the
    remaining off-diagonal part; ``sweeps == -1`` flags non-convergence.
    ``v`` accumulates the rotations when ``want_vectors`` is set and must
    hold the identity on entry.
    """
    n = a.shape[0]
    for i in range(n):
        a[i, i] = a[i, i].real
        for j in range(i + 1, n):
            z = 0.5 * (a[i, j] + a[j, i].conjugate())
            a[i, j] = z
            a[j, i] = z.conjugate()
    fro = _frobenius(a)
    if fro == 0.0:
        return 0, 0.0
    target = 1e-14 * fro
    tiny = 1e-300
    for sweep in range(max_sweeps):
        off = _off_norm(a)
        if off <= target:
            return sweep, off
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= tiny:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                # skip pivots already negligible against both diagonal entries
                if mag < 1e-18 * (abs(app) + abs(aqq)):
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                theta = (aqq - app) / (2.0 * mag)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ph = apq / mag
                phc = ph.conjugate()
                # J = diag(1, conj(ph)) @ [[c, s], [-s, c]]
                j10 = -s * phc
                j11 = c * phc
                for i in range(n):
                    if i == p or i == q:
                        continue
                    aip = a[i, p]
                    aiq = a[i, q]
                    nip = c * aip + j10 * aiq
                    niq = s * aip + j11 * aiq
                    a[i, p] = nip
                    a[i, q] = niq
                    a[p, i] = nip.conjugate()
                    a[q, i] = niq.conjugate()
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                a[p, q] = 0.0
                a[q, p] = 0.0
                if want_vectors:
                    for i in range(n):
                        vip = v[i, p]
                        viq = v[i, q]
                        v[i, p] = c * vip + j10 * viq
                        v[i, q] = s * vip + j11 * viq
    off = _off_norm(a)
    if off <= target:
        return max_sweeps, off
    return -1, off


@njit(cache=True)
def eigh_batch(stack, want_vectors, max_sweeps):
    """Eigen-decompose a ``(b, n, n)`` stack of Hermitian matrices.

    Returns ascending eigenvalues ``(b, n)``, eigenvectors ``(b, n, n)``
    (columns; identity placeholders when not requested), a per-matrix
    eigenvalue error bound ``(b,)`` and the sweep count ``(b,)`` (-1 on
    non-convergence).
    """
    b = stack.shape[0]
    n = stack.shape[1]
    values = np.empty((b, n))
    vectors = np.zeros((b, n, n), dtype=np.complex128)
    errs = np.empty(b)
    sweeps = np.empty(b, dtype=np.int64)
    a = np.empty((n, n), dtype=np.complex128)
    v = np.empty((n, n), dtype=np.complex128)
    for k in range(b):
        for i in range(n):
            for j in range(n):
                a[i, j] = stack[k, i, j]
                v[i, j] = 0.0
            v[i, i] = 1.0
        fro = _frobenius(a)
        nsw, off = jacobi_inplace(a, v, want_vectors, max_sweeps)
        sweeps[k] = nsw
        diag = np.empty(n)
        for i in range(n):
            diag[i] = a[i, i].real
        order = np.argsort(diag)
        for i in range(n):
            values[k, i] = diag[order[i]]
        if want_vectors:
            for i in range(n):
                for j in range(n):
                    vectors[k, i, j] = v[i, order[j]]
        else:
            for i in range(n):
                vectors[k, i, i] = 1.0
        # Weyl bound from the residual off-diagonal part plus rotation rounding
        errs[k] = off + 16.0 * n * (abs(nsw) + 1) * EPS * fro
    return values, vectors, errs, sweeps
