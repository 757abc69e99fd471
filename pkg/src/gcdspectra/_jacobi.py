"""Cyclic Jacobi eigenvalue kernel.

One sweep visits the upper-triangle pivots in row-major order and applies
the numerically stable rotation to each nonzero pivot.  Only the diagonal
and upper triangle are maintained.  The kernel mutates its argument and
returns (max offdiagonal at exit, sweeps used); termination is
max |a_ij| <= target or the sweep cap.  Everything is sequential and
deterministic: same input, same rotations, same floats, with or without
the numba compilation (which only changes speed).
"""

from __future__ import annotations

import math

import numpy as np


def _sweep_kernel(a, target, max_sweeps):  # pragma: no cover - exercised via wrapper
    n = a.shape[0]
    sweeps = 0
    while True:
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                v = abs(a[i, j])
                if v > off:
                    off = v
        if off <= target or sweeps >= max_sweeps:
            return off, sweeps
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                h = t * apq
                a[p, p] -= h
                a[q, q] += h
                a[p, q] = 0.0
                for k in range(p):
                    g = a[k, p]
                    w = a[k, q]
                    a[k, p] = g - s * (w + tau * g)
                    a[k, q] = w + s * (g - tau * w)
                for k in range(p + 1, q):
                    g = a[p, k]
                    w = a[k, q]
                    a[p, k] = g - s * (w + tau * g)
                    a[k, q] = w + s * (g - tau * w)
                for k in range(q + 1, n):
                    g = a[p, k]
                    w = a[q, k]
                    a[p, k] = g - s * (w + tau * g)
                    a[q, k] = w + s * (g - tau * w)


try:  # compiled kernel; the pure-Python body above is the fallback
    from numba import njit

    _kernel = njit(cache=True)(_sweep_kernel)
except ImportError:  # pragma: no cover
    _kernel = _sweep_kernel


def jacobi_eigenvalues(arr: np.ndarray, tol: float, max_sweeps: int):
    """Eigenvalues (ascending) of a symmetric float64 matrix.

    Returns (eigenvalues, relative residual, sweeps, converged).  The
    residual is the largest remaining off-diagonal magnitude divided by
    the initial Frobenius norm; convergence means residual < tol.
    """
    n = arr.shape[0]
    if n == 1:
        return (float(arr[0, 0]),), 0.0, 0, True
    fro0 = float(np.linalg.norm(arr))
    if fro0 == 0.0:
        return tuple(0.0 for _ in range(n)), 0.0, 0, True
    work = np.array(arr, dtype=np.float64, order="C", copy=True)
    off, sweeps = _kernel(work, tol * fro0, max_sweeps)
    eigs = tuple(sorted(float(work[i, i]) for i in range(n)))
    residual = float(off) / fro0
    return eigs, residual, int(sweeps), bool(off <= tol * fro0)
