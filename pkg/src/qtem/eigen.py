"""Dense symmetric-definite generalized eigensolver ``A x = lam B x``.

``B = L L^T`` is factored, the reduced matrix ``C = L^-1 A L^-T`` is
diagonalised with cyclic Jacobi rotations (row-cyclic order, compiled with
numba), and eigenvectors are mapped back with ``x = L^-T y``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy.linalg import solve_triangular

__all__ = [
    "NotPositiveDefinite",
    "NoConvergence",
    "EigenResult",
    "jacobi_eigh",
    "solve_generalized",
    "MAX_SWEEPS",
    "OFF_TOL",
]

MAX_SWEEPS = 50
OFF_TOL = 1e-13


class NotPositiveDefinite(np.linalg.LinAlgError):
    pass


class NoConvergence(RuntimeError):
    pass


@dataclass(frozen=True)
class EigenResult:
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # columns, B-orthonormal
    residual_norms: np.ndarray
    sweeps: int


@njit(cache=True)
def _sweep(C, Vt, tiny):
    """One cyclic sweep over all pairs p < q, updating C and Vt in place."""
    n = C.shape[0]
    for p in range(n - 1):
        for q in range(p + 1, n):
            apq = C[p, q]
            if abs(apq) <= tiny:
                continue
            theta = (C[q, q] - C[p, p]) / (2.0 * apq)
            t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
            if theta < 0.0:
                t = -t
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            for k in range(n):  # rows: J^T C
                x, y = C[p, k], C[q, k]
                C[p, k] = c * x - s * y
                C[q, k] = s * x + c * y
            for k in range(n):  # columns: (J^T C) J
                x, y = C[k, p], C[k, q]
                C[k, p] = c * x - s * y
                C[k, q] = s * x + c * y
            C[p, q] = 0.0
            C[q, p] = 0.0
            for k in range(n):
                x, y = Vt[p, k], Vt[q, k]
                Vt[p, k] = c * x - s * y
                Vt[q, k] = s * x + c * y


def _off_norm(C):
    off = C.copy()
    np.fill_diagonal(off, 0.0)
    return np.linalg.norm(off)


def jacobi_eigh(C: np.ndarray, max_sweeps: int = MAX_SWEEPS, tol: float = OFF_TOL):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(eigenvalues, eigenvectors, sweeps)`` with eigenvalues ascending
    and eigenvectors as orthonormal columns.

    Raises
    ------
    NoConvergence
        If the off-diagonal Frobenius norm is still above ``tol * ||C||_F``
        after ``max_sweeps`` sweeps.
    """
    C = np.array(C, dtype=float)
    n = C.shape[0]
    if C.shape != (n, n):
        raise ValueError("matrix must be square")
    C = 0.5 * (C + C.T)
    Vt = np.eye(n)
    norm = np.linalg.norm(C)
    target = tol * norm
    # rotations below this size only stir rounding noise
    tiny = np.finfo(float).eps * 1e-3 * norm
    sweeps = 0
    while _off_norm(C) > target:
        if sweeps >= max_sweeps:
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps "
                                f"(off-norm {_off_norm(C):.3e}, target {target:.3e})")
        sweeps += 1
        _sweep(C, Vt, tiny)
    lam = np.diag(C).copy()
    order = np.argsort(lam, kind="stable")
    return lam[order], Vt.T[:, order], sweeps


def solve_generalized(A, B, n_lowest: int | None = None) -> EigenResult:
    """Lowest ``n_lowest`` eigenpairs of the symmetric-definite pencil (A, B).

    Sparse inputs are densified.  Eigenvectors are normalised so that
    ``x^T B x = 1``; residual norms are ``||A x - lam B x|| / (||A|| ||x||)``.
    """
    A = A.toarray() if hasattr(A, "toarray") else np.asarray(A, dtype=float)
    B = B.toarray() if hasattr(B, "toarray") else np.asarray(B, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n) or B.shape != (n, n):
        raise ValueError(f"shape mismatch: A {A.shape}, B {B.shape}")
    if n_lowest is None:
        n_lowest = n
    if not 1 <= n_lowest <= n:
        raise ValueError(f"n_lowest must be in [1, {n}], got {n_lowest}")
    try:
        L = np.linalg.cholesky(0.5 * (B + B.T))
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite("B is not positive definite") from exc
    Y = solve_triangular(L, A, lower=True)
    C = solve_triangular(L, Y.T, lower=True)
    lam, W, sweeps = jacobi_eigh(C)
    lam, W = lam[:n_lowest], W[:, :n_lowest]
    X = solve_triangular(L.T, W, lower=False)
    # fix the sign so the largest-magnitude component is positive
    idx = np.argmax(np.abs(X), axis=0)
    X = X * np.sign(X[idx, np.arange(X.shape[1])])
    normA = np.linalg.norm(A, 2) if n <= 2000 else np.linalg.norm(A)
    R = A @ X - (B @ X) * lam
    res = np.linalg.norm(R, axis=0) / (normA * np.linalg.norm(X, axis=0))
    return EigenResult(lam, X, res, sweeps)
