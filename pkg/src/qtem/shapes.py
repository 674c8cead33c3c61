"""Scalar and vector shape functions of the quadratic triangle.

Scalar functions ``N`` are ordered (corner1, corner2, corner3, mid12, mid23,
mid31).  The vector functions ``(U_i, V_i)`` are edge functions of the form
``sign * l_e * L_a * grad(L_b)``; ``EDGE_BASIS`` lists ``(edge, a, b, sign)``
for each of the six in the same column order used by every matrix.

Functions accept a single triple of area coordinates or an array of shape
``(n, 3)``; the leading axes are carried through.
"""
from __future__ import annotations

import numpy as np

from .geometry import TriangleGeometry

__all__ = [
    "EDGE_BASIS",
    "EDGE_FAMILIES",
    "eval_N",
    "grad_N",
    "eval_UV",
    "uv_derivatives",
    "curl_UV",
]

# (edge, a, b, sign): basis i = sign * l_edge * L_a * grad(L_b), zero-based
EDGE_BASIS = (
    (0, 0, 1, 1),
    (1, 1, 2, 1),
    (2, 2, 0, 1),
    (0, 1, 0, -1),
    (1, 2, 1, -1),
    (2, 0, 2, -1),
)

#: local basis pair (first, second) attached to each edge
EDGE_FAMILIES = ((0, 3), (1, 4), (2, 5))


def eval_N(L) -> np.ndarray:
    """Quadratic Lagrange functions at area coordinates ``L``; shape (..., 6)."""
    L = np.asarray(L)
    L1, L2, L3 = L[..., 0], L[..., 1], L[..., 2]
    return np.stack(
        [
            L1 * (2 * L1 - 1),
            L2 * (2 * L2 - 1),
            L3 * (2 * L3 - 1),
            4 * L1 * L2,
            4 * L2 * L3,
            4 * L3 * L1,
        ],
        axis=-1,
    )


def _dN_dL(L) -> np.ndarray:
    """Partial derivatives dN_i/dL_k, shape (..., 6, 3)."""
    L = np.asarray(L, dtype=float)
    L1, L2, L3 = L[..., 0], L[..., 1], L[..., 2]
    z = np.zeros_like(L1)
    rows = [
        [4 * L1 - 1, z, z],
        [z, 4 * L2 - 1, z],
        [z, z, 4 * L3 - 1],
        [4 * L2, 4 * L1, z],
        [z, 4 * L3, 4 * L2],
        [4 * L3, z, 4 * L1],
    ]
    return np.stack([np.stack(r, axis=-1) for r in rows], axis=-2)


def _grad_L(geom: TriangleGeometry) -> np.ndarray:
    """Constant gradients of L_1..L_3 as a (3, 2) array."""
    two_a = 2.0 * float(geom.area)
    return np.array([[float(geom.b[k]), float(geom.c[k])] for k in range(3)]) / two_a


def grad_N(geom: TriangleGeometry, L) -> np.ndarray:
    """Cartesian gradients of N; row i is (dN_i/dx, dN_i/dy). Shape (..., 6, 2)."""
    return _dN_dL(L) @ _grad_L(geom)


def eval_UV(geom: TriangleGeometry, L) -> tuple[np.ndarray, np.ndarray]:
    """Vector edge functions at ``L``; returns ``(U, V)`` each of shape (..., 6)."""
    L = np.asarray(L, dtype=float)
    gl = _grad_L(geom)
    ell = geom.edge_len
    U, V = [], []
    for edge, a, b, sign in EDGE_BASIS:
        scale = sign * ell[edge] * L[..., a]
        U.append(scale * gl[b, 0])
        V.append(scale * gl[b, 1])
    return np.stack(U, axis=-1), np.stack(V, axis=-1)


def uv_derivatives(geom: TriangleGeometry) -> dict[str, np.ndarray]:
    """Constant first derivatives of U and V.

    Keys are ``"Ux", "Uy", "Vx", "Vy"``; each value has shape (6,).
    """
    gl = _grad_L(geom)
    ell = geom.edge_len
    out = {k: np.empty(6) for k in ("Ux", "Uy", "Vx", "Vy")}
    for i, (edge, a, b, sign) in enumerate(EDGE_BASIS):
        s = sign * ell[edge]
        out["Ux"][i] = s * gl[a, 0] * gl[b, 0]
        out["Uy"][i] = s * gl[a, 1] * gl[b, 0]
        out["Vx"][i] = s * gl[a, 0] * gl[b, 1]
        out["Vy"][i] = s * gl[a, 1] * gl[b, 1]
    return out


def curl_UV(geom: TriangleGeometry) -> np.ndarray:
    """Scalar curl dV_i/dx - dU_i/dy of each edge function (constant per element).

    Both functions of edge e share the value ``l_e / (2A)``.
    """
    b, c = [float(v) for v in geom.b], [float(v) for v in geom.c]
    four_a2 = 4.0 * float(geom.area) ** 2
    ell = geom.edge_len
    out = np.empty(6)
    for i, (edge, a, bb, sign) in enumerate(EDGE_BASIS):
        out[i] = sign * ell[edge] * (b[a] * c[bb] - c[a] * b[bb]) / four_a2
    return out
