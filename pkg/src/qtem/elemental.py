"""Closed-form 6x6 elemental matrices of the quadratic triangle.

Every closed form is written with plain arithmetic on the scalars
``b, c, area, l`` so the same function evaluates in floating point or in
exact rational arithmetic (pass ``l = (1, 1, 1)`` for the l-stripped form).

Notation inside the formulas is one-based (``b1, b2, b3``) to keep them
comparable with the usual printed tables.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .geometry import TriangleGeometry
from .shapes import EDGE_BASIS, curl_UV

__all__ = [
    "MatrixKind",
    "KIND_FIELDS",
    "ElementMatrix",
    "SYMMETRIC_KINDS",
    "closed_form",
    "printed_dvx_dvx",
    "element_matrix",
    "curl_curl_matrix",
    "vector_mass_matrix",
    "local_gradient_matrix",
]


class MatrixKind(str, enum.Enum):
    """The sixteen elemental integrals; the value is the CLI spelling."""

    mass_NN = "mass_NN"  # int N N^T
    stiff_xx = "stiff_xx"  # int dN/dx dN^T/dx
    stiff_yy = "stiff_yy"  # int dN/dy dN^T/dy
    stiff_yx = "stiff_yx"  # int dN/dy dN^T/dx
    N_dNx = "N_dNx"  # int N dN^T/dx
    N_dNy = "N_dNy"
    U_dNx = "U_dNx"  # int U dN^T/dx
    V_dNx = "V_dNx"
    U_dNy = "U_dNy"
    V_dNy = "V_dNy"
    UU = "UU"  # int U U^T
    VV = "VV"
    UV = "UV"
    dUy_dUy = "dUy_dUy"  # int dU/dy dU^T/dy
    dVx_dVx = "dVx_dVx"  # int dV/dx dV^T/dx
    dUy_dVx = "dUy_dVx"  # int dU/dy dV^T/dx

    @property
    def fields(self) -> tuple[str, str]:
        """(row field, column field) of the integrand, e.g. ("U", "dNx")."""
        return KIND_FIELDS[self]

    @property
    def row_is_vector(self) -> bool:
        return self.fields[0] in VECTOR_FIELDS

    @property
    def col_is_vector(self) -> bool:
        return self.fields[1] in VECTOR_FIELDS


VECTOR_FIELDS = frozenset({"U", "V", "dUy", "dVx"})

KIND_FIELDS = {
    MatrixKind.mass_NN: ("N", "N"),
    MatrixKind.stiff_xx: ("dNx", "dNx"),
    MatrixKind.stiff_yy: ("dNy", "dNy"),
    MatrixKind.stiff_yx: ("dNy", "dNx"),
    MatrixKind.N_dNx: ("N", "dNx"),
    MatrixKind.N_dNy: ("N", "dNy"),
    MatrixKind.U_dNx: ("U", "dNx"),
    MatrixKind.V_dNx: ("V", "dNx"),
    MatrixKind.U_dNy: ("U", "dNy"),
    MatrixKind.V_dNy: ("V", "dNy"),
    MatrixKind.UU: ("U", "U"),
    MatrixKind.VV: ("V", "V"),
    MatrixKind.UV: ("U", "V"),
    MatrixKind.dUy_dUy: ("dUy", "dUy"),
    MatrixKind.dVx_dVx: ("dVx", "dVx"),
    MatrixKind.dUy_dVx: ("dUy", "dVx"),
}

SYMMETRIC_KINDS = frozenset(
    {
        MatrixKind.mass_NN,
        MatrixKind.stiff_xx,
        MatrixKind.stiff_yy,
        MatrixKind.UU,
        MatrixKind.VV,
        MatrixKind.dUy_dUy,
        MatrixKind.dVx_dVx,
    }
)

_MASS_INT = (
    (6, -1, -1, 0, -4, 0),
    (-1, 6, -1, 0, 0, -4),
    (-1, -1, 6, -4, 0, 0),
    (0, 0, -4, 32, 16, 16),
    (-4, 0, 0, 16, 32, 16),
    (0, -4, 0, 16, 16, 32),
)


def _divide(rows, denom):
    # divide (not multiply by a reciprocal) so rational inputs stay exact
    return [[v / denom for v in row] for row in rows]


def _mass(area):
    return [[area * v / 180 for v in row] for row in _MASS_INT]


def _stiff_same(p, area):
    # dN/dx dN/dx with p = b, or dN/dy dN/dy with p = c
    p1, p2, p3 = p
    rows = [
        [3 * p1 * p1 / 4, -p1 * p2 / 4, -p1 * p3 / 4, p1 * p2, 0, p1 * p3],
        [-p1 * p2 / 4, 3 * p2 * p2 / 4, -p2 * p3 / 4, p1 * p2, p2 * p3, 0],
        [-p1 * p3 / 4, -p2 * p3 / 4, 3 * p3 * p3 / 4, 0, p2 * p3, p1 * p3],
        [p1 * p2, p1 * p2, 0, 2 * (p1 * p1 + p2 * p2 + p1 * p2), 2 * p1 * p3, 2 * p2 * p3],
        [0, p2 * p3, p2 * p3, 2 * p1 * p3, 2 * (p2 * p2 + p3 * p3 + p2 * p3), 2 * p1 * p2],
        [p1 * p3, 0, p1 * p3, 2 * p2 * p3, 2 * p1 * p2, 2 * (p1 * p1 + p3 * p3 + p1 * p3)],
    ]
    return _divide(rows, 3 * area)


def _stiff_yx(b, c, area):
    b1, b2, b3 = b
    c1, c2, c3 = c
    s = b1 * c1 + b2 * c2 + b3 * c3
    rows = [
        [3 * b1 * c1 / 4, -b2 * c1 / 4, -b3 * c1 / 4, b2 * c1, 0, b3 * c1],
        [-b1 * c2 / 4, 3 * b2 * c2 / 4, -b3 * c2 / 4, b1 * c2, b3 * c2, 0],
        [-b1 * c3 / 4, -b2 * c3 / 4, 3 * b3 * c3 / 4, 0, b2 * c3, b1 * c3],
        [b1 * c2, b2 * c1, 0, s, b3 * c1 + b1 * c3, b3 * c2 + b2 * c3],
        [0, b2 * c3, b3 * c2, b1 * c3 + b3 * c1, s, b1 * c2 + b2 * c1],
        [b1 * c3, 0, b3 * c1, b2 * c3 + b3 * c2, b2 * c1 + b1 * c2, s],
    ]
    return _divide(rows, 3 * area)


def _n_dn(p):
    # N dN/dx with p = b, N dN/dy with p = c
    p1, p2, p3 = p
    rows = [
        [2 * p1, -p2, -p3, -p1 + 2 * p2, -p2 - p3, -p1 + 2 * p3],
        [-p1, 2 * p2, -p3, -p2 + 2 * p1, -p2 + 2 * p3, -p1 - p3],
        [-p1, -p2, 2 * p3, -p1 - p2, -p3 + 2 * p2, -p3 + 2 * p1],
        [3 * p1, 3 * p2, -p3, 8 * (p1 + p2), 4 * (p2 + 2 * p3), 4 * (p1 + 2 * p3)],
        [-p1, 3 * p2, 3 * p3, 4 * (p2 + 2 * p1), 8 * (p2 + p3), 4 * (p3 + 2 * p1)],
        [3 * p1, -p2, 3 * p3, 4 * (p1 + 2 * p2), 4 * (p3 + 2 * p2), 8 * (p1 + p3)],
    ]
    return _divide(rows, 30)


def _vec_dn(p, q, l, area):
    # row functions U (p = b) or V (p = c); column derivative d/dx (q = b) or d/dy (q = c)
    p1, p2, p3 = p
    q1, q2, q3 = q
    l1, l2, l3 = l
    rows = [
        [l1 * p2 * q1, 0, 0, l1 * p2 * (q1 + 2 * q2), l1 * p2 * (q2 + q3), l1 * p2 * (q1 + 2 * q3)],
        [0, l2 * p3 * q2, 0, l2 * p3 * (q2 + 2 * q1), l2 * p3 * (q2 + 2 * q3), l2 * p3 * (q1 + q3)],
        [0, 0, l3 * p1 * q3, l3 * p1 * (q1 + q2), l3 * p1 * (q3 + 2 * q2), l3 * p1 * (q3 + 2 * q1)],
        [0, -l1 * p1 * q2, 0, -l1 * p1 * (q2 + 2 * q1), -l1 * p1 * (q2 + 2 * q3), -l1 * p1 * (q1 + q3)],
        [0, 0, -l2 * p2 * q3, -l2 * p2 * (q1 + q2), -l2 * p2 * (q3 + 2 * q2), -l2 * p2 * (q3 + 2 * q1)],
        [-l3 * p3 * q1, 0, 0, -l3 * p3 * (q1 + 2 * q2), -l3 * p3 * (q2 + q3), -l3 * p3 * (q1 + 2 * q3)],
    ]
    return _divide(rows, 12 * area)


def _vec_vec(p, q, l, area):
    # UU (p = q = b), VV (p = q = c), UV (p = b, q = c)
    p1, p2, p3 = p
    q1, q2, q3 = q
    l1, l2, l3 = l
    rows = [
        [2 * l1 * l1 * p2 * q2, l1 * l2 * p2 * q3, l1 * l3 * p2 * q1,
         -l1 * l1 * p2 * q1, -l1 * l2 * p2 * q2, -2 * l1 * l3 * p2 * q3],
        [l1 * l2 * p3 * q2, 2 * l2 * l2 * p3 * q3, l2 * l3 * p3 * q1,
         -2 * l1 * l2 * p3 * q1, -l2 * l2 * p3 * q2, -l2 * l3 * p3 * q3],
        [l1 * l3 * p1 * q2, l2 * l3 * p1 * q3, 2 * l3 * l3 * p1 * q1,
         -l1 * l3 * p1 * q1, -2 * l2 * l3 * p1 * q2, -l3 * l3 * p1 * q3],
        [-l1 * l1 * p1 * q2, -2 * l1 * l2 * p1 * q3, -l1 * l3 * p1 * q1,
         2 * l1 * l1 * p1 * q1, l1 * l2 * p1 * q2, l1 * l3 * p1 * q3],
        [-l1 * l2 * p2 * q2, -l2 * l2 * p2 * q3, -2 * l2 * l3 * p2 * q1,
         l1 * l2 * p2 * q1, 2 * l2 * l2 * p2 * q2, l2 * l3 * p2 * q3],
        [-2 * l1 * l3 * p3 * q2, -l2 * l3 * p3 * q3, -l3 * l3 * p3 * q1,
         l1 * l3 * p3 * q1, l2 * l3 * p3 * q2, 2 * l3 * l3 * p3 * q3],
    ]
    return _divide(rows, 48 * area)


def _symmetric_from_upper(a):
    return [[a[min(i, j)][max(i, j)] for j in range(6)] for i in range(6)]


def _duy_duy(b, c, l, area):
    """dU/dy dU^T/dy from the upper-triangle entry list."""
    b1, b2, b3 = b
    c1, c2, c3 = c
    l1, l2, l3 = l
    a = [[None] * 6 for _ in range(6)]
    a[0][0] = l1 * l1 * b2 * b2 * c1 * c1
    a[0][1] = l1 * l2 * b2 * b3 * c1 * c2
    a[0][2] = l1 * l3 * b1 * b2 * c1 * c3
    a[0][3] = -l1 * l1 * b1 * b2 * c1 * c2
    a[0][4] = -l1 * l2 * b2 * b2 * c1 * c3
    a[0][5] = -l1 * l3 * b2 * b3 * c1 * c1
    a[1][1] = l2 * l2 * b3 * b3 * c2 * c2
    a[1][2] = l2 * l3 * b1 * b3 * c2 * c3
    a[1][3] = -l1 * l2 * b1 * b3 * c2 * c2
    a[1][4] = -l2 * l2 * b2 * b3 * c2 * c3
    a[1][5] = -l2 * l3 * b3 * b3 * c1 * c2
    a[2][2] = l3 * l3 * b1 * b1 * c3 * c3
    a[2][3] = -l1 * l3 * b1 * b1 * c2 * c3
    a[2][4] = -l2 * l3 * b1 * b2 * c3 * c3
    a[2][5] = -l3 * l3 * b1 * b3 * c1 * c3
    a[3][3] = l1 * l1 * b1 * b1 * c2 * c2
    a[3][4] = l1 * l2 * b1 * b2 * c2 * c3
    a[3][5] = l1 * l3 * b1 * b3 * c1 * c2
    a[4][4] = l2 * l2 * b2 * b2 * c3 * c3
    a[4][5] = l2 * l3 * b2 * b3 * c1 * c3
    a[5][5] = l3 * l3 * b3 * b3 * c1 * c1
    return _divide(_symmetric_from_upper(a), 16 * area ** 3)


def printed_dvx_dvx(b, c, area, l):
    """dV/dx dV^T/dx exactly as the b<->c entry list is commonly printed.

    Kept only for adjudication: its (3, 3) entry repeats the dU/dy value
    ``l3^2 b1^2 c3^2`` instead of the transformed ``l3^2 c1^2 b3^2``.
    """
    b1, b2, b3 = b
    c1, c2, c3 = c
    l1, l2, l3 = l
    a = [[None] * 6 for _ in range(6)]
    a[0][0] = l1 * l1 * c2 * c2 * b1 * b1
    a[0][1] = l1 * l2 * c2 * c3 * b1 * b2
    a[0][2] = l1 * l3 * c1 * c2 * b1 * b3
    a[0][3] = -l1 * l1 * c1 * c2 * b1 * b2
    a[0][4] = -l1 * l2 * c2 * c2 * b1 * b3
    a[0][5] = -l1 * l3 * c2 * c3 * b1 * b1
    a[1][1] = l2 * l2 * c3 * c3 * b2 * b2
    a[1][2] = l2 * l3 * c1 * c3 * b2 * b3
    a[1][3] = -l1 * l2 * c1 * c3 * b2 * b2
    a[1][4] = -l2 * l2 * c2 * c3 * b2 * b3
    a[1][5] = -l2 * l3 * c3 * c3 * b1 * b2
    a[2][2] = l3 * l3 * b1 * b1 * c3 * c3
    a[2][3] = -l1 * l3 * c1 * c1 * b2 * b3
    a[2][4] = -l2 * l3 * c1 * c2 * b3 * b3
    a[2][5] = -l3 * l3 * c1 * c3 * b1 * b3
    a[3][3] = l1 * l1 * c1 * c1 * b2 * b2
    a[3][4] = l1 * l2 * c1 * c2 * b2 * b3
    a[3][5] = l1 * l3 * c1 * c3 * b1 * b2
    a[4][4] = l2 * l2 * c2 * c2 * b3 * b3
    a[4][5] = l2 * l3 * c2 * c3 * b1 * b3
    a[5][5] = l3 * l3 * c3 * c3 * b1 * b1
    return _divide(_symmetric_from_upper(a), 16 * area ** 3)


def _duy_dvx(b, c, l, area):
    b1, b2, b3 = b
    c1, c2, c3 = c
    l1, l2, l3 = l
    rows = [
        [l1 * l1 * b1 * b2 * c1 * c2, l1 * l2 * b2 * b2 * c1 * c3, l1 * l3 * b2 * b3 * c1 * c1,
         -l1 * l1 * b2 * b2 * c1 * c1, -l1 * l2 * b2 * b3 * c1 * c2, -l1 * l3 * b1 * b2 * c1 * c3],
        [l1 * l2 * b1 * b3 * c2 * c2, l2 * l2 * b2 * b3 * c2 * c3, l2 * l3 * b3 * b3 * c1 * c2,
         -l1 * l2 * b2 * b3 * c1 * c2, -l2 * l2 * b3 * b3 * c2 * c2, -l2 * l3 * b1 * b3 * c2 * c3],
        [l1 * l3 * b1 * b1 * c2 * c3, l2 * l3 * b1 * b2 * c3 * c3, l3 * l3 * b1 * b3 * c1 * c3,
         -l1 * l3 * b1 * b2 * c1 * c3, -l2 * l3 * b1 * b3 * c2 * c3, -l3 * l3 * b1 * b1 * c3 * c3],
        [-l1 * l1 * b1 * b1 * c2 * c2, -l1 * l2 * b1 * b2 * c2 * c3, -l1 * l3 * b1 * b3 * c1 * c2,
         l1 * l1 * b1 * b2 * c1 * c2, l1 * l2 * b1 * b3 * c2 * c2, l1 * l3 * b1 * b1 * c2 * c3],
        [-l1 * l2 * b1 * b2 * c2 * c3, -l2 * l2 * b2 * b2 * c3 * c3, -l2 * l3 * b2 * b3 * c1 * c3,
         l1 * l2 * b2 * b2 * c1 * c3, l2 * l2 * b2 * b3 * c2 * c3, l2 * l3 * b1 * b2 * c3 * c3],
        [-l1 * l3 * b1 * b3 * c1 * c2, -l2 * l3 * b2 * b3 * c1 * c3, -l3 * l3 * b3 * b3 * c1 * c1,
         l1 * l3 * b2 * b3 * c1 * c1, l2 * l3 * b3 * b3 * c1 * c2, l3 * l3 * b1 * b3 * c1 * c3],
    ]
    return _divide(rows, 16 * area ** 3)


def closed_form(kind: MatrixKind, b: Sequence, c: Sequence, area: Any, l: Sequence) -> list[list]:
    """Evaluate one closed form on arbitrary scalars; returns a 6x6 nested list."""
    kind = MatrixKind(kind)
    K = MatrixKind
    if kind is K.mass_NN:
        return _mass(area)
    if kind is K.stiff_xx:
        return _stiff_same(b, area)
    if kind is K.stiff_yy:
        return _stiff_same(c, area)
    if kind is K.stiff_yx:
        return _stiff_yx(b, c, area)
    if kind is K.N_dNx:
        return _n_dn(b)
    if kind is K.N_dNy:
        return _n_dn(c)
    if kind is K.U_dNx:
        return _vec_dn(b, b, l, area)
    if kind is K.V_dNx:
        return _vec_dn(c, b, l, area)
    if kind is K.U_dNy:
        return _vec_dn(b, c, l, area)
    if kind is K.V_dNy:
        return _vec_dn(c, c, l, area)
    if kind is K.UU:
        return _vec_vec(b, b, l, area)
    if kind is K.VV:
        return _vec_vec(c, c, l, area)
    if kind is K.UV:
        return _vec_vec(b, c, l, area)
    if kind is K.dUy_dUy:
        return _duy_duy(b, c, l, area)
    if kind is K.dVx_dVx:
        # the dU/dy list with b and c exchanged
        return _duy_duy(c, b, l, area)
    if kind is K.dUy_dVx:
        return _duy_dvx(b, c, l, area)
    raise ValueError(f"unknown kind {kind!r}")


@dataclass(frozen=True)
class ElementMatrix:
    kind: MatrixKind
    entries: np.ndarray
    fingerprint: tuple

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)


def _fingerprint(geom: TriangleGeometry) -> tuple:
    return tuple(float(v) for p in geom.corners for v in p) + tuple(geom.edge_sign)


def _float_args(geom: TriangleGeometry):
    return (
        [float(v) for v in geom.b],
        [float(v) for v in geom.c],
        float(geom.area),
        list(geom.edge_len),
    )


def _is_float(v) -> bool:
    return isinstance(v, (float, np.floating))


def element_matrix(kind: MatrixKind | str, geom: TriangleGeometry) -> ElementMatrix:
    """Closed-form elemental matrix of ``kind``.

    Edge lengths enter with the signs stored in ``geom``.  Float geometry
    gives a float array.  Rational geometry (``Fraction`` or ``mpq`` corners)
    gives an object array, which is exact for the kinds free of edge lengths
    (the nodal ones); edge lengths are irrational and stay floats.
    """
    kind = MatrixKind(kind)
    if _is_float(geom.area) or kind.row_is_vector or kind.col_is_vector:
        b, c, area, l = _float_args(geom)
        entries = np.array(closed_form(kind, b, c, area, l), dtype=float)
    else:
        rows = closed_form(kind, geom.b, geom.c, geom.area, geom.edge_len)
        entries = np.empty((6, 6), dtype=object)
        for i in range(6):
            for j in range(6):
                entries[i, j] = rows[i][j]
    return ElementMatrix(kind, entries, _fingerprint(geom))


def curl_curl_matrix(geom: TriangleGeometry) -> np.ndarray:
    """int (dV/dx - dU/dy)(dV/dx - dU/dy)^T, from the derivative closed forms."""
    vv = element_matrix(MatrixKind.dVx_dVx, geom).entries
    uu = element_matrix(MatrixKind.dUy_dUy, geom).entries
    uv = element_matrix(MatrixKind.dUy_dVx, geom).entries
    return vv + uu - uv - uv.T


def vector_mass_matrix(geom: TriangleGeometry) -> np.ndarray:
    """int (U U^T + V V^T)."""
    return element_matrix(MatrixKind.UU, geom).entries + element_matrix(MatrixKind.VV, geom).entries


# L_a grad(L_b) = _LGRAD[(a, b)] = (basis index, factor) with factor * l_edge^{-1}
_LGRAD = {(a, b): (i, sign) for i, (_, a, b, sign) in enumerate(EDGE_BASIS)}


def _add_lgrad(col, a, b, weight, ell):
    """Add weight * L_a grad(L_b) to a coefficient column."""
    if a == b:
        # L_a grad(L_a) = -L_a grad(L_m) - L_a grad(L_n)
        for other in range(3):
            if other != a:
                _add_lgrad(col, a, other, -weight, ell)
        return
    i, sign = _LGRAD[(a, b)]
    edge = EDGE_BASIS[i][0]
    col[i] += weight * sign / ell[edge]


def local_gradient_matrix(geom: TriangleGeometry) -> np.ndarray:
    """Matrix G with grad N_j = sum_i G[i, j] (U_i, V_i) pointwise.

    Built from the identities grad N_k = (3 L_k - L_l - L_m) grad L_k for a
    corner and grad N = 4 (L_k grad L_l + L_l grad L_k) for a midpoint.
    """
    ell = geom.edge_len
    G = np.zeros((6, 6))
    for k in range(3):
        for a in range(3):
            _add_lgrad(G[:, k], a, k, 3.0 if a == k else -1.0, ell)
    for j, (k, m) in enumerate(((0, 1), (1, 2), (2, 0)), start=3):
        _add_lgrad(G[:, j], k, m, 4.0, ell)
        _add_lgrad(G[:, j], m, k, 4.0, ell)
    return G
