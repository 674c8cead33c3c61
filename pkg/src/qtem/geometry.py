"""Per-triangle geometric coefficients for the 6-node quadratic triangle.

All quantities follow the cyclic convention (k, l, m) = (1, 2, 3), (2, 3, 1),
(3, 1, 2) around the corners::

    a_k = x_l y_m - x_m y_l
    b_k = y_l - y_m
    c_k = x_m - x_l
    2 A = a_1 + a_2 + a_3

The arithmetic is written with plain operators so that ``Fraction`` or
``gmpy2.mpq`` corners give exact coefficients.  Edge lengths always involve a
square root and are stored as floats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Any, Sequence

__all__ = [
    "DegenerateTriangle",
    "TriangleGeometry",
    "compute_geometry",
    "area_coordinates",
    "DEGENERACY_TOL",
]

#: Reject a triangle when |2A| < DEGENERACY_TOL * (longest edge)**2.
DEGENERACY_TOL = 1e-14

# cyclic successor triples (k, l, m), zero-based
_CYCLE = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


class DegenerateTriangle(ValueError):
    """Raised when the three corners are (numerically) collinear."""


@dataclass(frozen=True)
class TriangleGeometry:
    """Immutable geometric data of one triangle.

    ``edge_len[k]`` is the *signed* length of edge k, where edge 0 runs
    corner 0 -> corner 1, edge 1 runs corner 1 -> corner 2 and edge 2 runs
    corner 2 -> corner 0.  Its magnitude is ``sqrt(b_m**2 + c_m**2)`` with m
    the corner opposite the edge; its sign is ``edge_sign[k]``.
    """

    corners: tuple[tuple[Any, Any], ...]
    a: tuple[Any, Any, Any]
    b: tuple[Any, Any, Any]
    c: tuple[Any, Any, Any]
    area: Any
    edge_sign: tuple[int, int, int] = (1, 1, 1)

    @property
    def edge_abs(self) -> tuple[float, float, float]:
        b, c = self.b, self.c
        # edge k is opposite corner m = (k + 2) % 3
        return tuple(
            math.sqrt(float(b[(k + 2) % 3]) ** 2 + float(c[(k + 2) % 3]) ** 2)
            for k in range(3)
        )

    @property
    def edge_len(self) -> tuple[float, float, float]:
        return tuple(s * ell for s, ell in zip(self.edge_sign, self.edge_abs))

    def with_signs(self, signs: Sequence[int]) -> "TriangleGeometry":
        """Return a copy carrying the given edge signs."""
        signs = tuple(int(s) for s in signs)
        if len(signs) != 3 or any(s not in (1, -1) for s in signs):
            raise ValueError(f"edge signs must be three values in {{+1, -1}}, got {signs}")
        return replace(self, edge_sign=signs)

    def mirrored(self) -> "TriangleGeometry":
        """Geometry of the triangle reflected across the line y = x."""
        return compute_geometry([(y, x) for x, y in self.corners])


def _coefficients(corners):
    (x1, y1), (x2, y2), (x3, y3) = corners
    xs, ys = (x1, x2, x3), (y1, y2, y3)
    a = tuple(xs[l] * ys[m] - xs[m] * ys[l] for _, l, m in _CYCLE)
    b = tuple(ys[l] - ys[m] for _, l, m in _CYCLE)
    c = tuple(xs[m] - xs[l] for _, l, m in _CYCLE)
    return a, b, c


def compute_geometry(corners: Sequence[Sequence[Any]], edge_sign=(1, 1, 1)) -> TriangleGeometry:
    """Build the geometry of a triangle from its three corners.

    A clockwise input is reordered by swapping corners 2 and 3 so that the
    stored area is positive.

    Raises
    ------
    DegenerateTriangle
        If ``|2A| < DEGENERACY_TOL * longest_edge**2``.
    """
    pts = tuple((p[0], p[1]) for p in corners)
    if len(pts) != 3:
        raise ValueError(f"a triangle needs 3 corners, got {len(pts)}")
    a, b, c = _coefficients(pts)
    twice_area = a[0] + a[1] + a[2]
    longest2 = max(float(b[k]) ** 2 + float(c[k]) ** 2 for k in range(3))
    if abs(float(twice_area)) < DEGENERACY_TOL * longest2 or longest2 == 0.0:
        raise DegenerateTriangle(f"corners {pts} are collinear (2A = {float(twice_area):.3e})")
    if twice_area < 0:
        pts = (pts[0], pts[2], pts[1])
        a, b, c = _coefficients(pts)
        twice_area = a[0] + a[1] + a[2]
    return TriangleGeometry(pts, a, b, c, twice_area / 2, tuple(edge_sign))


def area_coordinates(geom: TriangleGeometry, point) -> tuple:
    """Area coordinates ``L_k = (a_k + b_k x + c_k y) / (2A)`` of ``point``.

    Points outside the triangle are legal and give coordinates outside [0, 1].
    """
    x, y = point
    two_a = 2 * geom.area
    return tuple((geom.a[k] + geom.b[k] * x + geom.c[k] * y) / two_a for k in range(3))
