"""Gauss-type quadrature on the triangle, in area coordinates.

Weights are normalised to sum to one, so ``int f dA ~ A * sum(w * f(L))``.
Degrees 2 and 5 use the classical 3- and 7-point symmetric rules; higher
degrees (up to 10) use a collapsed Gauss-Jacobi x Gauss-Legendre product
rule.  Every rule is checked against the exact monomial integrals when it is
built.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import sqrt

import numpy as np
from scipy.special import roots_jacobi

from .elemental import MatrixKind
from .exact import integrate_monomial
from .geometry import TriangleGeometry
from .shapes import eval_N, eval_UV, grad_N, uv_derivatives

__all__ = [
    "UnsupportedDegree",
    "QuadratureRule",
    "make_rule",
    "integrate_bilinear",
    "field_evaluator",
    "quadrature_element_matrix",
    "MAX_DEGREE",
]

MAX_DEGREE = 10


class UnsupportedDegree(ValueError):
    pass


@dataclass(frozen=True)
class QuadratureRule:
    points: np.ndarray  # (n, 3) area coordinates
    weights: np.ndarray  # (n,), sum to 1
    exactness_degree: int

    def __len__(self):
        return len(self.weights)

    def check(self, tol: float = 1e-14) -> None:
        """Compare against the exact integral of every monomial up to the rule's degree."""
        if abs(self.weights.sum() - 1.0) > tol:
            raise AssertionError(f"weights sum to {self.weights.sum()!r}")
        if np.any(self.points < -tol) or np.any(self.points > 1 + tol):
            raise AssertionError("quadrature point outside the triangle")
        L = self.points
        for total in range(self.exactness_degree + 1):
            for i in range(total + 1):
                for j in range(total - i + 1):
                    k = total - i - j
                    exact = float(integrate_monomial(i, j, k))
                    approx = float(self.weights @ (L[:, 0] ** i * L[:, 1] ** j * L[:, 2] ** k))
                    if abs(approx - exact) > tol * exact:
                        raise AssertionError(
                            f"degree-{self.exactness_degree} rule fails on L^({i},{j},{k}): "
                            f"{approx!r} vs {exact!r}"
                        )


def _orbit3(a):
    # (a, a, 1-2a) and its distinct permutations
    b = 1.0 - 2.0 * a
    return [(b, a, a), (a, b, a), (a, a, b)]


def _rule_deg2():
    pts = _orbit3(1.0 / 6.0)
    return np.array(pts), np.full(3, 1.0 / 3.0), 2


def _rule_deg5():
    r15 = sqrt(15.0)
    a1, a2 = (6.0 - r15) / 21.0, (6.0 + r15) / 21.0
    w1, w2 = (155.0 - r15) / 1200.0, (155.0 + r15) / 1200.0
    pts = [(1 / 3, 1 / 3, 1 / 3)] + _orbit3(a1) + _orbit3(a2)
    w = [9.0 / 40.0] + [w1] * 3 + [w2] * 3
    return np.array(pts), np.array(w), 5


def _rule_collapsed(degree):
    n = degree // 2 + 1
    # Jacobi weight (1 - x) absorbs the Jacobian of the collapse s = u, t = (1 - u) v
    xu, wu = roots_jacobi(n, 1.0, 0.0)
    xv, wv = np.polynomial.legendre.leggauss(n)
    u = (1 + xu) / 2
    v = (1 + xv) / 2
    wu = wu / 4  # dx -> du and (1-x) -> 2(1-u)
    wv = wv / 2
    s = np.repeat(u, n)
    t = np.outer(1 - u, v).ravel()
    w = np.outer(wu, wv).ravel() * 2  # reference area 1/2
    pts = np.column_stack([1 - s - t, s, t])
    return pts, w, 2 * n - 1


@lru_cache(maxsize=None)
def make_rule(min_degree: int) -> QuadratureRule:
    """Smallest tabulated rule exact for all polynomials of degree ``min_degree``.

    Raises
    ------
    UnsupportedDegree
        For ``min_degree > 10``.
    """
    if min_degree > MAX_DEGREE:
        raise UnsupportedDegree(f"no rule tabulated beyond degree {MAX_DEGREE} (asked {min_degree})")
    if min_degree <= 2:
        pts, w, deg = _rule_deg2()
    elif min_degree <= 5:
        pts, w, deg = _rule_deg5()
    else:
        pts, w, deg = _rule_collapsed(min_degree)
    pts.setflags(write=False)
    w.setflags(write=False)
    rule = QuadratureRule(pts, w, deg)
    rule.check()
    return rule


def integrate_bilinear(f, g, geom: TriangleGeometry, rule: QuadratureRule) -> np.ndarray:
    """``M[i, j] = A * sum_q w_q f_i(q) . g_j(q)``.

    ``f`` and ``g`` map an (n, 3) array of area coordinates to either (n, 6)
    scalar values or (n, 6, d) Cartesian components, in which case the
    components are contracted.
    """
    F = np.asarray(f(rule.points), dtype=float)
    G = np.asarray(g(rule.points), dtype=float)
    if F.ndim == 2:
        F = F[..., None]
    if G.ndim == 2:
        G = G[..., None]
    return float(geom.area) * np.einsum("q,qid,qjd->ij", rule.weights, F, G)


def field_evaluator(name: str, geom: TriangleGeometry):
    """Pointwise evaluator of one integrand factor, for use with :func:`integrate_bilinear`.

    ``name`` is one of N, dNx, dNy, U, V, dUy, dVx.
    """
    if name == "N":
        return eval_N
    if name in ("dNx", "dNy"):
        axis = 0 if name == "dNx" else 1
        return lambda L: grad_N(geom, L)[..., axis]
    if name in ("U", "V"):
        pick = 0 if name == "U" else 1
        return lambda L: eval_UV(geom, L)[pick]
    if name in ("dUy", "dVx"):
        const = uv_derivatives(geom)["Uy" if name == "dUy" else "Vx"]
        return lambda L: np.broadcast_to(const, np.shape(L)[:-1] + (6,))
    raise ValueError(f"unknown field {name!r}")


def quadrature_element_matrix(kind, geom: TriangleGeometry, rule: QuadratureRule | None = None) -> np.ndarray:
    """Elemental matrix of ``kind`` by numerical quadrature (degree-5 rule by default)."""
    row, col = MatrixKind(kind).fields
    rule = make_rule(5) if rule is None else rule
    return integrate_bilinear(field_evaluator(row, geom), field_evaluator(col, geom), geom, rule)
