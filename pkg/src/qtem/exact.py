"""Exact rational integration over a triangle in area coordinates.

Polynomials in (L1, L2, L3) are integrated term by term with

    int L1^i L2^j L3^k dA = 2 A i! j! k! / (i + j + k + 2)!

which is returned here as the factor multiplying A.  On top of that,
:func:`exact_element_matrix` rebuilds every elemental integrand from the basis
definitions with the chain rule and integrates it exactly.  The edge lengths
are set to 1 ("l-stripped"), since they are irrational in general.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping

from .elemental import KIND_FIELDS, MatrixKind
from .geometry import TriangleGeometry, compute_geometry
from .shapes import EDGE_BASIS

try:
    from gmpy2 import mpq as FAST_RATIONAL
except ImportError:  # pragma: no cover
    FAST_RATIONAL = Fraction

__all__ = [
    "FAST_RATIONAL",
    "UnsupportedKind",
    "AreaPolynomial",
    "integrate_monomial",
    "integrate_poly",
    "exact_element_matrix",
    "rational_geometry",
]


class UnsupportedKind(ValueError):
    pass


def integrate_monomial(i: int, j: int, k: int) -> Fraction:
    """Integral of L1^i L2^j L3^k over a triangle, in units of its area."""
    if min(i, j, k) < 0:
        raise ValueError("exponents must be non-negative")
    return Fraction(2 * factorial(i) * factorial(j) * factorial(k), factorial(i + j + k + 2))


class AreaPolynomial:
    """Polynomial in area coordinates with exact rational coefficients.

    Stored canonically as a mapping ``(i, j, k) -> coefficient`` without zero
    terms; two equal polynomials therefore compare equal.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int, int], object] | None = None):
        clean = {}
        for exps, coef in (terms or {}).items():
            coef = Fraction(coef)
            if coef:
                key = tuple(int(e) for e in exps)
                clean[key] = clean.get(key, 0) + coef
        self.terms = {e: c for e, c in sorted(clean.items()) if c}

    @classmethod
    def constant(cls, value) -> "AreaPolynomial":
        return cls({(0, 0, 0): value})

    @classmethod
    def coord(cls, k: int) -> "AreaPolynomial":
        """The polynomial L_{k+1} (k is zero-based)."""
        exps = [0, 0, 0]
        exps[k] = 1
        return cls({tuple(exps): 1})

    def __add__(self, other):
        if not isinstance(other, AreaPolynomial):
            other = AreaPolynomial.constant(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return AreaPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other if isinstance(other, AreaPolynomial) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor) -> "AreaPolynomial":
        factor = Fraction(factor)
        return AreaPolynomial({e: c * factor for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, AreaPolynomial):
            return self.scale(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, 0) + c1 * c2
        return AreaPolynomial(out)

    __rmul__ = __mul__

    def diff(self, k: int) -> "AreaPolynomial":
        """Partial derivative with respect to L_{k+1}, treating L1, L2, L3 as independent."""
        out = {}
        for e, c in self.terms.items():
            if e[k]:
                e2 = list(e)
                e2[k] -= 1
                out[tuple(e2)] = c * e[k]
        return AreaPolynomial(out)

    def __call__(self, L):
        return sum(c * L[0] ** e[0] * L[1] ** e[1] * L[2] ** e[2] for e, c in self.terms.items())

    def __eq__(self, other):
        if not isinstance(other, AreaPolynomial):
            other = AreaPolynomial.constant(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "AreaPolynomial(0)"
        parts = [f"{c}*L1^{i}*L2^{j}*L3^{k}" for (i, j, k), c in self.terms.items()]
        return "AreaPolynomial(" + " + ".join(parts) + ")"


def integrate_poly(p: AreaPolynomial) -> Fraction:
    """Exact integral of ``p`` over the triangle, in units of its area."""
    return sum((c * integrate_monomial(*e) for e, c in p.terms.items()), Fraction(0))


# --- symbolic fields ---------------------------------------------------------
#
# A field is a list of six basis functions; each basis function is a dict
# mapping a geometric weight key to an AreaPolynomial.  A key is a sorted tuple
# of factors ("b", k) / ("c", k); its value on a triangle is the product of the
# factors divided by (2A)**len(key).  This is the chain rule
# dL_k/dx = b_k / (2A), dL_k/dy = c_k / (2A) kept symbolic in the geometry.

L = [AreaPolynomial.coord(k) for k in range(3)]

_N_POLYS = [
    L[0] * (2 * L[0] - 1),
    L[1] * (2 * L[1] - 1),
    L[2] * (2 * L[2] - 1),
    4 * L[0] * L[1],
    4 * L[1] * L[2],
    4 * L[2] * L[0],
]


def _derive(field, axis):
    out = []
    for fn in field:
        acc: dict = {}
        for key, poly in fn.items():
            for m in range(3):
                dp = poly.diff(m)
                if dp:
                    k2 = tuple(sorted(key + ((axis, m),)))
                    acc[k2] = acc.get(k2, AreaPolynomial()) + dp
        out.append({k: p for k, p in acc.items() if p})
    return out


def _edge_field(component):
    # sign * L_a * grad(L_b); component "b" for the x part, "c" for y
    return [{((component, b),): L[a].scale(sign)} for _, a, b, sign in EDGE_BASIS]


@lru_cache(maxsize=None)
def _fields():
    N = [{(): p} for p in _N_POLYS]
    U = _edge_field("b")
    V = _edge_field("c")
    return {
        "N": N,
        "dNx": _derive(N, "b"),
        "dNy": _derive(N, "c"),
        "U": U,
        "V": V,
        "dUy": _derive(U, "c"),
        "dVx": _derive(V, "b"),
    }


@lru_cache(maxsize=None)
def _kind_table(kind: MatrixKind):
    """Per entry: list of (row key, column key, integral factor)."""
    row_name, col_name = KIND_FIELDS[kind]
    fields = _fields()
    rows, cols = fields[row_name], fields[col_name]
    table = []
    for fi in rows:
        row = []
        for gj in cols:
            terms = []
            for k1, p1 in fi.items():
                for k2, p2 in gj.items():
                    val = integrate_poly(p1 * p2)
                    if val:
                        terms.append((k1, k2, val))
            row.append(terms)
        table.append(row)
    return table


def rational_geometry(corners, edge_sign=(1, 1, 1), rational=Fraction) -> TriangleGeometry:
    """Geometry computed in exact arithmetic from corners given as exact values.

    Floats are converted without rounding (every float is a dyadic rational).
    """
    exact = [(rational(x), rational(y)) for x, y in corners]
    return compute_geometry(exact, edge_sign)


def exact_element_matrix(kind: MatrixKind | str, geom: TriangleGeometry) -> list[list]:
    """Exact l-stripped elemental matrix for a triangle with rational coefficients.

    ``geom`` must have been computed from exact corners (see
    :func:`rational_geometry`); entries have the same rational type as its
    coefficients.  Raises :class:`UnsupportedKind` for anything that is not a
    :class:`MatrixKind`.
    """
    try:
        kind = MatrixKind(kind)
    except ValueError:
        raise UnsupportedKind(f"no exact integrand for kind {kind!r}") from None
    area = geom.area
    inv_two_a = 1 / (2 * area)
    sym = {"b": geom.b, "c": geom.c}
    cache: dict = {}

    def weight(key):
        w = cache.get(key)
        if w is None:
            w = inv_two_a ** len(key)
            for name, idx in key:
                w = w * sym[name][idx]
            cache[key] = w
        return w

    out = []
    for row in _kind_table(kind):
        out_row = []
        for terms in row:
            acc = 0 * area
            for k1, k2, val in terms:
                acc += weight(k1) * weight(k2) * _convert(val, area)
            out_row.append(acc * area)
        out.append(out_row)
    return out


def _convert(val: Fraction, like):
    # keep Fraction inputs exact; for other rational types (gmpy2.mpq) build from num/den
    if isinstance(like, Fraction):
        return val
    return type(like)(val.numerator, val.denominator)
