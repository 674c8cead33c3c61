"""Elemental matrices of one quadratic triangle, checked against both oracles."""
from fractions import Fraction

import numpy as np

from qtem import MatrixKind, compute_geometry, element_matrix, exact_element_matrix, quadrature_element_matrix

np.set_printoptions(precision=4, suppress=True, linewidth=110)

# %% geometry of a skewed triangle
geom = compute_geometry([(0.0, 0.0), (2.0, 0.3), (0.6, 1.4)])
print("area", geom.area)
print("b", geom.b)
print("c", geom.c)
print("|l|", geom.edge_abs)

# %% scalar mass matrix; its entries sum to the area
M = element_matrix(MatrixKind.mass_NN, geom).entries
print(M)
print("sum", M.sum())

# %% every kind against numerical quadrature (degree-5 rule)
for kind in MatrixKind:
    cf = element_matrix(kind, geom).entries
    q = quadrature_element_matrix(kind, geom)
    print(f"{kind.value:10s} rel. deviation {np.linalg.norm(cf - q) / np.linalg.norm(q):.1e}")

# %% rational corners: the exact oracle returns fractions
rational = compute_geometry([(Fraction(0), Fraction(0)), (Fraction(2), Fraction(3, 10)), (Fraction(3, 5), Fraction(7, 5))])
print(exact_element_matrix(MatrixKind.stiff_yx, rational)[0])
print(element_matrix(MatrixKind.stiff_yx, rational).entries[0])
