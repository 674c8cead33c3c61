"""Elemental matrices for 6-node quadratic triangles in 2-D electromagnetics.

The closed-form matrices live in :mod:`qtem.elemental`; :mod:`qtem.exact` and
:mod:`qtem.quadrature` are two independent integration oracles for them.
Meshing, DOF numbering and assembly are in :mod:`qtem.mesh` and
:mod:`qtem.assembly`; :mod:`qtem.eigen` and :mod:`qtem.waveguide` turn the
assembled operators into cutoff spectra.
"""
from .assembly import DofMap, assemble, build_dof_map, gradient_matrix
from .eigen import EigenResult, solve_generalized
from .elemental import (
    ElementMatrix,
    MatrixKind,
    curl_curl_matrix,
    element_matrix,
    local_gradient_matrix,
    vector_mass_matrix,
)
from .exact import AreaPolynomial, exact_element_matrix, integrate_monomial, integrate_poly
from .geometry import DegenerateTriangle, TriangleGeometry, area_coordinates, compute_geometry
from .mesh import Mesh, gen_rect_mesh, read_mesh, write_mesh
from .quadrature import integrate_bilinear, make_rule, quadrature_element_matrix
from .shapes import curl_UV, eval_N, eval_UV, grad_N

__version__ = "0.1.0"
