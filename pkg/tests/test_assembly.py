import numpy as np
import pytest

from qtem import (
    MatrixKind,
    area_coordinates,
    assemble,
    build_dof_map,
    element_matrix,
    gen_rect_mesh,
    gradient_matrix,
)
from qtem.assembly import KindFieldMismatch, element_geometry, interpolate_edge_field
from qtem.mesh import Mesh
from support import all_labelings, two_element_mesh

SCALAR = [MatrixKind.stiff_xx, MatrixKind.stiff_yy]


def one_element_mesh():
    nodes = [(0, 0), (2, 0.5), (0.3, 1), (1, 0.25), (1.15, 0.75), (0.15, 0.5)]
    return Mesh(np.array(nodes, dtype=float), np.array([[0, 1, 2, 3, 4, 5]]), frozenset(range(6)))


def test_dof_counts():
    m = gen_rect_mesh(1, 1, 1, 1)
    assert build_dof_map(m, "nodal", dirichlet=True).n_dofs == 1
    assert build_dof_map(m, "nodal").n_dofs == 9
    assert build_dof_map(m, "edge").n_dofs == 2 * 5
    assert build_dof_map(m, "edge", dirichlet=True).n_dofs == 2
    with pytest.raises(ValueError):
        build_dof_map(m, "face")


def test_shared_edge_gets_same_dofs():
    m = gen_rect_mesh(1, 1, 1, 1)
    dm = build_dof_map(m, "edge")
    shared = [set(dm.table[e]) for e in range(2)]
    assert len(shared[0] & shared[1]) == 2


def test_one_element_identity_scatter():
    m = one_element_mesh()
    dm = build_dof_map(m, "nodal")
    K = assemble(m, dm, SCALAR + [MatrixKind.mass_NN]).toarray()
    g = element_geometry(m, 0)
    local = sum(element_matrix(k, g).entries for k in SCALAR + [MatrixKind.mass_NN])
    assert np.array_equal(K, local)


def test_stiffness_row_sums_and_mass_total():
    m = gen_rect_mesh(2.0, 1.0, 3, 2)
    dm = build_dof_map(m, "nodal")
    K = assemble(m, dm, SCALAR)
    assert np.abs(K.sum(axis=1)).max() <= 1e-12 * abs(K).max()
    M = assemble(m, dm, MatrixKind.mass_NN)
    assert M.sum() == pytest.approx(m.total_area(), rel=1e-12)


def test_symmetric_under_dirichlet():
    m = gen_rect_mesh(1.0, 1.0, 2, 2)
    for field, kinds in (("nodal", SCALAR), ("edge", "curl_curl"), ("edge", "vector_mass")):
        A = assemble(m, build_dof_map(m, field, dirichlet=True), kinds)
        assert abs(A - A.T).max() <= 1e-14 * abs(A).max()


def test_weights_and_coefficient():
    m = gen_rect_mesh(1.0, 1.0, 2, 1)
    dm = build_dof_map(m, "nodal")
    a = assemble(m, dm, [(2.0, MatrixKind.mass_NN), MatrixKind.stiff_xx], coefficient=0.5)
    b = 0.5 * (2.0 * assemble(m, dm, MatrixKind.mass_NN) + assemble(m, dm, MatrixKind.stiff_xx))
    assert abs(a - b).max() < 1e-15


def test_mixed_kind_needs_both_maps():
    m = gen_rect_mesh(1.0, 1.0, 2, 1)
    edge, node = build_dof_map(m, "edge"), build_dof_map(m, "nodal")
    A = assemble(m, edge, MatrixKind.U_dNx, col_dofmap=node)
    assert A.shape == (edge.n_dofs, node.n_dofs)
    with pytest.raises(KindFieldMismatch):
        assemble(m, edge, MatrixKind.U_dNx)
    with pytest.raises(KindFieldMismatch):
        assemble(m, node, "curl_curl")


def test_curl_curl_kills_global_gradients():
    m = gen_rect_mesh(2.0, 1.0, 3, 2)
    edge, node = build_dof_map(m, "edge"), build_dof_map(m, "nodal")
    C = assemble(m, edge, "curl_curl")
    G = gradient_matrix(m, edge, node)
    x = np.random.default_rng(0).standard_normal(node.n_dofs)
    assert np.linalg.norm(C @ (G @ x)) <= 1e-10 * abs(C).max() * np.linalg.norm(G @ x)


def test_gradient_matrix_reproduces_field_gradient():
    m = gen_rect_mesh(1.0, 1.0, 2, 2)
    edge, node = build_dof_map(m, "edge"), build_dof_map(m, "nodal")
    x, y = m.nodes[:, 0], m.nodes[:, 1]
    coeffs = gradient_matrix(m, edge, node) @ (x * x + 3 * x * y)
    L = np.array([0.2, 0.5, 0.3])
    for e in range(m.n_elements):
        P = m.nodes[m.elements[e, :3]]
        px, py = L @ P
        assert np.allclose(interpolate_edge_field(m, edge, coeffs, e, L), [2 * px + 3 * py, 3 * px], atol=1e-12)


def shared_traces(mesh, ends, coeffs, dm, n=5):
    a, c = (mesh.nodes[i] for i in ends)
    t = (c - a) / np.linalg.norm(c - a)
    out = []
    for e in range(2):
        g = element_geometry(mesh, e, dm)
        pts = [a + s * (c - a) for s in np.linspace(0.1, 0.9, n)]
        L = np.array([area_coordinates(g, p) for p in pts], dtype=float)
        out.append(interpolate_edge_field(mesh, dm, coeffs, e, L) @ t)
    return out


def test_tangential_continuity_all_labelings():
    rng = np.random.default_rng(1)
    patterns = set()
    for labels in all_labelings():
        for rot0 in range(3):
            for rot1 in range(3):
                mesh, ends = two_element_mesh(labels, rot0, rot1)
                mesh.validate()
                dm = build_dof_map(mesh, "edge")
                patterns.add(tuple(dm.edge_signs[0]))
                coeffs = rng.standard_normal(dm.n_dofs)
                t0, t1 = shared_traces(mesh, ends, coeffs, dm)
                assert np.abs(t0 - t1).max() <= 1e-11 * max(np.abs(t0).max(), 1.0)
    # a cyclic corner order can never be monotone, so +++ and --- are unreachable
    assert len(patterns) == 6


def test_interpolation_ignores_eliminated_dofs():
    m = gen_rect_mesh(1, 1, 1, 1)
    dm = build_dof_map(m, "edge", dirichlet=True)
    val = interpolate_edge_field(m, dm, np.zeros(dm.n_dofs), 0, np.full(3, 1 / 3))
    assert np.array_equal(val, [0.0, 0.0])
