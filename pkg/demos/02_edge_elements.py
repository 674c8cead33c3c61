"""Edge (vector) elements: signs, tangential continuity and the gradient null space."""
import numpy as np

from qtem import (
    area_coordinates,
    assemble,
    build_dof_map,
    compute_geometry,
    curl_curl_matrix,
    gen_rect_mesh,
    local_gradient_matrix,
    solve_generalized,
)
from qtem.assembly import element_geometry, interpolate_edge_field

# %% one element: the curl-curl matrix has rank 1 and kills gradients
geom = compute_geometry([(0.0, 0.0), (1.0, 0.2), (0.3, 0.9)])
C = curl_curl_matrix(geom)
G = local_gradient_matrix(geom)
print("singular values", np.linalg.svd(C, compute_uv=False))
print("|C G|", np.linalg.norm(C @ G), " rank G", np.linalg.matrix_rank(G))

# %% a 1x1 square (2 elements) -- the diagonal is shared
mesh = gen_rect_mesh(1.0, 1.0, 1, 1)
dofs = build_dof_map(mesh, "edge")
print("local edge signs per element\n", dofs.edge_signs)
x = np.random.default_rng(0).standard_normal(dofs.n_dofs)

a, c = mesh.nodes[0], mesh.nodes[8]
t = (c - a) / np.linalg.norm(c - a)
for s in (0.25, 0.5, 0.75):
    p = a + s * (c - a)
    traces = [
        interpolate_edge_field(mesh, dofs, x, e, np.array(area_coordinates(element_geometry(mesh, e, dofs), p))) @ t
        for e in range(2)
    ]
    print(f"s={s}: tangential trace from each side {traces[0]:+.15f} {traces[1]:+.15f}")

# %% zero eigenvalues of the curl-curl / vector-mass pencil = discrete gradients
mesh = gen_rect_mesh(1.0, 1.0, 2, 2)
dofs = build_dof_map(mesh, "edge")
A, B = assemble(mesh, dofs, "curl_curl"), assemble(mesh, dofs, "vector_mass")
lam = solve_generalized(A, B).eigenvalues
print("near-zero eigenvalues:", int(np.sum(lam < 1e-9 * abs(A).max())), " nodes - 1:", mesh.n_nodes - 1)
# the curl of these functions is piecewise constant, so this converges only at O(h^2)
print("first nonzero:", lam[mesh.n_nodes - 1], " (2 pi^2 =", 2 * np.pi**2, ")")
