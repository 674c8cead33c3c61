import numpy as np
import pytest

from qtem import area_coordinates, compute_geometry, curl_UV, eval_N, eval_UV, grad_N, local_gradient_matrix
from qtem.shapes import EDGE_FAMILIES
from support import UNIT, float_triangles

EDGE_CORNERS = ((0, 1), (1, 2), (2, 0))


def _fd_grad(geom, field, L, h=1e-6):
    """Central-difference Cartesian gradient of a function of area coordinates."""
    x = np.asarray(geom.corners, dtype=float).T @ L
    out = []
    for d in np.eye(2):
        plus = field(np.array(area_coordinates(geom, x + h * d), dtype=float))
        minus = field(np.array(area_coordinates(geom, x - h * d), dtype=float))
        out.append((plus - minus) / (2 * h))
    return np.stack(out, axis=-1)


@pytest.mark.parametrize(
    "L, expected",
    [
        ((1, 0, 0), (1, 0, 0, 0, 0, 0)),
        ((0.5, 0.5, 0), (0, 0, 0, 1, 0, 0)),
        ((1 / 3, 1 / 3, 1 / 3), (-1 / 9, -1 / 9, -1 / 9, 4 / 9, 4 / 9, 4 / 9)),
    ],
)
def test_eval_N_examples(L, expected):
    assert eval_N(np.array(L, dtype=float)) == pytest.approx(expected, abs=1e-15)


def test_grad_N_examples():
    g = compute_geometry(UNIT)
    centroid = np.full(3, 1 / 3)
    assert grad_N(g, centroid)[0, 0] == pytest.approx(-1 / 3)
    assert grad_N(g, np.array([1.0, 0, 0]))[0, 0] == pytest.approx(-3.0)
    fd = _fd_grad(g, eval_N, centroid)
    assert np.allclose(grad_N(g, centroid), fd, atol=1e-8)


def test_partition_of_unity():
    rng = np.random.default_rng(0)
    for g in float_triangles(20, seed=5):
        L = rng.dirichlet(np.ones(3), size=100)
        assert np.allclose(eval_N(L).sum(axis=-1), 1.0, atol=1e-13)
        scale = np.abs(grad_N(g, L)).max()
        assert np.allclose(grad_N(g, L).sum(axis=-2), 0.0, atol=1e-13 * scale)


def test_eval_UV_unit_corner():
    U, V = eval_UV(compute_geometry(UNIT), np.array([1.0, 0, 0]))
    assert U == pytest.approx([1, 0, 0, 0, 0, 0], abs=1e-15)


def test_only_one_L_factor():
    U, V = eval_UV(float_triangles(1, seed=6)[0], np.array([0.0, 1.0, 0.0]))
    nonzero = set(np.flatnonzero(np.abs(U) + np.abs(V) > 1e-15))
    assert nonzero <= {1, 3}  # functions carrying L2


def test_tangential_locality():
    """Only the two functions of an edge have a tangential trace along it."""
    ts = np.linspace(0.1, 0.9, 5)
    for g in float_triangles(20, seed=7):
        P = np.asarray(g.corners, dtype=float)
        for edge, (i, j) in enumerate(EDGE_CORNERS):
            t = P[j] - P[i]
            L = np.zeros((5, 3))
            L[:, i], L[:, j] = 1 - ts, ts
            U, V = eval_UV(g, L)
            tang = U * t[0] + V * t[1]
            mag = np.hypot(U, V).max()
            for k in range(6):
                if k in EDGE_FAMILIES[edge]:
                    assert np.abs(tang[:, k]).max() > 1e-3 * mag
                else:
                    assert np.abs(tang[:, k]).max() <= 1e-12 * mag


def test_tangential_trace_scales_with_edge_sign():
    base = float_triangles(1, seed=8, signs=False)[0]
    P = np.asarray(base.corners, dtype=float)
    for signs in np.ndindex(2, 2, 2):
        s = tuple(1 - 2 * v for v in signs)
        g = base.with_signs(s)
        for edge, (i, j) in enumerate(EDGE_CORNERS):
            L = np.zeros(3)
            L[i], L[j] = 0.3, 0.7
            t = P[j] - P[i]
            U0, V0 = eval_UV(base, L)
            U1, V1 = eval_UV(g, L)
            fam = list(EDGE_FAMILIES[edge])
            assert np.allclose((U1 * t[0] + V1 * t[1])[fam], s[edge] * (U0 * t[0] + V0 * t[1])[fam])


def test_curl_examples():
    g = compute_geometry(UNIT)
    assert curl_UV(g)[0] == pytest.approx(1.0)
    for g in float_triangles(10, seed=9):
        L = np.full(3, 1 / 3)
        dU = _fd_grad(g, lambda L: eval_UV(g, L)[0], L)
        dV = _fd_grad(g, lambda L: eval_UV(g, L)[1], L)
        assert np.allclose(curl_UV(g), dV[:, 0] - dU[:, 1], rtol=1e-6, atol=1e-6)


def test_curl_sign_flip_negates_one_family():
    g = float_triangles(1, seed=10, signs=False)[0]
    for edge in range(3):
        s = [1, 1, 1]
        s[edge] = -1
        ratio = curl_UV(g.with_signs(s)) / curl_UV(g)
        expected = np.ones(6)
        expected[list(EDGE_FAMILIES[edge])] = -1
        assert np.allclose(ratio, expected)


def test_gradient_inclusion_pointwise():
    rng = np.random.default_rng(1)
    for g in float_triangles(50, seed=11):
        G = local_gradient_matrix(g)
        L = rng.dirichlet(np.ones(3), size=10)
        U, V = eval_UV(g, L)
        dN = grad_N(g, L)
        scale = np.abs(dN).max()
        assert np.allclose(U @ G, dN[..., 0], atol=1e-12 * scale)
        assert np.allclose(V @ G, dN[..., 1], atol=1e-12 * scale)


def test_local_gradient_first_column():
    g = compute_geometry(UNIT)
    l1, l2, l3 = g.edge_len
    expected = [-3 / l1, 0, -1 / l3, 1 / l1, 0, 3 / l3]
    assert local_gradient_matrix(g)[:, 0] == pytest.approx(expected)


def test_gradient_of_x_is_constant_field():
    rng = np.random.default_rng(2)
    for g in float_triangles(10, seed=12):
        P = np.asarray(g.corners, dtype=float)
        nodes_x = np.concatenate([P[:, 0], 0.5 * (P[[0, 1, 2], 0] + P[[1, 2, 0], 0])])
        coeffs = local_gradient_matrix(g) @ nodes_x
        U, V = eval_UV(g, rng.dirichlet(np.ones(3), size=5))
        assert np.allclose(U @ coeffs, 1.0, atol=1e-12)
        assert np.allclose(V @ coeffs, 0.0, atol=1e-12)
