from fractions import Fraction

import numpy as np
import pytest

from qtem import (
    MatrixKind,
    compute_geometry,
    curl_UV,
    curl_curl_matrix,
    element_matrix,
    local_gradient_matrix,
    quadrature_element_matrix,
    vector_mass_matrix,
)
from qtem.elemental import KIND_FIELDS, SYMMETRIC_KINDS, printed_dvx_dvx
from support import UNIT, float_triangles, invariant_deviations, rational_triangles


def test_kind_table_is_complete():
    assert len(MatrixKind) == 16
    assert set(KIND_FIELDS) == set(MatrixKind)


def test_mass_examples():
    M = element_matrix(MatrixKind.mass_NN, compute_geometry(UNIT)).entries
    assert M[0, 0] == pytest.approx(1 / 60, rel=1e-15)
    assert M[3, 3] == pytest.approx(4 / 45, rel=1e-15)
    assert M[0, 4] == pytest.approx(-4 / 360, rel=1e-15)


def test_mass_rational_is_exact():
    g = rational_triangles(1, seed=0)[0]
    M = element_matrix(MatrixKind.mass_NN, g).entries
    assert M.dtype == object
    assert M[3, 4] == g.area * 16 / 180
    assert isinstance(M[3, 4], Fraction)


def test_unit_examples():
    g = compute_geometry(UNIT)
    assert element_matrix(MatrixKind.stiff_xx, g).entries[0, 0] == pytest.approx(0.5)
    assert element_matrix(MatrixKind.UU, g).entries[0, 0] == pytest.approx(1 / 12)
    assert vector_mass_matrix(g)[0, 0] == pytest.approx(1 / 12)
    assert curl_curl_matrix(g)[0, 0] == pytest.approx(0.5)


def test_accepts_string_kind():
    g = compute_geometry(UNIT)
    assert np.array_equal(element_matrix("VV", g).entries, element_matrix(MatrixKind.VV, g).entries)
    with pytest.raises(ValueError):
        element_matrix("nope", g)


@pytest.mark.parametrize("kind", list(MatrixKind))
def test_matches_quadrature(kind):
    for g in float_triangles(100, seed=1):
        cf = element_matrix(kind, g).entries
        q = quadrature_element_matrix(kind, g)
        assert np.linalg.norm(cf - q) <= 1e-12 * np.linalg.norm(q)


def test_printed_dvx_dvx_differs_only_at_33():
    g = float_triangles(1, seed=2)[0]
    b, c = [float(v) for v in g.b], [float(v) for v in g.c]
    printed = np.array(printed_dvx_dvx(b, c, float(g.area), g.edge_len))
    q = quadrature_element_matrix(MatrixKind.dVx_dVx, g)
    bad = np.argwhere(np.abs(printed - q) > 1e-12 * np.linalg.norm(q))
    assert bad.tolist() == [[2, 2]]


def test_invariants():
    for g in float_triangles(200, seed=3):
        dev = invariant_deviations(g)
        assert max(dev.values()) < 1e-13, dev


def test_transpose_pairing():
    g = float_triangles(1, seed=4)[0]
    from qtem import grad_N, integrate_bilinear, make_rule

    xy = integrate_bilinear(lambda L: grad_N(g, L)[..., 0], lambda L: grad_N(g, L)[..., 1], g, make_rule(5))
    assert np.allclose(xy, element_matrix(MatrixKind.stiff_yx, g).entries.T, atol=1e-14)


def test_symmetric_kinds_listed():
    assert MatrixKind.UV not in SYMMETRIC_KINDS
    assert MatrixKind.stiff_yx not in SYMMETRIC_KINDS


def test_curl_curl_rank_one():
    for g in float_triangles(50, seed=5):
        C = curl_curl_matrix(g)
        s = np.linalg.svd(C, compute_uv=False)
        assert s[1] <= 1e-12 * s[0]
        cu = curl_UV(g)
        assert np.allclose(C, float(g.area) * np.outer(cu, cu), rtol=1e-12, atol=1e-12 * s[0])


def test_curl_curl_annihilates_gradients():
    for g in float_triangles(50, seed=6):
        C, G = curl_curl_matrix(g), local_gradient_matrix(g)
        assert np.linalg.norm(C @ G) < 1e-11 * np.linalg.norm(C) * np.linalg.norm(G)
        assert np.linalg.matrix_rank(G) == 5


def test_sign_flip_is_similarity():
    g = float_triangles(1, seed=7, signs=False)[0]
    flipped = g.with_signs((1, -1, 1))
    for f in (curl_curl_matrix, vector_mass_matrix):
        assert np.allclose(np.linalg.eigvalsh(f(g)), np.linalg.eigvalsh(f(flipped)), atol=1e-12)


def test_vector_mass_positive_definite():
    for g in float_triangles(50, seed=8):
        assert np.linalg.eigvalsh(vector_mass_matrix(g)).min() > 0


def test_fingerprint_tracks_geometry():
    g = compute_geometry(UNIT)
    assert element_matrix("UU", g).fingerprint != element_matrix("UU", g.with_signs((-1, 1, 1))).fingerprint
