"""Shared helpers for the test suite."""
from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from qtem import compute_geometry, eval_UV
from qtem.mesh import Mesh
from qtem.verify import random_triangles

UNIT = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]

# mirrored triangle (x <-> y) has corners 2 and 3 swapped; new node i = old node MIRROR_NODES[i]
MIRROR_NODES = (0, 2, 1, 5, 4, 3)


def float_triangles(n, seed, signs=True):
    out = []
    for corners, s in random_triangles(n, seed):
        out.append(compute_geometry(corners, s if signs else (1, 1, 1)))
    return out


def rational_triangles(n, seed, denom=97):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        pts = [(Fraction(int(rng.integers(-denom, denom + 1)), denom),
                Fraction(int(rng.integers(-denom, denom + 1)), denom)) for _ in range(3)]
        (x1, y1), (x2, y2), (x3, y3) = pts
        if abs((x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1)) > Fraction(1, 20):
            out.append(compute_geometry(pts))
    return out


def permutation_matrix(perm, signs=None):
    P = np.zeros((6, 6))
    signs = np.ones(6) if signs is None else signs
    for i, (j, s) in enumerate(zip(perm, signs)):
        P[i, j] = s
    return P


def mirror_vector_map(geom, mirror, n_points=7, seed=0):
    """Signed permutation with (U', V')_i = s_i (V, U)_perm[i] under reflection.

    Found by pointwise matching of the two bases at random points.
    """
    rng = np.random.default_rng(seed)
    L = rng.dirichlet(np.ones(3), size=n_points)
    Lm = L[:, [0, 2, 1]]  # corners 2 and 3 trade places in the mirror
    U, V = eval_UV(geom, L)
    Um, Vm = eval_UV(mirror, Lm)
    perm, signs = [], []
    for i in range(6):
        for j in range(6):
            for s in (1.0, -1.0):
                if np.allclose(Um[:, i], s * V[:, j], atol=1e-12) and np.allclose(Vm[:, i], s * U[:, j], atol=1e-12):
                    perm.append(j)
                    signs.append(s)
                    break
            else:
                continue
            break
        else:
            raise AssertionError(f"mirror basis function {i} matches nothing")
    return perm, np.array(signs)


# two triangles sharing the edge A-C of the unit square A(0,0) B(1,0) C(1,1) D(0,1)
_SQUARE = {"A": (0.0, 0.0), "B": (1.0, 0.0), "C": (1.0, 1.0), "D": (0.0, 1.0)}


def two_element_mesh(labels, rot0=0, rot1=0):
    """Two-element mesh of the unit square split along A-C.

    ``labels`` maps A, B, C, D to corner node ids 0..3; ``rot0`` / ``rot1``
    cyclically rotate the local corner order of each element.
    """
    corner_xy = {labels[k]: _SQUARE[k] for k in _SQUARE}
    nodes = [corner_xy[i] for i in range(4)]
    mids = {}

    def mid(i, j):
        key = (min(i, j), max(i, j))
        if key not in mids:
            mids[key] = len(nodes)
            xi, xj = np.array(nodes[i]), np.array(nodes[j])
            nodes.append(tuple(0.5 * (xi + xj)))
        return mids[key]

    els = []
    for tri, rot in ((("A", "B", "C"), rot0), (("A", "C", "D"), rot1)):
        ids = [labels[t] for t in tri]
        ids = ids[rot:] + ids[:rot]
        els.append(ids + [mid(ids[0], ids[1]), mid(ids[1], ids[2]), mid(ids[2], ids[0])])
    boundary = set(range(len(nodes))) - {mids[(min(labels["A"], labels["C"]), max(labels["A"], labels["C"]))]}
    return Mesh(np.array(nodes), np.array(els), frozenset(boundary)), (labels["A"], labels["C"])


def all_labelings():
    for perm in itertools.permutations(range(4)):
        yield dict(zip("ABCD", perm))


# ---- elemental invariants, shared with the acceptance suite ----

from qtem import MatrixKind as K  # noqa: E402
from qtem import element_matrix  # noqa: E402
from qtem.elemental import SYMMETRIC_KINDS  # noqa: E402

# kind on the mirrored triangle -> (partner kind on the original, transpose?)
MIRROR_PARTNER = {
    K.mass_NN: (K.mass_NN, False),
    K.stiff_xx: (K.stiff_yy, False),
    K.stiff_yy: (K.stiff_xx, False),
    K.stiff_yx: (K.stiff_yx, True),
    K.N_dNx: (K.N_dNy, False),
    K.N_dNy: (K.N_dNx, False),
    K.U_dNx: (K.V_dNy, False),
    K.V_dNy: (K.U_dNx, False),
    K.V_dNx: (K.U_dNy, False),
    K.U_dNy: (K.V_dNx, False),
    K.UU: (K.VV, False),
    K.VV: (K.UU, False),
    K.UV: (K.UV, True),
    K.dUy_dUy: (K.dVx_dVx, False),
    K.dVx_dVx: (K.dUy_dUy, False),
    K.dUy_dVx: (K.dUy_dVx, True),
}


def _rel(a, ref):
    return np.linalg.norm(a - ref) / max(np.linalg.norm(ref), 1e-300)


def invariant_deviations(geom):
    """Largest deviation of each algebraic invariant on one triangle, as a dict."""
    M = {k: element_matrix(k, geom).entries for k in K}
    b = np.array(geom.b, dtype=float)
    c = np.array(geom.c, dtype=float)
    out = {}
    out["row_sum"] = max(
        np.abs(M[k].sum(axis=1)).max() / np.abs(M[k]).max() for k in (K.stiff_xx, K.stiff_yy, K.stiff_yx)
    )
    # column j of N_dNx sums to int dN_j/dx: b_j/6 at corners, -2 b_opp/3 at midpoints
    opp = [2, 0, 1]
    col_x = np.concatenate([b / 6, -2 * b[opp] / 3])
    col_y = np.concatenate([c / 6, -2 * c[opp] / 3])
    scale = max(np.abs(b).max(), np.abs(c).max())
    out["column_sum_corner"] = max(
        np.abs(M[K.N_dNx].sum(axis=0)[:3] - col_x[:3]).max(), np.abs(M[K.N_dNy].sum(axis=0)[:3] - col_y[:3]).max()
    ) / scale
    out["column_sum_midside"] = max(
        np.abs(M[K.N_dNx].sum(axis=0)[3:] - col_x[3:]).max(), np.abs(M[K.N_dNy].sum(axis=0)[3:] - col_y[3:]).max()
    ) / scale
    out["total_sum"] = abs(M[K.mass_NN].sum() - float(geom.area)) / float(geom.area)
    out["symmetry"] = max(_rel(M[k], M[k].T) for k in SYMMETRIC_KINDS)

    mirror = geom.mirrored().with_signs(geom.edge_sign[::-1])
    Pn = permutation_matrix(MIRROR_NODES)
    vperm, vsign = mirror_vector_map(geom, mirror)
    Pv = permutation_matrix(vperm, vsign)
    worst = 0.0
    for kind, (partner, transpose) in MIRROR_PARTNER.items():
        ref = M[partner].T if transpose else M[partner]
        R = Pv if kind.row_is_vector else Pn
        C = Pv if kind.col_is_vector else Pn
        worst = max(worst, _rel(element_matrix(kind, mirror).entries, R @ ref @ C.T))
    out["mirror"] = worst
    return out
