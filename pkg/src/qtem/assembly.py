"""Degree-of-freedom numbering and sparse global assembly.

Nodal fields carry one DOF per mesh node.  Edge fields carry two DOFs per
global edge, one for each function family of the edge.  A global edge runs
from its smaller node id to its larger one.  When an element's local edge
(local corner order) runs the other way, its two local functions map to the
global pair in swapped order, each with sign -1.  The sign is realised by
giving that element a negative edge length ``l_k``, so signed element
matrices are scattered with a plain permutation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .elemental import (
    MatrixKind,
    curl_curl_matrix,
    element_matrix,
    local_gradient_matrix,
    vector_mass_matrix,
)
from .geometry import TriangleGeometry, compute_geometry
from .mesh import LOCAL_EDGES, Mesh
from .shapes import EDGE_FAMILIES, eval_UV

__all__ = [
    "KindFieldMismatch",
    "DofMap",
    "build_dof_map",
    "element_geometry",
    "assemble",
    "gradient_matrix",
    "interpolate_edge_field",
    "DERIVED_KINDS",
]

#: derived element operators on edge fields, beyond the sixteen MatrixKinds
DERIVED_KINDS = {
    "curl_curl": curl_curl_matrix,
    "vector_mass": vector_mass_matrix,
}


class KindFieldMismatch(ValueError):
    pass


@dataclass(frozen=True)
class DofMap:
    field_type: str  # "nodal" or "edge"
    n_dofs: int
    global_index: np.ndarray  # nodal: (n_nodes,); edge: (n_edges, 2); -1 = eliminated
    table: np.ndarray  # (E, 6) global DOF per local basis, -1 = eliminated
    signs: np.ndarray  # (E, 6) +1 / -1
    edge_signs: np.ndarray  # (E, 3) sign given to l_k on each element

    def element_dofs(self, e: int) -> np.ndarray:
        return self.table[e]


def build_dof_map(mesh: Mesh, field_type: str, dirichlet: bool = False) -> DofMap:
    """Number the DOFs of a nodal or edge field.

    With ``dirichlet`` the boundary nodes (nodal) or boundary edges (edge)
    are eliminated.
    """
    E = mesh.n_elements
    if field_type == "nodal":
        keep = np.ones(mesh.n_nodes, dtype=bool)
        if dirichlet:
            keep[list(mesh.boundary_nodes)] = False
        gidx = np.full(mesh.n_nodes, -1, dtype=np.int64)
        gidx[keep] = np.arange(int(keep.sum()))
        table = gidx[mesh.elements]
        return DofMap("nodal", int(keep.sum()), gidx, table,
                      np.ones((E, 6), dtype=np.int64), np.ones((E, 3), dtype=np.int64))
    if field_type != "edge":
        raise ValueError(f"field_type must be 'nodal' or 'edge', got {field_type!r}")

    edges = mesh.edges
    gidx = np.full((len(edges), 2), -1, dtype=np.int64)
    k = 0
    for e_id, (key, incident) in enumerate(edges.items()):
        if dirichlet and len(incident) == 1:
            continue
        gidx[e_id] = (k, k + 1)
        k += 2
    table = np.full((E, 6), -1, dtype=np.int64)
    signs = np.ones((E, 6), dtype=np.int64)
    edge_signs = np.ones((E, 3), dtype=np.int64)
    index = mesh.edge_index
    for e, el in enumerate(mesh.elements):
        for local_edge, (i, j, _) in enumerate(LOCAL_EDGES):
            a, b = int(el[i]), int(el[j])
            g = gidx[index[(min(a, b), max(a, b))]]
            first, second = EDGE_FAMILIES[local_edge]
            if a < b:
                table[e, first], table[e, second] = g[0], g[1]
            else:
                table[e, first], table[e, second] = g[1], g[0]
                signs[e, [first, second]] = -1
                edge_signs[e, local_edge] = -1
    return DofMap("edge", k, gidx, table, signs, edge_signs)


def element_geometry(mesh: Mesh, e: int, dofmap: DofMap | None = None) -> TriangleGeometry:
    """Geometry of element ``e``, carrying the edge signs of an edge DOF map."""
    signs = (1, 1, 1)
    if dofmap is not None and dofmap.field_type == "edge":
        signs = tuple(int(s) for s in dofmap.edge_signs[e])
    return compute_geometry(mesh.element_corners(e), signs)


def _field_types(kind) -> tuple[str, str]:
    if kind in DERIVED_KINDS:
        return "edge", "edge"
    kind = MatrixKind(kind)
    return ("edge" if kind.row_is_vector else "nodal", "edge" if kind.col_is_vector else "nodal")


def _normalise(kinds) -> list[tuple[float, object]]:
    if isinstance(kinds, (str, MatrixKind)):
        return [(1.0, kinds)]
    out = []
    for item in kinds:
        if isinstance(item, (str, MatrixKind)):
            out.append((1.0, item))
        else:
            w, k = item
            out.append((float(w), k))
    return out


def _local(kind, geom):
    if kind in DERIVED_KINDS:
        return DERIVED_KINDS[kind](geom)
    return element_matrix(kind, geom).entries


def assemble(
    mesh: Mesh,
    dofmap: DofMap,
    kinds: Iterable | str | MatrixKind,
    coefficient: float = 1.0,
    col_dofmap: DofMap | None = None,
) -> sp.csr_matrix:
    """Scatter-add ``coefficient * sum(w * local(kind))`` over all elements.

    ``kinds`` is a kind, a derived kind name (``"curl_curl"``,
    ``"vector_mass"``) or a list of kinds / ``(weight, kind)`` pairs.  Mixed
    kinds such as ``U_dNx`` need ``col_dofmap`` for their nodal columns.

    Raises
    ------
    KindFieldMismatch
        If a kind's row or column field does not match the DOF maps.
    """
    col_dofmap = dofmap if col_dofmap is None else col_dofmap
    terms = _normalise(kinds)
    for _, kind in terms:
        rt, ct = _field_types(kind)
        if rt != dofmap.field_type or ct != col_dofmap.field_type:
            raise KindFieldMismatch(
                f"{getattr(kind, 'value', kind)} needs ({rt}, {ct}) DOF maps, "
                f"got ({dofmap.field_type}, {col_dofmap.field_type})"
            )
    edge_map = dofmap if dofmap.field_type == "edge" else col_dofmap
    rows, cols, vals = [], [], []
    for e in range(mesh.n_elements):
        geom = element_geometry(mesh, e, edge_map)
        local = sum(w * _local(kind, geom) for w, kind in terms)
        r = dofmap.table[e]
        c = col_dofmap.table[e]
        rmask, cmask = r >= 0, c >= 0
        block = local[np.ix_(rmask, cmask)]
        rr, cc = np.meshgrid(r[rmask], c[cmask], indexing="ij")
        rows.append(rr.ravel())
        cols.append(cc.ravel())
        vals.append(block.ravel())
    rows = np.concatenate(rows) if rows else np.empty(0, dtype=np.int64)
    cols = np.concatenate(cols) if cols else np.empty(0, dtype=np.int64)
    vals = coefficient * (np.concatenate(vals) if vals else np.empty(0))
    M = sp.coo_matrix((vals, (rows, cols)), shape=(dofmap.n_dofs, col_dofmap.n_dofs)).tocsr()
    M.sort_indices()
    return M


def gradient_matrix(mesh: Mesh, edge_map: DofMap, node_map: DofMap) -> sp.csr_matrix:
    """Global map from nodal coefficients to the edge coefficients of their gradient."""
    if edge_map.field_type != "edge" or node_map.field_type != "nodal":
        raise KindFieldMismatch("gradient_matrix needs an edge map and a nodal map")
    entries: dict[tuple[int, int], float] = {}
    for e in range(mesh.n_elements):
        G = local_gradient_matrix(element_geometry(mesh, e, edge_map))
        r, c = edge_map.table[e], node_map.table[e]
        for i in range(6):
            if r[i] < 0:
                continue
            for j in range(6):
                if c[j] >= 0 and G[i, j] != 0.0:
                    # an edge coefficient depends only on traces along that edge,
                    # so both incident elements give the same value
                    entries[(int(r[i]), int(c[j]))] = G[i, j]
    if entries:
        keys = sorted(entries)
        rows, cols = zip(*keys)
        vals = [entries[k] for k in keys]
    else:
        rows, cols, vals = (), (), ()
    return sp.csr_matrix((vals, (rows, cols)), shape=(edge_map.n_dofs, node_map.n_dofs))


def interpolate_edge_field(mesh: Mesh, dofmap: DofMap, coeffs: Sequence[float], e: int, L) -> np.ndarray:
    """Vector field ``sum_i x_i (U_i, V_i)`` on element ``e`` at area coordinates ``L``.

    Returns an array of shape (..., 2).  Eliminated DOFs contribute zero.
    """
    geom = element_geometry(mesh, e, dofmap)
    U, V = eval_UV(geom, L)
    dofs = dofmap.table[e]
    coeffs = np.asarray(coeffs, dtype=float)
    x = np.where(dofs >= 0, coeffs[np.maximum(dofs, 0)], 0.0)
    return np.stack([U @ x, V @ x], axis=-1)
