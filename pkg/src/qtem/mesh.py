"""Six-node triangle meshes: structured generation and a plain-text format.

File layout (UTF-8)::

    qtmesh 1
    nodes N
    <id> <x> <y>            # N lines, ids 0..N-1 ascending
    elements E
    <id> <n1> ... <n6>      # corners counter-clockwise, then mid12 mid23 mid31
    boundary B
    <node_id>               # B lines

Blank lines and ``#`` comments are ignored.  Coordinates are written with 17
significant digits so a write/read round trip is exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

__all__ = [
    "InvalidDimensions",
    "ParseError",
    "InvariantViolation",
    "Mesh",
    "gen_rect_mesh",
    "read_mesh",
    "write_mesh",
]

# (corner, corner, midpoint) local indices of the three edges
LOCAL_EDGES = ((0, 1, 3), (1, 2, 4), (2, 0, 5))


class InvalidDimensions(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class InvariantViolation(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Mesh:
    nodes: np.ndarray  # (N, 2)
    elements: np.ndarray  # (E, 6) int
    boundary_nodes: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float).reshape(-1, 2)
        elements = np.asarray(self.elements, dtype=np.int64).reshape(-1, 6)
        nodes.setflags(write=False)
        elements.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "boundary_nodes", frozenset(int(n) for n in self.boundary_nodes))

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_elements(self) -> int:
        return len(self.elements)

    @cached_property
    def edges(self) -> dict[tuple[int, int], list[int]]:
        """Map (min corner, max corner) -> incident element indices, sorted by key."""
        inc: dict[tuple[int, int], list[int]] = {}
        for e, el in enumerate(self.elements):
            for i, j, _ in LOCAL_EDGES:
                key = (min(el[i], el[j]), max(el[i], el[j]))
                inc.setdefault((int(key[0]), int(key[1])), []).append(e)
        return dict(sorted(inc.items()))

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {key: k for k, key in enumerate(self.edges)}

    def boundary_edges(self) -> list[tuple[int, int]]:
        return [key for key, els in self.edges.items() if len(els) == 1]

    def element_corners(self, e: int) -> np.ndarray:
        return self.nodes[self.elements[e, :3]]

    def total_area(self) -> float:
        p = self.nodes[self.elements[:, :3]]
        d1 = p[:, 1] - p[:, 0]
        d2 = p[:, 2] - p[:, 0]
        return float(0.5 * np.sum(d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]))

    def validate(self) -> None:
        """Check winding, midpoint placement and edge incidence.

        Raises
        ------
        InvariantViolation
        """
        n = self.n_nodes
        if self.elements.size and (self.elements.min() < 0 or self.elements.max() >= n):
            raise InvariantViolation("element refers to a node id out of range")
        scale = float(np.ptp(self.nodes, axis=0).max()) if n else 1.0
        for e, el in enumerate(self.elements):
            p = self.nodes[el]
            d1, d2 = p[1] - p[0], p[2] - p[0]
            if d1[0] * d2[1] - d1[1] * d2[0] <= 0:
                raise InvariantViolation(f"element {e} is not counter-clockwise")
            for i, j, m in LOCAL_EDGES:
                if np.abs(p[m] - 0.5 * (p[i] + p[j])).max() > 1e-12 * scale:
                    raise InvariantViolation(f"element {e}: node {el[m]} is not the midpoint of its edge")
        for (i, j), els in self.edges.items():
            if len(els) > 2:
                raise InvariantViolation(f"edge ({i}, {j}) has {len(els)} incident elements")
            if len(els) == 1 and self.boundary_nodes and not {i, j} <= self.boundary_nodes:
                raise InvariantViolation(f"edge ({i}, {j}) has one incident element but is not on the boundary")


def gen_rect_mesh(width: float, height: float, nx: int, ny: int) -> Mesh:
    """Structured mesh of [0, width] x [0, height].

    Each of the nx * ny cells is split along its lower-left to upper-right
    diagonal, giving (2 nx + 1)(2 ny + 1) nodes.
    """
    if int(nx) != nx or int(ny) != ny or nx < 1 or ny < 1:
        raise InvalidDimensions(f"nx and ny must be integers >= 1, got {nx}, {ny}")
    if not (width > 0 and height > 0):
        raise InvalidDimensions(f"width and height must be positive, got {width}, {height}")
    nx, ny = int(nx), int(ny)
    cols, rows = 2 * nx + 1, 2 * ny + 1
    xs = np.linspace(0.0, width, cols)
    ys = np.linspace(0.0, height, rows)
    X, Y = np.meshgrid(xs, ys)
    nodes = np.column_stack([X.ravel(), Y.ravel()])

    def nid(i, j):
        return j * cols + i

    elements = []
    for cj in range(ny):
        for ci in range(nx):
            i, j = 2 * ci, 2 * cj
            bl, br, tr, tl = nid(i, j), nid(i + 2, j), nid(i + 2, j + 2), nid(i, j + 2)
            elements.append([bl, br, tr, nid(i + 1, j), nid(i + 2, j + 1), nid(i + 1, j + 1)])
            elements.append([bl, tr, tl, nid(i + 1, j + 1), nid(i + 1, j + 2), nid(i, j + 1)])
    boundary = {
        nid(i, j) for j in range(rows) for i in range(cols)
        if i in (0, cols - 1) or j in (0, rows - 1)
    }
    return Mesh(nodes, np.array(elements), frozenset(boundary))


def write_mesh(mesh: Mesh) -> str:
    lines = ["qtmesh 1", f"nodes {mesh.n_nodes}"]
    lines += [f"{k} {x:.17g} {y:.17g}" for k, (x, y) in enumerate(mesh.nodes)]
    lines.append(f"elements {mesh.n_elements}")
    lines += [f"{e} " + " ".join(str(int(n)) for n in el) for e, el in enumerate(mesh.elements)]
    bnd = sorted(mesh.boundary_nodes)
    lines.append(f"boundary {len(bnd)}")
    lines += [str(n) for n in bnd]
    return "\n".join(lines) + "\n"


def _records(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def read_mesh(text: str) -> Mesh:
    """Parse the text format; the mesh is validated before it is returned.

    Raises
    ------
    ParseError
        Malformed input, with the offending line number.
    InvariantViolation
        Well-formed input describing an invalid mesh.
    """
    recs = _records(text)

    def nxt(expect):
        try:
            return next(recs)
        except StopIteration:
            raise ParseError(f"unexpected end of file, expected {expect}", text.count("\n") + 1) from None

    def header(name):
        lineno, tok = nxt(f"'{name} <count>'")
        if len(tok) != 2 or tok[0] != name:
            raise ParseError(f"expected '{name} <count>', got {' '.join(tok)!r}", lineno)
        try:
            count = int(tok[1])
        except ValueError:
            raise ParseError(f"bad count {tok[1]!r}", lineno) from None
        if count < 0:
            raise ParseError(f"negative count {count}", lineno)
        return count

    lineno, tok = nxt("'qtmesh 1'")
    if tok != ["qtmesh", "1"]:
        raise ParseError(f"expected 'qtmesh 1', got {' '.join(tok)!r}", lineno)

    def rows(count, width, conv, what):
        out = []
        for k in range(count):
            lineno, tok = nxt(what)
            if len(tok) != width:
                raise ParseError(f"{what}: expected {width} fields, got {len(tok)}", lineno)
            try:
                if width == 1:
                    vals = [int(tok[0])]
                else:
                    ident = int(tok[0])
                    vals = [ident] + [conv(t) for t in tok[1:]]
            except ValueError:
                raise ParseError(f"{what}: cannot parse {' '.join(tok)!r}", lineno) from None
            if width > 1 and ident != k:
                raise ParseError(f"{what}: expected id {k}, got {ident}", lineno)
            out.append((lineno, vals))
        return out

    node_rows = rows(header("nodes"), 3, float, "node")
    elem_rows = rows(header("elements"), 7, int, "element")
    bnd_rows = rows(header("boundary"), 1, int, "boundary node")
    try:
        lineno, tok = next(recs)
        raise ParseError(f"trailing content {' '.join(tok)!r}", lineno)
    except StopIteration:
        pass
    n_nodes = len(node_rows)
    for lineno, vals in elem_rows:
        if any(not 0 <= v < n_nodes for v in vals[1:]):
            raise ParseError("element refers to an unknown node", lineno)
    for lineno, vals in bnd_rows:
        if not 0 <= vals[0] < n_nodes:
            raise ParseError("boundary refers to an unknown node", lineno)
    nodes = np.array([v[1:] for _, v in node_rows], dtype=float).reshape(-1, 2)
    elements = np.array([v[1:] for _, v in elem_rows], dtype=np.int64).reshape(-1, 6)
    mesh = Mesh(nodes, elements, frozenset(v[0] for _, v in bnd_rows))
    mesh.validate()
    return mesh
