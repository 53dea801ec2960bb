"""Brute-force orthogonality graphs of T_n and M_n over small prime fields."""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .algebra import FieldCtx, Mat, format_matrix
from .enumeration import Algebra, all_matrices, orthogonality_table, singular_mask, to_array, to_mat
from .errors import UnsupportedFormat

UNREACHABLE = math.inf


@dataclass(frozen=True, eq=False)
class OrthoGraph:
    """Vertices in lexicographic order and a dense symmetric adjacency matrix."""

    algebra: Algebra
    n: int
    ctx: FieldCtx
    array: np.ndarray  # (V, n, n) int64 residues
    adjacency: np.ndarray  # (V, V) bool, zero diagonal

    @property
    def order(self) -> int:
        return self.array.shape[0]

    def vertex(self, k: int) -> Mat:
        return to_mat(self.array[k], self.ctx)

    @property
    def vertices(self) -> list[Mat]:
        return [self.vertex(k) for k in range(self.order)]

    def index_of(self, A: Mat) -> int:
        """Position of ``A`` in the vertex list (``KeyError`` if absent)."""
        target = to_array(A)
        hits = np.flatnonzero((self.array == target).all(axis=(1, 2)))
        if not len(hits):
            raise KeyError(f"{format_matrix(A)} is not a vertex of this graph")
        return int(hits[0])

    def neighbours(self, k: int) -> np.ndarray:
        return np.flatnonzero(self.adjacency[k])

    @property
    def edge_count(self) -> int:
        return int(np.triu(self.adjacency, 1).sum())


def build_graph(
    algebra: Algebra | str, n: int, ctx: FieldCtx, max_size: int | None = None, jobs: int = 1
) -> OrthoGraph:
    algebra = Algebra.coerce(algebra)
    mats = all_matrices(n, ctx, algebra, max_size)
    nonzero = mats.reshape(len(mats), -1).any(axis=1)
    verts = mats[nonzero & singular_mask(mats, ctx.p, algebra)]
    adj = orthogonality_table(verts, verts, ctx.p, jobs=jobs)
    np.fill_diagonal(adj, False)
    return OrthoGraph(algebra, n, ctx, verts, adj)


def bfs_distance(g: OrthoGraph, u: int, v: int) -> int | float:
    """Shortest-path length from ``u`` to ``v``; ``UNREACHABLE`` (inf) if none."""
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in g.neighbours(x):
            y = int(y)
            if y not in dist:
                if y == v:
                    return dist[x] + 1
                dist[y] = dist[x] + 1
                queue.append(y)
    return UNREACHABLE


def shortest_path(g: OrthoGraph, u: int, v: int) -> list[int] | None:
    """One shortest path as vertex indices (smallest-index parents), or None."""
    parent = {u: u}
    queue = deque([u])
    while queue and v not in parent:
        x = queue.popleft()
        for y in g.neighbours(x):
            y = int(y)
            if y not in parent:
                parent[y] = x
                queue.append(y)
    if v not in parent:
        return None
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    return path[::-1]


def distance_matrix(g: OrthoGraph) -> np.ndarray:
    """All-pairs distances by level-synchronous BFS; -1 marks unreachable pairs."""
    m = g.order
    dist = np.full((m, m), -1, dtype=np.int64)
    if m == 0:
        return dist
    adj = g.adjacency.astype(np.float32)
    reached = np.eye(m, dtype=bool)
    frontier = reached.copy()
    dist[reached] = 0
    level = 0
    while frontier.any():
        level += 1
        # counts stay far below 2^24, so float32 sums are exact
        nxt = ((frontier.astype(np.float32) @ adj) > 0) & ~reached
        dist[nxt] = level
        reached |= nxt
        frontier = nxt
    return dist


def components(g: OrthoGraph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest member."""
    seen = np.zeros(g.order, dtype=bool)
    out = []
    for s in range(g.order):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.neighbours(x):
                if not seen[y]:
                    seen[y] = True
                    comp.append(int(y))
                    queue.append(int(y))
        out.append(sorted(comp))
    return out


@dataclass(frozen=True)
class DiameterReport:
    connected: bool
    component_diameters: tuple[int, ...]  # aligned with components(g)
    diameter: int | float  # inf when disconnected

    def __str__(self):
        if self.connected:
            return f"connected, diameter = {self.diameter}"
        ds = ", ".join(str(d) for d in self.component_diameters)
        return f"disconnected, {len(self.component_diameters)} components, diameters = [{ds}]"


def diameter(g: OrthoGraph, dist: np.ndarray | None = None) -> DiameterReport:
    if dist is None:
        dist = distance_matrix(g)
    comps = components(g)
    diams = tuple(int(dist[np.ix_(c, c)].max()) for c in comps)
    connected = len(comps) == 1
    if connected:
        total = diams[0]
    elif comps:
        total = UNREACHABLE
    else:
        total = 0
    return DiameterReport(connected, diams, total)


def export(g: OrthoGraph, fmt: str = "json") -> bytes:
    """Serialise as Graphviz DOT or JSON; output is deterministic."""
    labels = [format_matrix(v) for v in g.vertices]
    iu, ju = np.nonzero(np.triu(g.adjacency, 1))
    edges = sorted(zip(iu.tolist(), ju.tolist()))
    if fmt == "json":
        doc = {"vertices": labels, "edges": [[i, j] for i, j in edges]}
        return (json.dumps(doc) + "\n").encode()
    if fmt == "dot":
        name = f"O_{g.algebra.value}{g.n}_{g.ctx}".replace("(", "").replace(")", "")
        lines = [f"graph {name} {{"]
        lines += [f'  {k} [label="{lab}"];' for k, lab in enumerate(labels)]
        lines += [f"  {i} -- {j};" for i, j in edges]
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    raise UnsupportedFormat(f"unknown export format {fmt!r}; use dot or json")
