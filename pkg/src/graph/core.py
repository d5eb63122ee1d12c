"""
Finite simple graphs and the Gamma-calculus primitives evaluated by definition.

Vertices are dense indices 0..n-1, the vertex measure is the counting
measure, and every function on the graph is a numpy vector of length n.
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse
import scipy.sparse.csgraph

from src.utils.errors import (
    AsymmetricAdjacencyError,
    DuplicateEdgeError,
    GraphInputError,
    IsolatedVertexError,
    SelfLoopError,
)


@dataclass(frozen=True)
class Graph:
    """
    Undirected simple graph without isolated vertices.

    `labels` (group elements, bit strings, ...) and `interior` (vertices
    whose radius-2 ball is untruncated) come from the family generators and
    are ignored by equality.
    """

    n: int
    adj: Tuple[Tuple[int, ...], ...]
    name: str = field(default="", compare=False)
    labels: Optional[Tuple] = field(default=None, compare=False, repr=False)
    interior: Optional[Tuple[int, ...]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphInputError(f"vertex count must be positive, got {self.n}")
        if len(self.adj) != self.n:
            raise GraphInputError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        for u, nbrs in enumerate(self.adj):
            if not nbrs:
                raise IsolatedVertexError(u)
            prev = -1
            for v in nbrs:
                if v < 0 or v >= self.n:
                    raise GraphInputError(f"neighbor {v} of vertex {u} out of range")
                if v == u:
                    raise SelfLoopError(u)
                if v == prev:
                    raise DuplicateEdgeError(u, v)
                if v < prev:
                    raise GraphInputError(f"adjacency of vertex {u} is not sorted")
                prev = v
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u not in self._adj_sets[v]:
                    raise AsymmetricAdjacencyError(u, v)
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphInputError("labels must have one entry per vertex")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]], name: str = "", **kwargs) -> "Graph":
        nbrs: List[set] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise SelfLoopError(u)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"edge ({u}, {v}) out of range for n={n}")
            if v in nbrs[u]:
                raise DuplicateEdgeError(min(u, v), max(u, v))
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n=n, adj=tuple(tuple(sorted(s)) for s in nbrs), name=name, **kwargs)

    @cached_property
    def _adj_sets(self) -> Tuple[frozenset, ...]:
        return tuple(frozenset(nbrs) for nbrs in self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj_sets[u]

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.array([len(nbrs) for nbrs in self.adj], dtype=np.int64)

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max())

    @property
    def min_degree(self) -> int:
        return int(self.degrees.min())

    def is_regular(self) -> bool:
        return self.max_degree == self.min_degree

    @cached_property
    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def adjacency_matrix(self) -> scipy.sparse.csr_matrix:
        return self._csr

    @cached_property
    def _csr(self) -> scipy.sparse.csr_matrix:
        rows = np.repeat(np.arange(self.n), self.degrees)
        cols = np.fromiter((v for nbrs in self.adj for v in nbrs), dtype=np.int64, count=int(self.degrees.sum()))
        data = np.ones(len(cols), dtype=np.float64)
        return scipy.sparse.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def laplacian_matrix(self, sparse: bool = False):
        """Matrix of -Δ = D - A."""
        lap = scipy.sparse.diags(self.degrees.astype(np.float64)) - self.adjacency_matrix()
        return lap.tocsr() if sparse else lap.toarray()

    def connected_components(self) -> int:
        count, _ = scipy.sparse.csgraph.connected_components(self.adjacency_matrix(), directed=False)
        return int(count)

    def interior_vertices(self) -> Tuple[int, ...]:
        return tuple(range(self.n)) if self.interior is None else self.interior


@dataclass(frozen=True)
class VertexBall2:
    """Radius-2 neighborhood of `center`; Γ₂ at the center only reads these values."""

    center: int
    N1: Tuple[int, ...]
    N2: Tuple[int, ...]
    edges_N1N1: Tuple[Tuple[int, int], ...]
    edges_N1N2: Tuple[Tuple[int, int], ...]
    r: Dict[int, int]
    deg1: Dict[int, int]

    @property
    def coords(self) -> Tuple[int, ...]:
        return self.N1 + self.N2

    @property
    def dim(self) -> int:
        return len(self.N1) + len(self.N2)


def _as_function(g: Graph, f: Sequence[float]) -> np.ndarray:
    arr = np.asarray(f, dtype=np.float64)
    if arr.shape != (g.n,):
        raise GraphInputError(f"function has shape {arr.shape}, expected ({g.n},)")
    return arr


def _check_vertex(g: Graph, x: int) -> None:
    if not 0 <= x < g.n:
        raise GraphInputError(f"vertex {x} out of range for n={g.n}")


def laplacian_apply(g: Graph, f: Sequence[float]) -> np.ndarray:
    """Δf(x) = Σ_{y~x} (f(y) - f(x))."""
    f = _as_function(g, f)
    out = np.empty(g.n, dtype=np.float64)
    for x, nbrs in enumerate(g.adj):
        out[x] = f[list(nbrs)].sum() - len(nbrs) * f[x]
    return out


def _laplacian_at(g: Graph, f: np.ndarray, x: int) -> float:
    nbrs = g.adj[x]
    return float(sum(f[y] for y in nbrs) - len(nbrs) * f[x])


def gamma(g: Graph, f: Sequence[float], h: Sequence[float], x: int) -> float:
    """Γ(f,h)(x) = ½ Σ_{y~x} (f(x)-f(y))(h(x)-h(y))."""
    _check_vertex(g, x)
    f = _as_function(g, f)
    h = _as_function(g, h)
    return _gamma_at(g, f, h, x)


def _gamma_at(g: Graph, f: np.ndarray, h: np.ndarray, x: int) -> float:
    return 0.5 * float(sum((f[x] - f[y]) * (h[x] - h[y]) for y in g.adj[x]))


def gamma_vector(g: Graph, f: Sequence[float], h: Optional[Sequence[float]] = None) -> np.ndarray:
    """Γ(f,h) at every vertex, vectorized over edges."""
    f = _as_function(g, f)
    h = f if h is None else _as_function(g, h)
    out = np.zeros(g.n, dtype=np.float64)
    if g.num_edges == 0:
        return out
    e = np.asarray(g.edges)
    prod = 0.5 * (f[e[:, 0]] - f[e[:, 1]]) * (h[e[:, 0]] - h[e[:, 1]])
    np.add.at(out, e[:, 0], prod)
    np.add.at(out, e[:, 1], prod)
    return out


def gamma2(g: Graph, f: Sequence[float], x: int) -> float:
    """
    Γ₂(f)(x) = ½ΔΓ(f)(x) - Γ(f, Δf)(x), composed from the definitions.

    Only values of f on the radius-2 ball of x are read.
    """
    _check_vertex(g, x)
    f = _as_function(g, f)
    nbrs = g.adj[x]
    gamma_x = _gamma_at(g, f, f, x)
    # ΔΓ(f)(x)
    lap_gamma = sum(_gamma_at(g, f, f, y) for y in nbrs) - len(nbrs) * gamma_x
    # Δf on the closed neighborhood of x
    lap_f_x = _laplacian_at(g, f, x)
    cross = 0.5 * sum((f[x] - f[y]) * (lap_f_x - _laplacian_at(g, f, y)) for y in nbrs)
    return 0.5 * lap_gamma - cross


def bfs_distances(g: Graph, source: int, limit: Optional[int] = None) -> Dict[int, int]:
    """Hop distances from `source`, restricted to vertices within `limit` hops."""
    _check_vertex(g, source)
    dist = scipy.sparse.csgraph.dijkstra(
        g.adjacency_matrix(),
        directed=False,
        indices=source,
        unweighted=True,
        limit=np.inf if limit is None else limit,
    )
    reached = np.flatnonzero(np.isfinite(dist))
    return {int(v): int(dist[v]) for v in reached}


def ball2(g: Graph, x: int) -> VertexBall2:
    dist = bfs_distances(g, x, limit=2)
    N1 = tuple(g.adj[x])
    N2 = tuple(sorted(v for v, d in dist.items() if d == 2))
    edges_N1N1 = tuple((v, w) for v in N1 for w in g.adj[v] if v < w and dist.get(w) == 1)
    edges_N1N2 = tuple((v, u) for v in N1 for u in g.adj[v] if dist.get(u) == 2)
    r = {u: 0 for u in N2}
    for _, u in edges_N1N2:
        r[u] += 1
    deg1 = {v: len(g.adj[v]) for v in N1}
    return VertexBall2(
        center=x, N1=N1, N2=N2, edges_N1N1=edges_N1N1, edges_N1N2=edges_N1N2, r=r, deg1=deg1
    )


def triangle_stats(g: Graph) -> Tuple[Dict[Tuple[int, int], int], int]:
    """t(e) = number of common neighbors of the endpoints; T = max_e t(e)."""
    if not g.edges:
        return {}, 0
    adj = g.adjacency_matrix()
    # (A@A)[u, v] counts paths u-w-v, i.e. common neighbors
    common = (adj @ adj).tocsr()
    e = np.asarray(g.edges)
    counts = np.rint(np.asarray(common[e[:, 0], e[:, 1]]).ravel()).astype(np.int64)
    t = {edge: int(c) for edge, c in zip(g.edges, counts)}
    return t, int(counts.max())
