"""
Γ₂ and Γ at a vertex as quadratic forms over the radius-2 ball.

Coordinates are the values of f on N1 followed by N2, with f(x) pinned to 0
(Γ₂ and Γ are unchanged by adding a constant). Forms store 2Γ₂ and 2Γ, so
that the distance-2 block of the 2Γ₂ form is diag(r(u)/2) and the 2Γ form is
the identity on N1.
"""
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from src.graph.core import Graph, VertexBall2, gamma2
from src.utils.errors import AssemblyError

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class QuadraticForm:
    coeff: np.ndarray
    coords: Tuple[int, ...]
    kind: str = "2gamma2"

    def __post_init__(self):
        c = np.asarray(self.coeff, dtype=np.float64)
        if c.shape != (len(self.coords), len(self.coords)):
            raise AssemblyError(f"coefficient shape {c.shape} does not match {len(self.coords)} coordinates")
        if c.size and np.max(np.abs(c - c.T)) > SYMMETRY_TOL:
            raise AssemblyError("quadratic form is not symmetric")
        object.__setattr__(self, "coeff", c)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def value(self, vec: Sequence[float]) -> float:
        v = np.asarray(vec, dtype=np.float64)
        return float(v @ self.coeff @ v)

    def restrict(self, values: Dict[int, float]) -> np.ndarray:
        """Coordinate vector of a {vertex: value} mapping (missing vertices read as 0)."""
        return np.array([values.get(c, 0.0) for c in self.coords], dtype=np.float64)


def assemble_gamma2_form(ball: VertexBall2) -> QuadraticForm:
    """
    2Γ₂(f)(x) from the expanded Bochner identity:

        ½ Σ_{v∈N1, u∈N2, u~v} (f(u) - 2f(v))²  +  (Σ_{v∈N1} f(v))²
        + Σ_{v∈N1} (4 - d(x) - d(v))/2 · f(v)²
        + Σ_{v~w, v,w∈N1} [2(f(v) - f(w))² + ½(f(v)² + f(w)²)]
    """
    coords = ball.coords
    idx = {v: i for i, v in enumerate(coords)}
    q = np.zeros((len(coords), len(coords)), dtype=np.float64)
    n1 = [idx[v] for v in ball.N1]
    d = len(ball.N1)

    q[np.ix_(n1, n1)] += 1.0
    for v in ball.N1:
        q[idx[v], idx[v]] += (4 - d - ball.deg1[v]) / 2.0
    for v, w in ball.edges_N1N1:
        i, j = idx[v], idx[w]
        q[i, i] += 2.5
        q[j, j] += 2.5
        q[i, j] -= 2.0
        q[j, i] -= 2.0
    for v, u in ball.edges_N1N2:
        i, k = idx[v], idx[u]
        q[k, k] += 0.5
        q[i, i] += 2.0
        q[i, k] -= 1.0
        q[k, i] -= 1.0
    return QuadraticForm(q, coords, "2gamma2")


def assemble_gamma2_form_from_definition(g: Graph, ball: VertexBall2) -> QuadraticForm:
    """Polarize the definitional Γ₂ evaluation on the ball coordinates."""
    coords = ball.coords
    m = len(coords)

    def two_gamma2(values: Dict[int, float]) -> float:
        f = np.zeros(g.n, dtype=np.float64)
        for v, val in values.items():
            f[v] = val
        return 2.0 * gamma2(g, f, ball.center)

    diag = np.array([two_gamma2({c: 1.0}) for c in coords])
    q = np.diag(diag)
    for i in range(m):
        for j in range(i + 1, m):
            both = two_gamma2({coords[i]: 1.0, coords[j]: 1.0})
            q[i, j] = q[j, i] = 0.5 * (both - diag[i] - diag[j])
    # polarization round-off
    q = 0.5 * (q + q.T)
    return QuadraticForm(q, coords, "2gamma2")


def assemble_gamma_form(ball: VertexBall2) -> QuadraticForm:
    """2Γ(f)(x) = Σ_{v∈N1} f(v)² when f(x) = 0."""
    coords = ball.coords
    q = np.zeros((len(coords), len(coords)), dtype=np.float64)
    for i in range(len(ball.N1)):
        q[i, i] = 1.0
    return QuadraticForm(q, coords, "2gamma")


def reduce_distance2(form: QuadraticForm, ball: VertexBall2) -> QuadraticForm:
    """
    Eliminate the N2 coordinates by their optimal values (Schur complement).

    The N2 block must be diag(r(u)/2); anything else means the form was not
    assembled from the Bochner expansion.
    """
    k = len(ball.N1)
    if form.coords != ball.coords:
        raise AssemblyError("form coordinates do not match the ball")
    a = form.coeff[:k, :k]
    if not ball.N2:
        return QuadraticForm(a.copy(), ball.N1, form.kind)
    b = form.coeff[:k, k:]
    dblock = form.coeff[k:, k:]
    diag = np.diag(dblock)
    off = dblock - np.diag(diag)
    if np.max(np.abs(off)) > 1e-12:
        raise AssemblyError(f"distance-2 block of the form at {ball.center} is not diagonal")
    expected = np.array([ball.r[u] / 2.0 for u in ball.N2])
    if np.any(diag <= 0) or np.max(np.abs(diag - expected)) > 1e-12:
        raise AssemblyError(f"distance-2 diagonal at {ball.center} differs from r(u)/2")
    reduced = a - (b / diag) @ b.T
    reduced = 0.5 * (reduced + reduced.T)
    return QuadraticForm(reduced, ball.N1, form.kind)


def distance2_minimizer(ball: VertexBall2, values_n1: Dict[int, float]) -> Dict[int, float]:
    """f(u) = (2 / r(u)) Σ_{v∈N1, v~u} f(v) for every u ∈ N2."""
    sums = {u: 0.0 for u in ball.N2}
    for v, u in ball.edges_N1N2:
        sums[u] += values_n1[v]
    return {u: 2.0 * sums[u] / ball.r[u] for u in ball.N2}
