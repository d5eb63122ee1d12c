"""
Exact Bakry-Émery curvature: κ(x) is the least eigenvalue of the reduced 2Γ₂
form at x (the reduced 2Γ form is the identity), Ric(G) the minimum over x.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
from loguru import logger

from src.curvature.forms import assemble_gamma2_form, distance2_minimizer, reduce_distance2
from src.graph.core import Graph, ball2, bfs_distances, gamma, gamma2, triangle_stats
from src.utils.errors import GraphInputError, NumericalError, PreconditionError

EIG_RESIDUAL_FACTOR = 1e-9


@dataclass(frozen=True)
class LocalCurvature:
    vertex: int
    kappa: float
    witness: Dict[int, float]


@dataclass(frozen=True)
class CurvatureReport:
    per_vertex: Tuple[float, ...]
    vertices: Tuple[int, ...]
    ric: float
    witness_vertex: int
    witness: Dict[int, float]
    upper_bound: float
    max_triangles: int
    family_name: str = ""
    interior_only: bool = False

    def kappa(self, x: int) -> float:
        return self.per_vertex[self.vertices.index(x)]

    def to_dict(self) -> dict:
        return {
            "family": self.family_name,
            "ric": self.ric,
            "upper_bound": self.upper_bound,
            "interior_only": self.interior_only,
            "vertices": list(self.vertices),
            "per_vertex": list(self.per_vertex),
            "witness": {
                "vertex": self.witness_vertex,
                "values": {str(v): val for v, val in sorted(self.witness.items())},
            },
        }


def _symmetric_min_eigenpair(q: np.ndarray, residual_factor: float) -> Tuple[float, np.ndarray]:
    w, vecs = scipy.linalg.eigh(q)
    lam, vec = float(w[0]), vecs[:, 0]
    residual = float(np.linalg.norm(q @ vec - lam * vec))
    scale = max(float(np.linalg.norm(q, 2)), 1.0)
    if residual > residual_factor * scale:
        raise NumericalError(f"eigensolver residual {residual:.3e} exceeds {residual_factor * scale:.3e}")
    return lam, vec


def local_curvature(g: Graph, x: int, residual_factor: float = EIG_RESIDUAL_FACTOR) -> LocalCurvature:
    """
    κ(x) = min Γ₂(f)(x) / Γ(f)(x), with a minimizing f on the radius-2 ball.

    The witness is normalized to Γ(f)(x) = 1 with its first nonzero N1 value
    positive; N2 values come from the closed-form distance-2 minimizer.
    """
    if not 0 <= x < g.n:
        raise GraphInputError(f"vertex {x} out of range for n={g.n}")
    ball = ball2(g, x)
    reduced = reduce_distance2(assemble_gamma2_form(ball), ball)
    kappa, vec = _symmetric_min_eigenpair(reduced.coeff, residual_factor)

    # Γ = ½ Σ f(v)², so Γ = 1 needs ‖vec‖² = 2
    vec = vec * (np.sqrt(2.0) / np.linalg.norm(vec))
    nonzero = np.flatnonzero(np.abs(vec) > 1e-12)
    if nonzero.size and vec[nonzero[0]] < 0:
        vec = -vec
    values_n1 = {v: float(val) for v, val in zip(ball.N1, vec)}
    witness = {x: 0.0}
    witness.update(values_n1)
    witness.update(distance2_minimizer(ball, values_n1))
    return LocalCurvature(vertex=x, kappa=kappa, witness=witness)


def upper_bound(g: Graph) -> Tuple[float, int]:
    _, t_max = triangle_stats(g)
    return 2.0 + t_max / 2.0, t_max


def curvature(
    g: Graph,
    interior_only: bool = False,
    threads: int = 1,
    residual_factor: float = EIG_RESIDUAL_FACTOR,
) -> CurvatureReport:
    if interior_only:
        vertices = tuple(g.interior_vertices())
        if not vertices:
            raise PreconditionError(f"{g.name or 'graph'} has no interior vertices")
    else:
        vertices = tuple(range(g.n))

    def work(x: int) -> LocalCurvature:
        return local_curvature(g, x, residual_factor)

    if threads > 1 and len(vertices) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results: List[LocalCurvature] = list(pool.map(work, vertices))
    else:
        results = [work(x) for x in vertices]

    per_vertex = tuple(r.kappa for r in results)
    best = min(range(len(results)), key=lambda i: (per_vertex[i], vertices[i]))
    bound, t_max = upper_bound(g)

    # the upper bound is proved at a vertex of minimum degree
    min_deg_vertex = int(np.argmin(g.degrees))
    if min_deg_vertex in vertices:
        k_min_deg = per_vertex[vertices.index(min_deg_vertex)]
        if k_min_deg > bound + 1e-8:
            logger.error(f"κ({min_deg_vertex}) = {k_min_deg} exceeds 2 + T/2 = {bound} on {g.name}")

    report = CurvatureReport(
        per_vertex=per_vertex,
        vertices=vertices,
        ric=per_vertex[best],
        witness_vertex=vertices[best],
        witness=results[best].witness,
        upper_bound=bound,
        max_triangles=t_max,
        family_name=g.name,
        interior_only=interior_only,
    )
    logger.debug(f"{g.name}: Ric = {report.ric:.10g} over {len(vertices)} vertices (upper bound {bound})")
    return report


def _extend(g: Graph, values: Dict[int, float]) -> np.ndarray:
    f = np.zeros(g.n, dtype=np.float64)
    for v, val in values.items():
        f[v] = val
    return f


def check_inequality(g: Graph, x: int, f, K: float) -> float:
    """Signed slack Γ₂(f)(x) - K·Γ(f)(x) of the curvature inequality."""
    vec = _extend(g, f) if isinstance(f, dict) else np.asarray(f, dtype=np.float64)
    return gamma2(g, vec, x) - K * gamma(g, vec, vec, x)


def ricci_upper_witness(g: Graph) -> Tuple[int, float]:
    """
    Γ₂/Γ of the distance function f = dist(·, x) at a minimum-degree x.

    This bounds κ(x) from above and never exceeds 2 + T/2.
    """
    x = int(np.argmin(g.degrees))
    dist = bfs_distances(g, x, limit=2)
    f = _extend(g, {v: float(d) for v, d in dist.items()})
    return x, gamma2(g, f, x) / gamma(g, f, f, x)
