"""
Independent curvature oracle: multi-start minimization of the Rayleigh
quotient Γ₂/Γ over functions on the closed radius-2 ball.

Nothing here uses the Bochner expansion, the distance-2 elimination or a
symmetric eigensolver. Both quadratic forms are recovered by polarizing the
definitional `gamma2` and `gamma` evaluations, f(x) stays a free variable, and
every returned value is the quotient of an actual function, so the oracle
can only overestimate κ(x).
"""
from typing import Callable, Tuple

import numpy as np
from loguru import logger
from scipy.optimize import minimize

from src.graph.core import Graph, ball2, gamma, gamma2


def _polarize(evaluate: Callable[[np.ndarray], float], m: int) -> np.ndarray:
    basis = np.eye(m)
    diag = np.array([evaluate(basis[i]) for i in range(m)])
    q = np.diag(diag)
    for i in range(m):
        for j in range(i + 1, m):
            q[i, j] = q[j, i] = 0.5 * (evaluate(basis[i] + basis[j]) - diag[i] - diag[j])
    return q


def definitional_forms(g: Graph, x: int) -> Tuple[Tuple[int, ...], np.ndarray, np.ndarray]:
    ball = ball2(g, x)
    coords = (x,) + ball.coords

    def lift(vec: np.ndarray) -> np.ndarray:
        f = np.zeros(g.n, dtype=np.float64)
        f[list(coords)] = vec
        return f

    q2 = _polarize(lambda v: gamma2(g, lift(v), x), len(coords))
    q1 = _polarize(lambda v: gamma(g, lift(v), lift(v), x), len(coords))
    return coords, q2, q1


def oracle_curvature(g: Graph, x: int, trials: int = 24, seed: int = 0, gtol: float = 1e-12) -> float:
    coords, q2, q1 = definitional_forms(g, x)
    m = len(coords)
    rng = np.random.default_rng([seed, x])

    def quotient(c: np.ndarray) -> Tuple[float, np.ndarray]:
        num = float(c @ q2 @ c)
        den = float(c @ q1 @ c)
        if den <= 1e-14:
            return 1e12, np.zeros_like(c)
        grad = (2.0 * (q2 @ c) * den - 2.0 * num * (q1 @ c)) / den**2
        return num / den, grad

    best = np.inf
    for trial in range(trials):
        start = rng.standard_normal(m)
        res = minimize(quotient, start, jac=True, method="BFGS", options={"gtol": gtol, "maxiter": 5000})
        value, _ = quotient(res.x)
        if value < best:
            best = value
        logger.trace(f"oracle {g.name} x={x} trial {trial}: {value:.12g}")
    return float(best)
