"""
Executable checks of the curvature, spectral and isoperimetric inequalities.

Every check returns a list of CheckRecord. Pointwise heat-kernel checks
aggregate to the worst vertex; subset checks aggregate to the worst subset
unless asked for one record per subset.
"""
from typing import Iterable, List, Optional, Sequence

import numpy as np
from loguru import logger

from src.curvature.bochner import ricci_upper_witness
from src.curvature.oracle import oracle_curvature
from src.graph.core import Graph, ball2, gamma_vector, laplacian_apply
from src.isoperimetry.cheeger import mask_to_set, subset_boundaries
from src.spectral.spectrum import dirichlet_curvature_slack
from src.verify.context import AnalysisContext
from src.verify.records import DEFAULT_TOLERANCES, CheckRecord, c_k, make_record, skipped_record

NONNEG_TOL = 1e-8
SUBSET_CAP = 14
LSI_CAP = 12
LSI_SAFETY = 0.5


def _ctx(g: Graph, ctx: Optional[AnalysisContext]) -> AnalysisContext:
    return ctx if ctx is not None else AnalysisContext(g)


def _tol(key: str, tolerances: Optional[dict]) -> float:
    return (tolerances or {}).get(key, DEFAULT_TOLERANCES[key])


def _min_term(value: float, K: float) -> float:
    """min(√v, v/√(2|K|)); the second branch only exists for K < 0."""
    root = np.sqrt(value)
    if K >= 0:
        return float(root)
    return float(min(root, value / np.sqrt(2.0 * abs(K))))


def _time_allowed(K: float, t: float) -> bool:
    return K >= 0 or t * 2.0 * abs(K) <= 1.0 + 1e-9


# ---------------------------------------------------------------- Buser


def check_buser_global(g: Graph, ctx: Optional[AnalysisContext] = None, tolerances: Optional[dict] = None) -> List[CheckRecord]:
    """λ ≤ 16h² under non-negative curvature, with the exact Cheeger constant."""
    ctx = _ctx(g, ctx)
    if ctx.ric < -NONNEG_TOL:
        return [skipped_record("buser_global", g.name, f"Ric = {ctx.ric:.6g} < 0")]
    iso = ctx.cheeger
    if iso is None:
        return [skipped_record("buser_global", g.name, f"n = {g.n} over the exact Cheeger cap")]
    lam = ctx.spectral.lam
    rhs = 16.0 * iso.h**2
    return [make_record("buser_global", g.name, lam, rhs, rhs - lam, _tol("buser", tolerances), h=iso.h, ric=ctx.ric)]


def check_cheeger_floor(g: Graph, ctx: Optional[AnalysisContext] = None, tolerances: Optional[dict] = None) -> List[CheckRecord]:
    """h ≥ √λ / 4 under non-negative curvature."""
    ctx = _ctx(g, ctx)
    if ctx.ric < -NONNEG_TOL:
        return [skipped_record("cheeger_floor", g.name, f"Ric = {ctx.ric:.6g} < 0")]
    iso = ctx.cheeger
    if iso is None:
        return [skipped_record("cheeger_floor", g.name, f"n = {g.n} over the exact Cheeger cap")]
    rhs = np.sqrt(ctx.spectral.lam) / 4.0
    return [make_record("cheeger_floor", g.name, iso.h, rhs, iso.h - rhs, _tol("buser", tolerances), lam=ctx.spectral.lam)]


def check_cheeger_classic(g: Graph, ctx: Optional[AnalysisContext] = None, tolerances: Optional[dict] = None) -> List[CheckRecord]:
    """h²/(2 d_max) ≤ λ ≤ 2h, no curvature hypothesis."""
    ctx = _ctx(g, ctx)
    iso = ctx.cheeger
    if iso is None:
        return [skipped_record("cheeger_classic", g.name, f"n = {g.n} over the exact Cheeger cap")]
    lam, h, tol = ctx.spectral.lam, iso.h, _tol("spectral", tolerances)
    lower = h**2 / (2.0 * g.max_degree)
    return [
        make_record("cheeger_classic_lower", g.name, lam, lower, lam - lower, tol, h=h),
        make_record("cheeger_classic_upper", g.name, lam, 2.0 * h, 2.0 * h - lam, tol, h=h),
    ]


# ----------------------------------------------------- subset isoperimetry


def _subset_table(g: Graph, cap: int):
    if g.n > cap:
        return None
    boundary, sizes = subset_boundaries(g)
    return boundary.astype(np.float64), sizes.astype(np.float64)


def _aggregate_subsets(
    name: str,
    g: Graph,
    lhs: np.ndarray,
    rhs: np.ndarray,
    tol: float,
    masks: np.ndarray,
    aggregate: bool,
    required: bool = True,
    **details,
) -> List[CheckRecord]:
    slack = lhs - rhs
    # relative slack for integer counts against floats
    allowed = tol * np.maximum(1.0, np.abs(rhs))
    if not aggregate:
        return [
            make_record(name, g.name, lhs[i], rhs[i], slack[i], float(allowed[i]), required, set=list(mask_to_set(int(masks[i]), g.n)))
            for i in range(len(masks))
        ]
    worst = int(np.argmin(slack + allowed))
    failures = int(np.count_nonzero(slack < -allowed))
    return [
        make_record(
            name, g.name, lhs[worst], rhs[worst], slack[worst], float(allowed[worst]), required,
            subsets=int(len(masks)), failures=failures, worst_set=list(mask_to_set(int(masks[worst]), g.n)), **details,
        )
    ]


def check_subset_iso(
    g: Graph,
    K: Optional[float] = None,
    ctx: Optional[AnalysisContext] = None,
    tolerances: Optional[dict] = None,
    aggregate: bool = True,
    cap: int = SUBSET_CAP,
) -> List[CheckRecord]:
    """|∂A| ≥ ½·min(√λ, λ/√(2|K|))·|A|(1 - |A|/n) for every A ⊂ V."""
    ctx = _ctx(g, ctx)
    K = ctx.ric if K is None else K
    table = _subset_table(g, cap)
    if table is None:
        return [skipped_record("subset_iso", g.name, f"n = {g.n} over the subset cap {cap}")]
    boundary, sizes = table
    lam = ctx.spectral.lam
    coeff = 0.5 * _min_term(lam, K)
    rhs = coeff * sizes * (1.0 - sizes / g.n)
    masks = np.arange(1 << g.n, dtype=np.int64)
    return _aggregate_subsets("subset_iso", g, boundary, rhs, _tol("subset", tolerances), masks, aggregate, K=K, coefficient=coeff)


def sharp_subset_coefficient(lam: float, K: float, points: int = 400) -> float:
    """max over admissible t of (1 - e^{-λt})/√t."""
    t = np.geomspace(1e-3, 10.0, points) / lam
    if K < 0:
        t_max = 1.0 / (2.0 * abs(K))
        t = np.append(t[t < t_max], t_max)
    return float(np.max(-np.expm1(-lam * t) / np.sqrt(t)))


def check_subset_iso_sharp(
    g: Graph,
    K: Optional[float] = None,
    ctx: Optional[AnalysisContext] = None,
    tolerances: Optional[dict] = None,
    cap: int = SUBSET_CAP,
) -> List[CheckRecord]:
    """The t-dependent bound before the minimum is simplified."""
    ctx = _ctx(g, ctx)
    K = ctx.ric if K is None else K
    table = _subset_table(g, cap)
    if table is None:
        return [skipped_record("subset_iso_sharp", g.name, f"n = {g.n} over the subset cap {cap}", required=False)]
    boundary, sizes = table
    coeff = sharp_subset_coefficient(ctx.spectral.lam, K)
    rhs = coeff * sizes * (1.0 - sizes / g.n)
    masks = np.arange(1 << g.n, dtype=np.int64)
    return _aggregate_subsets(
        "subset_iso_sharp", g, boundary, rhs, _tol("subset", tolerances), masks, True, required=False, K=K, coefficient=coeff
    )


def check_lsi_iso(
    g: Graph,
    ctx: Optional[AnalysisContext] = None,
    tolerances: Optional[dict] = None,
    safety: float = LSI_SAFETY,
    cap: int = LSI_CAP,
) -> List[CheckRecord]:
    """
    |∂A| ≥ (1/16)·min(√ρ, ρ/√(2|K|))·|A|·L(A) for 0 < |A| ≤ n/2.

    L(A) = √log(n/|A|) is the form the argument actually reaches and is
    required; L(A) = log(n/|A|) is reported without being asserted. ρ is the
    log-Sobolev estimate scaled by the safety factor since the estimator
    only bounds the constant from above.
    """
    ctx = _ctx(g, ctx)
    table = _subset_table(g, cap)
    if table is None:
        return [
            skipped_record("lsi_iso", g.name, f"n = {g.n} over the cap {cap}"),
            skipped_record("lsi_iso_statement", g.name, f"n = {g.n} over the cap {cap}", required=False),
        ]
    boundary, sizes = table
    masks = np.arange(1 << g.n, dtype=np.int64)
    keep = (sizes > 0) & (2 * sizes <= g.n)
    boundary, sizes, masks = boundary[keep], sizes[keep], masks[keep]
    estimate = ctx.log_sobolev
    rho = safety * estimate.rho_hat
    coeff = _min_term(rho, ctx.ric) / 16.0
    log_ratio = np.log(g.n / sizes)
    details = dict(rho_hat=estimate.rho_hat, safety_factor=safety, rho=rho, convention=estimate.convention)
    tol = _tol("subset", tolerances)
    return _aggregate_subsets("lsi_iso", g, boundary, coeff * sizes * np.sqrt(log_ratio), tol, masks, True, **details) + _aggregate_subsets(
        "lsi_iso_statement", g, boundary, coeff * sizes * log_ratio, tol, masks, True, required=False, **details
    )


# ------------------------------------------------------------ heat kernel


def _functions(fs) -> List[np.ndarray]:
    arr = np.asarray(fs, dtype=np.float64)
    return [arr] if arr.ndim == 1 else list(arr)


def _worst(name: str, g: Graph, t: float, lhs: Sequence[float], rhs: Sequence[float], slack: Sequence[float], tol: float, required: bool = True, **details) -> CheckRecord:
    i = int(np.argmin(slack))
    return make_record(name, g.name, lhs[i], rhs[i], slack[i], tol, required, t=t, functions=len(slack), **details)


def check_gradient_lemma(
    g: Graph,
    f,
    t: float,
    K: Optional[float] = None,
    ctx: Optional[AnalysisContext] = None,
    tolerances: Optional[dict] = None,
) -> List[CheckRecord]:
    """‖f - P_t f‖₁ ≤ 2√t·‖√Γ(f)‖₁ for t ≤ 1/(2|K|) (any t when K ≥ 0)."""
    ctx = _ctx(g, ctx)
    K = ctx.ric if K is None else K
    if not _time_allowed(K, t):
        return [skipped_record("gradient_lemma", g.name, f"t = {t} > 1/(2|K|) with K = {K:.6g}")]
    heat = ctx.heat(t)
    lhs, rhs = [], []
    for fn in _functions(f):
        lhs.append(float(np.abs(fn - heat.apply(fn)).sum()))
        rhs.append(2.0 * np.sqrt(t) * float(np.sqrt(gamma_vector(g, fn)).sum()))
    slack = np.asarray(rhs) - np.asarray(lhs)
    return [_worst("gradient_lemma", g, t, lhs, rhs, slack, _tol("heat", tolerances), K=K)]


def check_step1(
    g: Graph,
    K: float,
    f,
    t: float,
    ctx: Optional[AnalysisContext] = None,
    tolerances: Optional[dict] = None,
) -> List[CheckRecord]:
    """Γ(P_t f) ≤ e^{-2Kt}·P_t(Γ(f)) at every vertex."""
    ctx = _ctx(g, ctx)
    heat = ctx.heat(t)
    lhs, rhs, slack = [], [], []
    for fn in _functions(f):
        left = gamma_vector(g, heat.apply(fn))
        right = np.exp(-2.0 * K * t) * heat.apply(gamma_vector(g, fn))
        i = int(np.argmin(right - left))
        lhs.append(left[i])
        rhs.append(right[i])
        slack.append(right[i] - left[i])
    return [_worst("step1", g, t, lhs, rhs, slack, _tol("heat", tolerances), K=K)]


def check_variance_bound(
    g: Graph,
    K: float,
    f,
    t: float,
    ctx: Optional[AnalysisContext] = None,
    tolerances: Optional[dict] = None,
) -> List[CheckRecord]:
    """P_t(f²) - (P_t f)² ≥ c_K(t)·Γ(P_t f) at every vertex."""
    ctx = _ctx(g, ctx)
    heat = ctx.heat(t)
    ck = c_k(K, t)
    lhs, rhs, slack = [], [], []
    for fn in _functions(f):
        pf = heat.apply(fn)
        left = heat.apply(fn * fn) - pf * pf
        right = ck * gamma_vector(g, pf)
        i = int(np.argmin(left - right))
        lhs.append(left[i])
        rhs.append(right[i])
        slack.append(left[i] - right[i])
    return [_worst("variance_bound", g, t, lhs, rhs, slack, _tol("heat", tolerances), K=K, c_k=ck)]


def check_gradient_sup_bound(
    g: Graph,
    K: float,
    f,
    t: float,
    ctx: Optional[AnalysisContext] = None,
    tolerances: Optional[dict] = None,
) -> List[CheckRecord]:
    """max √Γ(P_t f) ≤ max|f| / √t for 0 < t ≤ 1/(2|K|)."""
    ctx = _ctx(g, ctx)
    if t <= 0:
        return [skipped_record("gradient_sup_bound", g.name, "needs t > 0")]
    if not _time_allowed(K, t):
        return [skipped_record("gradient_sup_bound", g.name, f"t = {t} > 1/(2|K|) with K = {K:.6g}")]
    heat = ctx.heat(t)
    lhs, rhs = [], []
    for fn in _functions(f):
        lhs.append(float(np.sqrt(gamma_vector(g, heat.apply(fn)).max())))
        rhs.append(float(np.abs(fn).max()) / np.sqrt(t))
    slack = np.asarray(rhs) - np.asarray(lhs)
    return [_worst("gradient_sup_bound", g, t, lhs, rhs, slack, _tol("heat", tolerances), K=K)]


def check_step3(
    g: Graph,
    f,
    s: float,
    K: float,
    ctx: Optional[AnalysisContext] = None,
    tolerances: Optional[dict] = None,
) -> List[CheckRecord]:
    """‖P_s Δf‖₁ ≤ s^{-1/2}·‖√Γ(f)‖₁ for 0 < s ≤ 1/(2|K|)."""
    ctx = _ctx(g, ctx)
    if s <= 0 or not _time_allowed(K, s):
        return [skipped_record("step3", g.name, f"s = {s} outside (0, 1/(2|K|)] with K = {K:.6g}")]
    heat = ctx.heat(s)
    lhs, rhs = [], []
    for fn in _functions(f):
        lhs.append(float(np.abs(heat.apply(laplacian_apply(g, fn))).sum()))
        rhs.append(float(np.sqrt(gamma_vector(g, fn)).sum()) / np.sqrt(s))
    slack = np.asarray(rhs) - np.asarray(lhs)
    return [_worst("step3", g, s, lhs, rhs, slack, _tol("heat", tolerances), K=K)]


def check_hypercontractivity(
    g: Graph,
    f,
    t: float,
    ctx: Optional[AnalysisContext] = None,
    tolerances: Optional[dict] = None,
    safety: float = LSI_SAFETY,
) -> List[CheckRecord]:
    """n^{-1/2}‖P_t f‖₂ ≤ n^{-1/r}‖f‖_r with r = 1 + e^{-2ρt}; informational."""
    ctx = _ctx(g, ctx)
    rho = safety * ctx.log_sobolev.rho_hat
    r = 1.0 + np.exp(-2.0 * rho * t)
    heat = ctx.heat(t)
    lhs, rhs = [], []
    for fn in _functions(f):
        lhs.append(float(np.sqrt(np.mean(heat.apply(fn) ** 2))))
        rhs.append(float(np.mean(np.abs(fn) ** r) ** (1.0 / r)))
    slack = np.asarray(rhs) - np.asarray(lhs)
    return [_worst("hypercontractivity", g, t, lhs, rhs, slack, _tol("heat", tolerances), required=False, rho=rho, r=r)]


def heat_suite(
    g: Graph,
    functions: np.ndarray,
    t_grid: Iterable[float],
    ctx: Optional[AnalysisContext] = None,
    tolerances: Optional[dict] = None,
) -> List[CheckRecord]:
    """Gradient lemma and its intermediate steps over a grid of times."""
    ctx = _ctx(g, ctx)
    K = ctx.ric
    records: List[CheckRecord] = []
    for t in t_grid:
        records += check_gradient_lemma(g, functions, t, K=K, ctx=ctx, tolerances=tolerances)
        records += check_step1(g, K, functions, t, ctx=ctx, tolerances=tolerances)
        records += check_variance_bound(g, K, functions, t, ctx=ctx, tolerances=tolerances)
        records += check_gradient_sup_bound(g, K, functions, t, ctx=ctx, tolerances=tolerances)
        records += check_step3(g, functions, t, K, ctx=ctx, tolerances=tolerances)
    return records


# -------------------------------------------------------------- curvature


def check_gap_theorem(g: Graph, ctx: Optional[AnalysisContext] = None, tolerances: Optional[dict] = None) -> List[CheckRecord]:
    """λ ≥ K when Ric ≥ K ≥ 0."""
    ctx = _ctx(g, ctx)
    if ctx.ric < -NONNEG_TOL:
        return [skipped_record("gap_theorem", g.name, f"Ric = {ctx.ric:.6g} < 0")]
    lam, K = ctx.spectral.lam, max(ctx.ric, 0.0)
    return [make_record("gap_theorem", g.name, lam, K, lam - K, _tol("curvature", tolerances))]


def check_dirichlet_curvature(
    g: Graph, functions: np.ndarray, ctx: Optional[AnalysisContext] = None, tolerances: Optional[dict] = None
) -> List[CheckRecord]:
    """E(-Δf, f) ≥ K·E(f, f) with K = Ric, the summed form of the curvature inequality."""
    ctx = _ctx(g, ctx)
    K = ctx.ric
    slack = [dirichlet_curvature_slack(g, fn, K) for fn in _functions(functions)]
    i = int(np.argmin(slack))
    return [make_record("dirichlet_curvature", g.name, slack[i], 0.0, slack[i], _tol("curvature", tolerances), K=K, functions=len(slack))]


def check_ricci_upper(g: Graph, ctx: Optional[AnalysisContext] = None, tolerances: Optional[dict] = None) -> List[CheckRecord]:
    """Ric ≤ 2 + T/2, with the distance-function witness in between."""
    ctx = _ctx(g, ctx)
    report = ctx.curvature
    x, witness = ricci_upper_witness(g)
    tol = _tol("curvature", tolerances)
    return [
        make_record("ricci_upper", g.name, report.ric, report.upper_bound, report.upper_bound - report.ric, tol, T=report.max_triangles),
        make_record("ricci_upper_witness", g.name, witness, report.upper_bound, report.upper_bound - witness, tol, vertex=x, kappa=report.kappa(x)),
    ]


def check_cayley_nonnegative(g: Graph, ctx: Optional[AnalysisContext] = None, tolerances: Optional[dict] = None) -> List[CheckRecord]:
    """Cayley graphs of abelian groups have Ric ≥ 0."""
    ctx = _ctx(g, ctx)
    ric = ctx.ric
    return [make_record("cayley_nonnegative", g.name, ric, 0.0, ric, _tol("curvature", tolerances))]


def check_regular_floor(g: Graph, ctx: Optional[AnalysisContext] = None, tolerances: Optional[dict] = None) -> List[CheckRecord]:
    """Ric ≥ 2 - d on d-regular graphs."""
    if not g.is_regular():
        return [skipped_record("regular_floor", g.name, "graph is not regular")]
    ctx = _ctx(g, ctx)
    floor = 2.0 - g.max_degree
    return [make_record("regular_floor", g.name, ctx.ric, floor, ctx.ric - floor, _tol("curvature", tolerances))]


def check_negative_trend(
    contexts: Sequence[AnalysisContext], family: str, tolerances: Optional[dict] = None
) -> List[CheckRecord]:
    """
    -1 ≤ Ric ≤ 0 on each member of a family, and Ric strictly decreasing
    along it. `contexts` must be ordered by increasing size.
    """
    tol = _tol("curvature", tolerances)
    records = []
    for c in contexts:
        records.append(make_record(f"{family}_floor", c.name, c.ric, -1.0, c.ric + 1.0, tol))
        records.append(make_record(f"{family}_ceiling", c.name, c.ric, 0.0, -c.ric, tol))
    for prev, cur in zip(contexts, contexts[1:]):
        # a drop smaller than the tolerance does not count as a decrease
        drop = prev.ric - cur.ric
        records.append(make_record(f"{family}_trend", cur.name, cur.ric, prev.ric, drop - tol, 0.0, previous=prev.name))
        if drop <= tol:
            logger.warning(f"{family}: Ric does not decrease from {prev.name} to {cur.name}")
    return records


def check_oracle_agreement(
    g: Graph,
    ctx: Optional[AnalysisContext] = None,
    tolerances: Optional[dict] = None,
    max_dim: int = 12,
    trials: int = 24,
    seed: int = 0,
) -> List[CheckRecord]:
    """Closed-form local curvature against direct minimization of Γ₂/Γ."""
    ctx = _ctx(g, ctx)
    report = ctx.curvature
    diffs = []
    for x in report.vertices:
        if ball2(g, x).dim > max_dim:
            continue
        diffs.append((abs(oracle_curvature(g, x, trials=trials, seed=seed) - report.kappa(x)), x))
    if not diffs:
        return [skipped_record("oracle_agreement", g.name, f"no 2-ball of dimension <= {max_dim}", required=False)]
    worst, x = max(diffs)
    tol = _tol("oracle", tolerances)
    return [make_record("oracle_agreement", g.name, worst, 0.0, tol - worst, 0.0, vertex=x, vertices=len(diffs), allowed=tol)]
