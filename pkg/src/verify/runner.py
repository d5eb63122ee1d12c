from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from src.verify import checks
from src.verify.context import AnalysisContext
from src.verify.corpus import ABELIAN, DYCK, HEAT, MIDDLE_SLICE, CorpusInstance, build_corpus
from src.verify.records import DEFAULT_TOLERANCES, CheckRecord, VerificationReport

DEFAULT_SEED = 7


@dataclass
class VerifySettings:
    tolerances: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    heat_functions: int = 100
    t_grid: Tuple[float, ...] = (0.01, 0.1, 0.5, 1.0, 2.0)
    subset_cap: int = checks.SUBSET_CAP
    lsi_cap: int = checks.LSI_CAP
    lsi_safety: float = checks.LSI_SAFETY
    lsi_trials: int = 8
    exact_cap: int = 22
    oracle_max_dim: int = 12
    oracle_trials: int = 24
    abelian_instances: int = 8
    abelian_max_order: int = 40

    @classmethod
    def from_config(cls, config: Optional[dict]) -> "VerifySettings":
        config = config or {}
        verify = config.get("verify", {})
        settings = cls()
        settings.tolerances.update(verify.get("tolerances", {}))
        for key in ("heat_functions", "subset_cap", "lsi_cap", "abelian_instances", "abelian_max_order"):
            if key in verify:
                setattr(settings, key, int(verify[key]))
        if "t_grid" in verify:
            settings.t_grid = tuple(float(t) for t in verify["t_grid"])
        lsi = config.get("log_sobolev", {})
        settings.lsi_safety = float(lsi.get("safety_factor", settings.lsi_safety))
        settings.lsi_trials = int(lsi.get("trials", settings.lsi_trials))
        settings.exact_cap = int(config.get("cheeger", {}).get("exact_cap", settings.exact_cap))
        curvature_cfg = config.get("curvature", {})
        settings.oracle_trials = int(curvature_cfg.get("oracle_trials", settings.oracle_trials))
        settings.oracle_max_dim = int(curvature_cfg.get("oracle_max_dim", settings.oracle_max_dim))
        return settings


def verify_instance(
    inst: CorpusInstance, index: int, seed: int, settings: VerifySettings, cheeger_threads: Optional[int] = None
) -> Tuple[List[CheckRecord], AnalysisContext]:
    g = inst.graph
    tol = settings.tolerances
    rng = np.random.default_rng([seed, index])
    ctx = AnalysisContext(
        g, inst.tags, seed=seed, exact_cap=settings.exact_cap, lsi_trials=settings.lsi_trials, threads=cheeger_threads
    )
    functions = rng.standard_normal((settings.heat_functions, g.n))

    records: List[CheckRecord] = []
    records += checks.check_ricci_upper(g, ctx, tol)
    records += checks.check_regular_floor(g, ctx, tol)
    records += checks.check_gap_theorem(g, ctx, tol)
    records += checks.check_dirichlet_curvature(g, functions, ctx, tol)
    if ABELIAN in inst.tags:
        records += checks.check_cayley_nonnegative(g, ctx, tol)
    if g.n <= settings.exact_cap:
        records += checks.check_buser_global(g, ctx, tol)
        records += checks.check_cheeger_floor(g, ctx, tol)
        records += checks.check_cheeger_classic(g, ctx, tol)
    if g.n <= settings.subset_cap:
        records += checks.check_subset_iso(g, ctx=ctx, tolerances=tol, cap=settings.subset_cap)
        records += checks.check_subset_iso_sharp(g, ctx=ctx, tolerances=tol, cap=settings.subset_cap)
    if g.n <= settings.lsi_cap:
        records += checks.check_lsi_iso(g, ctx, tol, safety=settings.lsi_safety, cap=settings.lsi_cap)
    if HEAT in inst.tags:
        records += checks.heat_suite(g, functions, settings.t_grid, ctx, tol)
        if g.n <= settings.lsi_cap:
            records += checks.check_hypercontractivity(g, np.abs(functions), 0.5, ctx, tol, safety=settings.lsi_safety)
    records += checks.check_oracle_agreement(
        g, ctx, tol, max_dim=settings.oracle_max_dim, trials=settings.oracle_trials, seed=seed
    )
    failed = sum(1 for r in records if r.required and not r.passed)
    logger.info(f"{g.name}: {len(records)} records, {failed} required failures (Ric = {ctx.ric:.10g})")
    return records, ctx


def run_all(
    corpus_spec: Union[str, Sequence[CorpusInstance]] = "standard",
    seed: int = DEFAULT_SEED,
    threads: int = 1,
    config: Optional[dict] = None,
) -> VerificationReport:
    """
    Run every applicable check over a corpus.

    Instances are processed concurrently; records are merged in corpus
    order so the report does not depend on the thread count.
    """
    settings = VerifySettings.from_config(config)
    if isinstance(corpus_spec, str):
        corpus_name = corpus_spec
        corpus = build_corpus(
            corpus_spec, seed, abelian_instances=settings.abelian_instances, abelian_max_order=settings.abelian_max_order
        )
    else:
        corpus_name = "custom"
        corpus = list(corpus_spec)
    logger.info(f"verifying {len(corpus)} instances of corpus {corpus_name!r} with seed {seed} on {threads} thread(s)")

    # the exact Cheeger scan is already parallel; keep it single-threaded under instance parallelism
    cheeger_threads = 1 if threads > 1 else None

    def work(item):
        index, inst = item
        return verify_instance(inst, index, seed, settings, cheeger_threads)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, enumerate(corpus)))
    else:
        results = [work(item) for item in enumerate(corpus)]

    records: List[CheckRecord] = [r for recs, _ in results for r in recs]
    for tag in (MIDDLE_SLICE, DYCK):
        members = [ctx for (_, ctx), inst in zip(results, corpus) if tag in inst.tags]
        if members:
            records += checks.check_negative_trend(members, tag, settings.tolerances)

    report = VerificationReport(
        records=records, seed=seed, corpus=corpus_name, corpus_description=[inst.name for inst in corpus]
    )
    summary = report.summary()
    if report.ok:
        logger.success(f"all {summary['checked']} checks passed ({summary['skipped']} skipped)")
    else:
        for rec in report.failures:
            logger.error(f"{rec.name} failed on {rec.instance}: lhs={rec.lhs} rhs={rec.rhs} slack={rec.slack}")
    return report
