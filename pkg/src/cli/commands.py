"""Subcommand implementations. Each returns (payload, csv rows, exit code)."""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from src.curvature.bochner import curvature
from src.graph.core import Graph
from src.graph.families import build_family
from src.graph.io import format_graph, load_graph, save_graph
from src.isoperimetry.cheeger import cheeger_exact, cheeger_sweep
from src.isoperimetry.log_sobolev import logsobolev_estimate
from src.isoperimetry.testset import sn_test_set
from src.spectral.heat import heat_kernel
from src.spectral.spectrum import sparse_gap, spectrum
from src.utils.errors import UsageError
from src.verify.records import DEFAULT_TOLERANCES
from src.verify.runner import DEFAULT_SEED, run_all

Result = Tuple[Any, List[Dict], int]


@dataclass
class RunConfig:
    command: str
    family: Optional[str] = None
    params: Sequence[str] = ()
    input_path: Optional[str] = None
    out: Optional[str] = None
    fmt: str = "json"
    seed: int = DEFAULT_SEED
    threads: int = 1
    tolerances: Dict[str, float] = field(default_factory=dict)
    interior_only: bool = False
    cap_exact_cheeger: int = 22
    options: Dict[str, Any] = field(default_factory=dict)
    config: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.command != "verify" and (self.family is None) == (self.input_path is None):
            raise UsageError("give exactly one input: a family with parameters, or --input PATH")

    def section(self, name: str) -> Dict[str, Any]:
        return self.config.get(name, {}) or {}


def parse_tolerances(items: Sequence[str]) -> Dict[str, float]:
    """KEY=VALUE pairs naming verification tolerance classes."""
    out: Dict[str, float] = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or key not in DEFAULT_TOLERANCES:
            raise UsageError(f"--tol expects KEY=VALUE with KEY in {sorted(DEFAULT_TOLERANCES)}, got {item!r}")
        try:
            out[key] = float(value)
        except ValueError:
            raise UsageError(f"--tol value for {key} is not a number: {value!r}") from None
    return out


def resolve_graph(cfg: RunConfig) -> Graph:
    if cfg.input_path:
        return load_graph(cfg.input_path)
    return build_family(cfg.family, cfg.params)


def cmd_generate(cfg: RunConfig) -> Result:
    g = resolve_graph(cfg)
    graph_format = cfg.options.get("graph_format", "edgelist")
    logger.info(f"generated {g.name}: {g.n} vertices, {g.num_edges} edges")
    if cfg.out:
        save_graph(g, cfg.out, graph_format)
        return None, [], 0
    return format_graph(g, graph_format), [], 0


def cmd_curvature(cfg: RunConfig) -> Result:
    g = resolve_graph(cfg)
    residual = float(cfg.section("curvature").get("eig_residual_factor", 1e-9))
    report = curvature(g, interior_only=cfg.interior_only, threads=cfg.threads, residual_factor=residual)
    rows = [{"vertex": x, "kappa": k} for x, k in zip(report.vertices, report.per_vertex)]
    return report.to_dict(), rows, 0


def cmd_spectrum(cfg: RunConfig) -> Result:
    g = resolve_graph(cfg)
    spectral_cfg = cfg.section("spectral")
    report = spectrum(g, zero_tol=float(spectral_cfg.get("zero_tol", 1e-8)))
    payload = report.to_dict()
    if cfg.options.get("sparse"):
        payload["sparse_lambda"] = sparse_gap(
            g,
            tol=float(spectral_cfg.get("sparse_tol", 1e-9)),
            seed=cfg.seed,
            dense_cutoff=int(spectral_cfg.get("dense_cutoff", 64)),
            maxiter=int(spectral_cfg.get("max_iterations", 5000)),
        )
    rows = [{"index": i, "eigenvalue": w} for i, w in enumerate(report.eigenvalues)]
    return payload, rows, 0


def cmd_cheeger(cfg: RunConfig) -> Result:
    method = cfg.options.get("method", "exact")
    if method == "testset":
        if cfg.family != "sn-special" or len(cfg.params) != 1:
            raise UsageError("--testset works on the family 'sn-special N'")
        report = sn_test_set(int(cfg.params[0]))
    else:
        g = resolve_graph(cfg)
        if method == "sweep":
            report = cheeger_sweep(g)
        else:
            prefix_bits = int(cfg.section("cheeger").get("prefix_bits", 6))
            report = cheeger_exact(g, cap=cfg.cap_exact_cheeger, threads=cfg.threads, prefix_bits=prefix_bits)
    rows = [{"vertex": v} for v in report.argmin_set]
    return report.to_dict(), rows, 0


def cmd_logsobolev(cfg: RunConfig) -> Result:
    g = resolve_graph(cfg)
    lsi = cfg.section("log_sobolev")
    trials = int(cfg.options.get("trials") or lsi.get("trials", 8))
    estimate = logsobolev_estimate(g, trials=trials, seed=cfg.seed, floor=float(lsi.get("floor", 1e-12)))
    rows = [{"vertex": v, "witness": w} for v, w in enumerate(estimate.best_witness)]
    return estimate.to_dict(), rows, 0


def cmd_heat(cfg: RunConfig) -> Result:
    g = resolve_graph(cfg)
    kernel = heat_kernel(g, float(cfg.options.get("t", 1.0)))
    payload = kernel.to_dict()
    payload["row_sums"] = kernel.entries.sum(axis=1)
    rows = [{"vertex": x, **{str(y): kernel.entries[x, y] for y in range(g.n)}} for x in range(g.n)]
    return payload, rows, 0


def cmd_verify(cfg: RunConfig) -> Result:
    config = dict(cfg.config)
    verify_cfg = dict(config.get("verify", {}) or {})
    verify_cfg["tolerances"] = {**(verify_cfg.get("tolerances") or {}), **cfg.tolerances}
    config["verify"] = verify_cfg
    config.setdefault("cheeger", {})
    config["cheeger"] = {**config["cheeger"], "exact_cap": cfg.cap_exact_cheeger}
    report = run_all(cfg.options.get("corpus", "standard"), seed=cfg.seed, threads=cfg.threads, config=config)
    rows = [r.to_dict() for r in report.records]
    for row in rows:
        row.pop("details")
    return report, rows, 0 if report.ok else 1


COMMANDS = {
    "generate": cmd_generate,
    "curvature": cmd_curvature,
    "spectrum": cmd_spectrum,
    "cheeger": cmd_cheeger,
    "logsobolev": cmd_logsobolev,
    "heat": cmd_heat,
    "verify": cmd_verify,
}
