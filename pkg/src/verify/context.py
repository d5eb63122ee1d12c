"""Lazily computed analyses shared by all checks on one graph."""
from functools import cached_property
from typing import Dict, FrozenSet, Optional

from src.curvature.bochner import CurvatureReport, curvature
from src.graph.core import Graph
from src.isoperimetry.cheeger import IsoperimetryReport, cheeger_exact
from src.isoperimetry.log_sobolev import LogSobolevEstimate, logsobolev_estimate
from src.spectral.heat import HeatKernel, heat_kernel
from src.spectral.spectrum import SpectralReport, spectrum


class AnalysisContext:
    def __init__(
        self,
        graph: Graph,
        tags: FrozenSet[str] = frozenset(),
        seed: int = 0,
        exact_cap: int = 22,
        lsi_trials: int = 8,
        threads: int = 1,
    ):
        self.graph = graph
        self.tags = tags
        self.seed = seed
        self.exact_cap = exact_cap
        self.lsi_trials = lsi_trials
        self.threads = threads
        self._heat: Dict[float, HeatKernel] = {}

    @property
    def name(self) -> str:
        return self.graph.name

    @cached_property
    def curvature(self) -> CurvatureReport:
        return curvature(self.graph)

    @property
    def ric(self) -> float:
        return self.curvature.ric

    @cached_property
    def spectral(self) -> SpectralReport:
        return spectrum(self.graph)

    @cached_property
    def cheeger(self) -> Optional[IsoperimetryReport]:
        if self.graph.n > self.exact_cap:
            return None
        return cheeger_exact(self.graph, cap=self.exact_cap, threads=self.threads)

    @cached_property
    def log_sobolev(self) -> LogSobolevEstimate:
        return logsobolev_estimate(self.graph, trials=self.lsi_trials, seed=self.seed, report=self.spectral)

    def heat(self, t: float) -> HeatKernel:
        if t not in self._heat:
            self._heat[t] = heat_kernel(self.graph, t, report=self.spectral)
        return self._heat[t]
