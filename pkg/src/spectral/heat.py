"""Heat semigroup P_t = exp(tΔ) via the eigendecomposition of -Δ."""
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from src.graph.core import Graph
from src.spectral.spectrum import SpectralReport, spectrum
from src.utils.errors import GraphInputError


@dataclass(frozen=True)
class HeatKernel:
    t: float
    entries: np.ndarray

    def apply(self, f: Sequence[float]) -> np.ndarray:
        return self.entries @ np.asarray(f, dtype=np.float64)

    def to_dict(self) -> dict:
        return {"t": self.t, "entries": self.entries.tolist()}


def heat_kernel(g: Graph, t: float, report: Optional[SpectralReport] = None) -> HeatKernel:
    if t < 0:
        raise GraphInputError(f"heat kernel time must be non-negative, got {t}")
    report = report or spectrum(g)
    vecs = report.eigenvectors
    w = np.asarray(report.eigenvalues)
    entries = (vecs * np.exp(-t * w)) @ vecs.T
    return HeatKernel(t=float(t), entries=0.5 * (entries + entries.T))
