"""
Edge boundaries and Cheeger constants.

The exact constant enumerates every subset S containing vertex 0 by a Gray
code over the remaining vertices, updating |∂S| incrementally. A set A with
0 < |A| <= n/2 is either such an S or the complement of one, and both share
the same boundary. The high bits are split into prefix blocks scanned in
parallel; blocks are merged in prefix order with exact integer comparisons.
"""
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Tuple

import numba
import numpy as np
from loguru import logger

from src.graph.core import Graph
from src.spectral.spectrum import SpectralReport, spectrum
from src.utils.errors import GraphInputError, ResourceCapError

DEFAULT_EXACT_CAP = 22
SUBSET_TABLE_CAP = 20


@dataclass(frozen=True)
class IsoperimetryReport:
    h: float
    argmin_set: Tuple[int, ...]
    boundary: int
    method: str
    details: Dict = field(default_factory=dict, compare=False)

    @property
    def size(self) -> int:
        return len(self.argmin_set)

    def to_dict(self) -> dict:
        out = {"h": self.h, "set": list(self.argmin_set), "boundary": self.boundary, "method": self.method}
        if self.details:
            out["details"] = dict(self.details)
        return out


def boundary_size(g: Graph, subset: Iterable[int]) -> int:
    members = set(subset)
    for v in members:
        if not 0 <= v < g.n:
            raise GraphInputError(f"vertex {v} out of range for n={g.n}")
    return sum(1 for u, v in g.edges if (u in members) != (v in members))


def subset_boundaries(g: Graph) -> Tuple[np.ndarray, np.ndarray]:
    """|∂A| and |A| for every bitmask A in 0..2^n-1."""
    if g.n > SUBSET_TABLE_CAP:
        raise ResourceCapError(f"subset table for n={g.n} exceeds the cap of {SUBSET_TABLE_CAP}")
    masks = np.arange(1 << g.n, dtype=np.int64)
    boundary = np.zeros(masks.shape, dtype=np.int64)
    sizes = np.zeros(masks.shape, dtype=np.int64)
    bits = [(masks >> v) & 1 for v in range(g.n)]
    for v in range(g.n):
        sizes += bits[v]
    for u, v in g.edges:
        boundary += bits[u] ^ bits[v]
    return boundary, sizes


def mask_to_set(mask: int, n: int) -> Tuple[int, ...]:
    return tuple(v for v in range(n) if (mask >> v) & 1)


@numba.njit(cache=True)
def _lex_less(a, b):
    """Sorted-list lexicographic order of two vertex bitmasks."""
    if a == b:
        return False
    d = a ^ b
    low = d & (-d)
    above = ~((low << 1) - 1)
    if a & low:
        return (b & above) != 0
    return (a & above) == 0


@numba.njit(cache=True)
def _better(b1, s1, m1, b2, s2, m2):
    # b1/s1 < b2/s2 with a lexicographic tie-break; s2 == 0 means "none yet"
    if s2 == 0:
        return True
    lhs = b1 * s2
    rhs = b2 * s1
    if lhs != rhs:
        return lhs < rhs
    return _lex_less(m1, m2)


@numba.njit(parallel=True, cache=True)
def _scan_blocks(n, prefix_bits, indptr, indices, degrees):
    free = n - 1
    low_bits = free - prefix_bits
    blocks = 1 << prefix_bits
    full = (1 << n) - 1
    best_b = np.zeros(blocks, dtype=np.int64)
    best_s = np.zeros(blocks, dtype=np.int64)
    best_m = np.zeros(blocks, dtype=np.int64)
    for p in numba.prange(blocks):
        # vertex 0 always in S; prefix bits map to vertices low_bits+1 .. n-1
        s_mask = np.int64(1) | (np.int64(p) << (low_bits + 1))
        size = 0
        b = 0
        for v in range(n):
            if (s_mask >> v) & 1:
                size += 1
                for k in range(indptr[v], indptr[v + 1]):
                    if not (s_mask >> indices[k]) & 1:
                        b += 1
        bb = 0
        bs = 0
        bm = 0
        for step in range(1 << low_bits):
            if step > 0:
                j = 0
                while not (step >> j) & 1:
                    j += 1
                w = j + 1
                inside = 0
                for k in range(indptr[w], indptr[w + 1]):
                    if (s_mask >> indices[k]) & 1:
                        inside += 1
                if (s_mask >> w) & 1:
                    s_mask &= ~(1 << w)
                    size -= 1
                    b = b - degrees[w] + 2 * inside
                else:
                    s_mask |= 1 << w
                    size += 1
                    b = b + degrees[w] - 2 * inside
            if 2 * size <= n:
                if _better(b, size, s_mask, bb, bs, bm):
                    bb, bs, bm = b, size, s_mask
            comp = n - size
            if comp > 0 and 2 * comp <= n:
                if _better(b, comp, full ^ s_mask, bb, bs, bm):
                    bb, bs, bm = b, comp, full ^ s_mask
        best_b[p] = bb
        best_s[p] = bs
        best_m[p] = bm
    return best_b, best_s, best_m


def cheeger_exact(g: Graph, cap: int = DEFAULT_EXACT_CAP, threads: Optional[int] = None, prefix_bits: int = 6) -> IsoperimetryReport:
    """h(G) = min_{0<|A|<=n/2} |∂A|/|A| by exhaustive enumeration."""
    if g.n > cap:
        raise ResourceCapError(f"exact Cheeger constant capped at n={cap} (got n={g.n}); use the sweep method")
    if g.n > 62:
        raise ResourceCapError("bitmask enumeration supports at most 62 vertices")
    if threads:
        numba.set_num_threads(min(threads, numba.config.NUMBA_NUM_THREADS))
    prefix_bits = max(0, min(prefix_bits, g.n - 1))
    csr = g.adjacency_matrix()
    indptr = csr.indptr.astype(np.int64)
    indices = csr.indices.astype(np.int64)
    best_b, best_s, best_m = _scan_blocks(g.n, prefix_bits, indptr, indices, g.degrees.astype(np.int64))

    b, s, m = 0, 0, 0
    for bb, bs, bm in zip(best_b.tolist(), best_s.tolist(), best_m.tolist()):
        if bs and _better(bb, bs, bm, b, s, m):
            b, s, m = bb, bs, bm
    subset = mask_to_set(m, g.n)
    logger.debug(f"exact Cheeger on {g.name}: h = {b}/{s}")
    return IsoperimetryReport(h=b / s, argmin_set=subset, boundary=b, method="exact")


def cheeger_sweep(g: Graph, report: Optional[SpectralReport] = None) -> IsoperimetryReport:
    """Best level set of the Fiedler vector; an upper bound on h."""
    fiedler = (report or spectrum(g)).fiedler_vector
    order = sorted(range(g.n), key=lambda v: (fiedler[v], v))
    members = set()
    b = 0
    best: Optional[Tuple[int, int, Tuple[int, ...]]] = None
    for k, v in enumerate(order[:-1], start=1):
        inside = sum(1 for y in g.adj[v] if y in members)
        b += len(g.adj[v]) - 2 * inside
        members.add(v)
        if 2 * k <= g.n:
            cand = (b, k, tuple(sorted(members)))
        else:
            cand = (b, g.n - k, tuple(sorted(set(range(g.n)) - members)))
        if best is None or cand[0] * best[1] < best[0] * cand[1] or (
            cand[0] * best[1] == best[0] * cand[1] and cand[2] < best[2]
        ):
            best = cand
    b, s, subset = best
    return IsoperimetryReport(h=b / s, argmin_set=subset, boundary=b, method="sweep")
