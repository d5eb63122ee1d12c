"""
Explicit low-conductance set in the Cayley graph of S_n generated by
{(12), (12...n)^{±1}}:  A = {φ : dist(φ(1), φ(2)) <= n/4}, dist cyclic.
"""
from typing import Tuple

from loguru import logger

from src.graph.families import sn_special, transposition, perm_compose
from src.isoperimetry.cheeger import IsoperimetryReport
from src.utils.errors import AssemblyError, FamilyParameterError


def cyclic_distance(a: int, b: int, n: int) -> int:
    diff = abs(a - b)
    return min(diff, n - diff)


def sn_test_set(n: int) -> IsoperimetryReport:
    """
    |∂A| over the smaller side of the cut; the raw ratio |∂A|/|A| and |A| are
    kept in `details`.

    Rotations preserve A, so every boundary edge must be a (12)-edge; this is
    asserted exactly.
    """
    if n < 4:
        raise FamilyParameterError(f"the S_n test set is empty for n={n} < 4")
    g = sn_special(n)
    labels = g.labels
    in_a = [cyclic_distance(p[0], p[1], n) <= n / 4 for p in labels]
    swap = transposition(n, 0, 1)

    boundary = 0
    for u, v in g.edges:
        if in_a[u] != in_a[v]:
            if perm_compose(swap, labels[u]) != labels[v]:
                raise AssemblyError(f"boundary edge {labels[u]} - {labels[v]} is not a (12)-edge")
            boundary += 1

    members: Tuple[int, ...] = tuple(i for i, flag in enumerate(in_a) if flag)
    size_a = len(members)
    smaller = members if 2 * size_a <= g.n else tuple(i for i, flag in enumerate(in_a) if not flag)
    h_bound = boundary / len(smaller)
    details = {
        "n": n,
        "test_set_size": size_a,
        "group_order": g.n,
        "raw_ratio": boundary / size_a,
        "raw_ratio_times_n2": boundary / size_a * n * n,
    }
    logger.debug(f"S_{n} test set: |A| = {size_a}, |∂A| = {boundary}, ratio·n² = {details['raw_ratio_times_n2']:.4g}")
    return IsoperimetryReport(h=h_bound, argmin_set=smaller, boundary=boundary, method="testset", details=details)
