import math

import numpy as np
import pytest

from src.graph.core import Graph
from src.graph.families import complete, cycle, hypercube, slice_graph
from src.isoperimetry.cheeger import (
    boundary_size,
    cheeger_exact,
    cheeger_sweep,
    mask_to_set,
    subset_boundaries,
)
from src.utils.errors import ResourceCapError


def _brute_force_h(g):
    boundary, sizes = subset_boundaries(g)
    keep = (sizes > 0) & (2 * sizes <= g.n)
    return float(np.min(boundary[keep] / sizes[keep]))


def test_boundary_size_examples():
    assert boundary_size(cycle(6), [0, 1, 2]) == 2
    assert boundary_size(cycle(6), range(6)) == 0
    assert boundary_size(complete(4), [0, 1]) == 4


def test_complement_symmetry(rng):
    g = hypercube(4)
    for _ in range(20):
        subset = [v for v in range(g.n) if rng.random() < 0.5]
        rest = [v for v in range(g.n) if v not in subset]
        assert boundary_size(g, subset) == boundary_size(g, rest)


def test_subset_boundaries_table():
    g = cycle(5)
    boundary, sizes = subset_boundaries(g)
    assert len(boundary) == 32
    for mask in (0, 0b00111, 0b10101, 0b11111):
        subset = mask_to_set(mask, g.n)
        assert boundary[mask] == boundary_size(g, subset)
        assert sizes[mask] == len(subset)


def test_cycle_six():
    report = cheeger_exact(cycle(6))
    assert report.h == pytest.approx(2.0 / 3.0)
    assert report.argmin_set == (0, 1, 2)
    assert report.boundary == 2
    assert report.method == "exact"


def test_ties_ignore_set_size():
    # on the star K_{1,3}, {1} and {0, 1} both give h = 1
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    report = cheeger_exact(star)
    assert report.h == pytest.approx(1.0)
    assert report.argmin_set == (0, 1)


def test_cycle_ten():
    assert cheeger_exact(cycle(10)).h == pytest.approx(0.4)


@pytest.mark.parametrize("n", range(2, 11))
def test_complete_graph(n):
    report = cheeger_exact(complete(n))
    assert report.h == pytest.approx(math.ceil(n / 2))
    assert report.argmin_set == tuple(range(n // 2))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_hypercube(n):
    assert cheeger_exact(hypercube(n)).h == pytest.approx(1.0)


def test_exact_matches_brute_force(petersen):
    for g in (petersen, slice_graph(5, 2), cycle(9)):
        report = cheeger_exact(g)
        assert report.h == pytest.approx(_brute_force_h(g))
        assert 0 < report.size <= g.n / 2
        assert boundary_size(g, report.argmin_set) == report.boundary


def test_random_subsets_never_beat_exact(rng):
    g = slice_graph(6, 3)
    h = cheeger_exact(g).h
    for _ in range(10_000):
        size = int(rng.integers(1, g.n // 2 + 1))
        subset = rng.choice(g.n, size=size, replace=False)
        assert boundary_size(g, subset) / size >= h - 1e-12


def test_thread_and_block_invariance(petersen):
    base = cheeger_exact(petersen, threads=1, prefix_bits=0)
    for threads, bits in ((2, 3), (4, 6)):
        assert cheeger_exact(petersen, threads=threads, prefix_bits=bits) == base


def test_over_cap():
    with pytest.raises(ResourceCapError):
        cheeger_exact(cycle(24))
    with pytest.raises(ResourceCapError):
        cheeger_exact(cycle(12), cap=10)


def test_sweep_on_even_cycle():
    report = cheeger_sweep(cycle(8))
    assert report.h == pytest.approx(0.5)
    assert report.method == "sweep"


@pytest.mark.parametrize("name", ["petersen", "cube", "slice", "complete"])
def test_sweep_is_an_upper_bound(name, petersen):
    g = {"petersen": petersen, "cube": hypercube(3), "slice": slice_graph(5, 2), "complete": complete(7)}[name]
    sweep = cheeger_sweep(g)
    assert sweep.h >= cheeger_exact(g).h - 1e-12
    assert 0 < sweep.size <= g.n / 2
    assert boundary_size(g, sweep.argmin_set) == sweep.boundary


def test_report_json():
    data = cheeger_exact(cycle(6)).to_dict()
    assert data == {"h": pytest.approx(2.0 / 3.0), "set": [0, 1, 2], "boundary": 2, "method": "exact"}
