import numpy as np
import pytest

from src.curvature.bochner import (
    check_inequality,
    curvature,
    local_curvature,
    ricci_upper_witness,
    upper_bound,
)
from src.graph.core import Graph, gamma
from src.graph.families import (
    abelian_cayley,
    complete,
    cycle,
    dyck,
    hypercube,
    middle_slice_adjacent,
    path,
    random_abelian_spec,
    slice_graph,
    sn_special,
    sn_transpositions,
    tree,
)
from src.spectral.spectrum import spectrum
from src.utils.errors import GraphInputError, PreconditionError


@pytest.mark.parametrize("n", range(1, 8))
def test_hypercube_curvature_is_two(n):
    assert curvature(hypercube(n)).ric == pytest.approx(2.0, abs=1e-8)


@pytest.mark.parametrize("n", list(range(2, 13)) + [40])
def test_complete_graph_curvature(n):
    assert curvature(complete(n)).ric == pytest.approx(1.0 + n / 2.0, abs=1e-8)


def test_small_cycles():
    assert curvature(cycle(3)).ric == pytest.approx(2.5, abs=1e-8)
    assert curvature(cycle(4)).ric == pytest.approx(2.0, abs=1e-8)


@pytest.mark.parametrize("n", [5, 6, 7, 11, 50, 200])
def test_long_cycles_are_flat(n):
    assert curvature(cycle(n)).ric == pytest.approx(0.0, abs=1e-8)


@pytest.mark.parametrize("n", range(2, 9))
def test_slice_curvature(n):
    for k in range(1, n):
        assert curvature(slice_graph(n, k)).ric == pytest.approx(1.0 + n / 2.0, abs=1e-8)


@pytest.mark.parametrize("n", [3, 4])
def test_symmetric_group_with_all_transpositions(n):
    assert curvature(sn_transpositions(n)).ric == pytest.approx(2.0, abs=1e-8)


@pytest.mark.parametrize("d", range(2, 7))
def test_tree_interior_curvature(d):
    report = curvature(tree(d, 3), interior_only=True)
    assert report.interior_only
    assert all(k == pytest.approx(2.0 - d, abs=1e-8) for k in report.per_vertex)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_tree_leaf_curvature(d):
    g = tree(d, 2)
    leaf = g.n - 1
    assert local_curvature(g, leaf).kappa == pytest.approx((5.0 - d) / 2.0, abs=1e-10)


def test_no_interior_vertex():
    with pytest.raises(PreconditionError):
        curvature(path(3), interior_only=True)


def test_vertex_out_of_range():
    with pytest.raises(GraphInputError):
        local_curvature(cycle(5), 5)


def test_cycle_witness():
    g = cycle(5)
    loc = local_curvature(g, 0)
    assert loc.kappa == pytest.approx(0.0, abs=1e-12)
    expected = {0: 0.0, 1: 1.0, 4: -1.0, 2: 2.0, 3: -2.0}
    assert set(loc.witness) == set(expected)
    for v, val in expected.items():
        assert loc.witness[v] == pytest.approx(val, abs=1e-10)


@pytest.mark.parametrize("g", [hypercube(3), complete(5), sn_special(4), tree(3, 3), dyck(4)], ids=lambda g: g.name)
def test_witness_attains_the_minimum(g):
    for x in range(0, g.n, max(1, g.n // 5)):
        loc = local_curvature(g, x)
        f = np.zeros(g.n)
        for v, val in loc.witness.items():
            f[v] = val
        assert gamma(g, f, f, x) == pytest.approx(1.0, abs=1e-10)
        assert check_inequality(g, x, loc.witness, loc.kappa) == pytest.approx(0.0, abs=1e-9)


def test_inequality_holds_for_random_functions(rng):
    g = sn_special(4)
    report = curvature(g)
    for x in range(g.n):
        for _ in range(5):
            f = rng.standard_normal(g.n)
            assert check_inequality(g, x, f, report.kappa(x)) >= -1e-9


def test_report_fields():
    g = path(7)
    report = curvature(g)
    assert report.vertices == tuple(range(7))
    assert report.ric == min(report.per_vertex)
    assert report.kappa(report.witness_vertex) == report.ric
    data = report.to_dict()
    assert data["family"] == "path-7"
    assert len(data["per_vertex"]) == 7


def test_thread_count_does_not_change_result():
    g = slice_graph(6, 3)
    assert curvature(g, threads=1).per_vertex == curvature(g, threads=4).per_vertex


@pytest.mark.parametrize(
    "g",
    [cycle(3), complete(6), hypercube(3), slice_graph(5, 2), sn_special(4), tree(3, 3), middle_slice_adjacent(3)],
    ids=lambda g: g.name,
)
def test_upper_bound(g):
    report = curvature(g)
    bound, t_max = upper_bound(g)
    assert report.upper_bound == bound == 2.0 + t_max / 2.0
    assert report.ric <= bound + 1e-8
    x, ratio = ricci_upper_witness(g)
    assert ratio >= report.kappa(x) - 1e-9
    assert ratio <= bound + 1e-9


def test_random_abelian_cayley_graphs_are_nonnegative():
    rng = np.random.default_rng(2024)
    for _ in range(100):
        g = abelian_cayley(random_abelian_spec(rng, max_order=200))
        ric = curvature(g).ric
        assert ric >= -1e-8
        assert spectrum(g).lam >= ric - 1e-8


@pytest.mark.parametrize(
    "family, sizes", [(middle_slice_adjacent, range(2, 6)), (dyck, range(3, 6))], ids=["middle-slice", "dyck"]
)
def test_negative_families_decrease_within_minus_one_and_zero(family, sizes):
    rics = [curvature(family(n)).ric for n in sizes]
    assert all(-1.0 - 1e-8 <= ric <= 1e-8 for ric in rics)
    assert all(later < earlier for earlier, later in zip(rics, rics[1:]))


def test_small_negative_family_values():
    assert curvature(middle_slice_adjacent(2)).ric == pytest.approx(-0.18614, abs=1e-4)
    assert curvature(dyck(3)).ric == pytest.approx(-0.18614, abs=1e-4)
    assert curvature(middle_slice_adjacent(5)).ric == pytest.approx(-0.88783, abs=1e-4)


def test_disconnected_input_is_handled_per_component():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert curvature(g).ric == pytest.approx(2.0, abs=1e-12)
