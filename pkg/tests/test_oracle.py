import numpy as np
import pytest

from src.curvature.bochner import local_curvature
from src.curvature.oracle import definitional_forms, oracle_curvature
from src.graph.core import ball2
from src.graph.families import complete, cycle, dyck, hypercube, path, sn_special, tree


def _agree(g, vertices):
    for x in vertices:
        kappa = local_curvature(g, x).kappa
        found = oracle_curvature(g, x)
        assert abs(found - kappa) <= 1e-5
        # the oracle minimizes over the same functions, so it cannot go below κ
        assert found >= kappa - 1e-7


@pytest.mark.parametrize(
    "g", [cycle(5), cycle(4), complete(4), hypercube(3), path(6), dyck(4)], ids=lambda g: g.name
)
def test_oracle_agrees_on_every_vertex(g):
    _agree(g, range(g.n))


def test_oracle_on_petersen(petersen):
    assert ball2(petersen, 0).dim == 9
    _agree(petersen, [0, 3, 7])


def test_oracle_on_tree_and_sn():
    _agree(tree(3, 3), [0, 1, 21])
    _agree(sn_special(4), [0])


def test_definitional_forms_have_constant_kernel():
    g = hypercube(3)
    coords, q2, q1 = definitional_forms(g, 0)
    assert coords[0] == 0
    ones = np.ones(len(coords))
    assert np.allclose(q2 @ ones, 0.0, atol=1e-9)
    assert np.allclose(q1 @ ones, 0.0, atol=1e-12)


def test_oracle_is_reproducible():
    g = cycle(7)
    assert oracle_curvature(g, 2, seed=4) == oracle_curvature(g, 2, seed=4)
