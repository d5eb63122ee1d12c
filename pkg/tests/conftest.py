import networkx as nx
import numpy as np
import pytest

from src.graph.core import Graph


def from_networkx(nx_graph, name: str = "") -> Graph:
    relabeled = nx.convert_node_labels_to_integers(nx_graph, ordering="sorted")
    return Graph.from_edges(relabeled.number_of_nodes(), relabeled.edges(), name=name)


def to_networkx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges)
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def petersen() -> Graph:
    return from_networkx(nx.petersen_graph(), name="petersen")
