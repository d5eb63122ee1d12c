"""Named collections of graphs the verification suite runs over."""
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List

import numpy as np

from src.graph import families as fam
from src.graph.core import Graph
from src.utils.errors import GraphInputError

HEAT = "heat"
ABELIAN = "abelian"
MIDDLE_SLICE = "middle-slice"
DYCK = "dyck"


@dataclass(frozen=True)
class CorpusInstance:
    graph: Graph
    tags: FrozenSet[str] = field(default_factory=frozenset)

    @property
    def name(self) -> str:
        return self.graph.name


def _tagged(graph: Graph, *tags: str) -> CorpusInstance:
    return CorpusInstance(graph, frozenset(tags))


def _random_abelian(seed: int, count: int, max_order: int) -> List[CorpusInstance]:
    rng = np.random.default_rng([seed, 10_000])
    out = []
    for i in range(count):
        spec = fam.random_abelian_spec(rng, max_order=max_order)
        g = fam.abelian_cayley(spec, name=f"cayley-random-{i}-Z{'x'.join(map(str, spec.orders))}")
        out.append(_tagged(g, ABELIAN))
    return out


def standard_corpus(seed: int, abelian_instances: int = 8, abelian_max_order: int = 40) -> List[CorpusInstance]:
    items = [_tagged(fam.hypercube(n)) for n in (1, 2, 4)]
    items.append(_tagged(fam.hypercube(3), HEAT))
    items += [_tagged(fam.complete(n)) for n in (2, 3, 4, 5, 7, 8)]
    items.append(_tagged(fam.complete(6), HEAT))
    items += [_tagged(fam.cycle(n)) for n in (3, 4, 5, 6, 7, 8, 10, 11, 12)]
    items.append(_tagged(fam.cycle(9), HEAT))
    items.append(_tagged(fam.path(7)))
    items += [_tagged(fam.slice_graph(4, 2)), _tagged(fam.slice_graph(5, 2), HEAT), _tagged(fam.slice_graph(6, 3))]
    items += [_tagged(fam.sn_transpositions(n)) for n in (3, 4)]
    items += [_tagged(fam.sn_special(n)) for n in (3, 4)]
    items += [
        _tagged(fam.middle_slice_adjacent(2), MIDDLE_SLICE),
        _tagged(fam.middle_slice_adjacent(3), MIDDLE_SLICE, HEAT),
        _tagged(fam.middle_slice_adjacent(4), MIDDLE_SLICE),
        _tagged(fam.middle_slice_adjacent(5), MIDDLE_SLICE),
    ]
    items += [_tagged(fam.dyck(n), DYCK) for n in (3, 4, 5)]
    items.append(_tagged(fam.tree(3, 3)))
    z16 = fam.AbelianCayleySpec((16,), ((1,), (4,)))
    items.append(_tagged(fam.abelian_cayley(z16, name="cayley-Z16-1-4"), ABELIAN))
    items += _random_abelian(seed, abelian_instances, abelian_max_order)
    return items


def quick_corpus(seed: int, abelian_instances: int = 2, abelian_max_order: int = 20) -> List[CorpusInstance]:
    items = [
        _tagged(fam.hypercube(2)),
        _tagged(fam.hypercube(3), HEAT),
        _tagged(fam.complete(4)),
        _tagged(fam.cycle(5), HEAT),
        _tagged(fam.cycle(6)),
        _tagged(fam.slice_graph(4, 2)),
        _tagged(fam.middle_slice_adjacent(2), MIDDLE_SLICE),
        _tagged(fam.middle_slice_adjacent(3), MIDDLE_SLICE),
        _tagged(fam.dyck(3), DYCK),
        _tagged(fam.abelian_cayley(fam.AbelianCayleySpec((8,), ((1,),)), name="cayley-Z8-1"), ABELIAN),
    ]
    items += _random_abelian(seed, abelian_instances, abelian_max_order)
    return items


CORPORA: Dict[str, Callable[..., List[CorpusInstance]]] = {
    "standard": standard_corpus,
    "quick": quick_corpus,
}


def build_corpus(name: str, seed: int, **kwargs) -> List[CorpusInstance]:
    if name not in CORPORA:
        raise GraphInputError(f"unknown corpus {name!r}; choose from {', '.join(sorted(CORPORA))}")
    return CORPORA[name](seed, **kwargs)
