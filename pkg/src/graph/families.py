"""
Graph families: hypercubes, complete graphs, cycles, Cayley graphs of
abelian and permutation groups, slices of the cube, the middle slice with
adjacent transpositions and its Dyck subgraph, and truncated d-ary trees.

Group elements are hashed to dense indices in BFS order from the identity,
so every generator is deterministic.
"""
import itertools
import math
from collections import deque
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from src.graph.core import Graph
from src.utils.errors import FamilyParameterError, GroupSpecError

Perm = Tuple[int, ...]


@dataclass(frozen=True)
class AbelianCayleySpec:
    """Z_{m1} x ... x Z_{mk} with generators given as residue tuples."""

    orders: Tuple[int, ...]
    generators: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if not self.orders or any(m < 1 for m in self.orders):
            raise GroupSpecError(f"cyclic orders must be positive, got {self.orders}")
        normalized = []
        for s in self.generators:
            if len(s) != len(self.orders):
                raise GroupSpecError(f"generator {s} does not match orders {self.orders}")
            s = tuple(int(a) % m for a, m in zip(s, self.orders))
            if not any(s):
                raise GroupSpecError("the identity cannot be a generator")
            normalized.append(s)
        object.__setattr__(self, "generators", tuple(normalized))

    def symmetrized(self) -> Tuple[Tuple[int, ...], ...]:
        out = []
        for s in self.generators:
            for t in (s, tuple((-a) % m for a, m in zip(s, self.orders))):
                if t not in out:
                    out.append(t)
        return tuple(out)

    @property
    def group_order(self) -> int:
        return math.prod(self.orders)


@dataclass(frozen=True)
class PermCayleySpec:
    """Permutations of {0..n-1} in one-line notation: p[i] is the image of i."""

    n: int
    generators: Tuple[Perm, ...]

    def __post_init__(self):
        identity = tuple(range(self.n))
        for p in self.generators:
            if sorted(p) != list(identity):
                raise GroupSpecError(f"{p} is not a permutation of 0..{self.n - 1}")
            if tuple(p) == identity:
                raise GroupSpecError("the identity cannot be a generator")

    def symmetrized(self) -> Tuple[Perm, ...]:
        out: List[Perm] = []
        for p in self.generators:
            for q in (tuple(p), perm_inverse(p)):
                if q not in out:
                    out.append(q)
        return tuple(out)


def perm_compose(a: Sequence[int], b: Sequence[int]) -> Perm:
    """(a∘b)(i) = a(b(i))."""
    return tuple(a[i] for i in b)


def perm_inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, pi in enumerate(p):
        inv[pi] = i
    return tuple(inv)


def transposition(n: int, i: int, j: int) -> Perm:
    p = list(range(n))
    p[i], p[j] = p[j], p[i]
    return tuple(p)


def _cayley_bfs(
    identity: Hashable,
    generators: Sequence,
    multiply: Callable[[Hashable, Hashable], Hashable],
    expected_order: Optional[int],
    name: str,
) -> Graph:
    index: Dict[Hashable, int] = {identity: 0}
    elements: List[Hashable] = [identity]
    edges = set()
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        gi = index[g]
        for s in generators:
            h = multiply(s, g)
            if h not in index:
                index[h] = len(elements)
                elements.append(h)
                queue.append(h)
            hi = index[h]
            if hi != gi:
                edges.add((min(gi, hi), max(gi, hi)))
    if expected_order is not None and len(elements) != expected_order:
        raise GroupSpecError(
            f"{name}: generators reach a component of size {len(elements)}, expected {expected_order}"
        )
    return Graph.from_edges(len(elements), sorted(edges), name=name, labels=tuple(elements))


def abelian_cayley(spec: AbelianCayleySpec, name: str = "") -> Graph:
    gens = spec.symmetrized()
    orders = spec.orders

    def add(s, g):
        return tuple((a + b) % m for a, b, m in zip(s, g, orders))

    name = name or f"cayley-Z{'x'.join(map(str, orders))}"
    return _cayley_bfs(tuple(0 for _ in orders), gens, add, spec.group_order, name)


def perm_cayley(spec: PermCayleySpec, expected_order: Optional[int] = None, name: str = "") -> Graph:
    """Left Cayley graph: p ~ s∘p for every generator s."""
    expected = math.factorial(spec.n) if expected_order is None else expected_order
    name = name or f"cayley-S{spec.n}"
    return _cayley_bfs(tuple(range(spec.n)), spec.symmetrized(), perm_compose, expected, name)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise FamilyParameterError(message)


def hypercube(n: int) -> Graph:
    _require(n >= 1, f"hypercube needs n >= 1, got {n}")
    size = 1 << n
    edges = [(x, x ^ (1 << i)) for x in range(size) for i in range(n) if x < x ^ (1 << i)]
    labels = tuple(tuple((x >> i) & 1 for i in range(n)) for x in range(size))
    return Graph.from_edges(size, edges, name=f"hypercube-{n}", labels=labels)


def complete(n: int) -> Graph:
    _require(n >= 2, f"complete graph needs n >= 2, got {n}")
    return Graph.from_edges(n, itertools.combinations(range(n), 2), name=f"complete-{n}")


def cycle(n: int) -> Graph:
    _require(n >= 3, f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], name=f"cycle-{n}")


def path(n: int) -> Graph:
    """Path on n vertices; interior vertices are at distance >= 2 from both ends."""
    _require(n >= 2, f"path needs n >= 2, got {n}")
    interior = tuple(range(2, n - 2))
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], name=f"path-{n}", interior=interior)


def slice_graph(n: int, k: int) -> Graph:
    """Weight-k strings of {0,1}^n, adjacent when they differ in exactly two coordinates."""
    _require(1 <= k < n, f"slice needs 1 <= k < n, got n={n}, k={k}")
    supports = list(itertools.combinations(range(n), k))
    index = {s: i for i, s in enumerate(supports)}
    edges = []
    for s in supports:
        ss = set(s)
        # swap one 1 for one 0
        for out in s:
            for inn in range(n):
                if inn in ss:
                    continue
                t = tuple(sorted((ss - {out}) | {inn}))
                if index[s] < index[t]:
                    edges.append((index[s], index[t]))
    labels = tuple(tuple(1 if i in set(s) else 0 for i in range(n)) for s in supports)
    return Graph.from_edges(len(supports), edges, name=f"slice-{n}-{k}", labels=labels)


def _balanced_sequences(n: int) -> List[Tuple[int, ...]]:
    seqs = []
    for plus in itertools.combinations(range(2 * n), n):
        ps = set(plus)
        seqs.append(tuple(1 if i in ps else -1 for i in range(2 * n)))
    return seqs


def _adjacent_swap_graph(seqs: List[Tuple[int, ...]], name: str) -> Graph:
    index = {s: i for i, s in enumerate(seqs)}
    edges = []
    for s in seqs:
        for i in range(len(s) - 1):
            if s[i] != s[i + 1]:
                t = s[:i] + (s[i + 1], s[i]) + s[i + 2:]
                j = index.get(t)
                if j is not None and index[s] < j:
                    edges.append((index[s], j))
    return Graph.from_edges(len(seqs), edges, name=name, labels=tuple(seqs))


def middle_slice_adjacent(n: int) -> Graph:
    """Balanced ±1 sequences of length 2n; neighbors swap one adjacent (+1, -1) pair."""
    _require(n >= 1, f"middle slice needs n >= 1, got {n}")
    return _adjacent_swap_graph(_balanced_sequences(n), f"middle-slice-{n}")


def is_dyck(seq: Sequence[int]) -> bool:
    total = 0
    for s in seq:
        total += s
        if total < 0:
            return False
    return True


def dyck(n: int) -> Graph:
    """
    Subgraph of the middle slice induced on Dyck paths (non-negative prefix sums).

    dyck(1) is a single vertex and is rejected as isolated.
    """
    _require(n >= 1, f"dyck needs n >= 1, got {n}")
    seqs = [s for s in _balanced_sequences(n) if is_dyck(s)]
    return _adjacent_swap_graph(seqs, f"dyck-{n}")


def tree(d: int, depth: int) -> Graph:
    """
    Ball of radius `depth` in the d-regular tree, the Cayley graph of the free
    product of d copies of Z_2. Vertices at depth <= depth - 2 are interior.
    """
    _require(d >= 2 and depth >= 1, f"tree needs d >= 2 and depth >= 1, got d={d}, depth={depth}")
    # labels: reduced words in the generators 0..d-1
    words: List[Tuple[int, ...]] = [()]
    edges = []
    frontier = [0]
    for _ in range(depth):
        nxt = []
        for parent in frontier:
            w = words[parent]
            for s in range(d):
                if w and w[-1] == s:
                    continue
                words.append(w + (s,))
                child = len(words) - 1
                edges.append((parent, child))
                nxt.append(child)
        frontier = nxt
    interior = tuple(i for i, w in enumerate(words) if len(w) <= depth - 2)
    return Graph.from_edges(len(words), edges, name=f"tree-{d}-{depth}", labels=tuple(words), interior=interior)


def sn_special(n: int) -> Graph:
    """S_n with {(12), (12...n)^{±1}}, left multiplication."""
    _require(n >= 3, f"sn-special needs n >= 3, got {n}")
    rotation = tuple((i + 1) % n for i in range(n))
    spec = PermCayleySpec(n=n, generators=(transposition(n, 0, 1), rotation))
    return perm_cayley(spec, name=f"sn-special-{n}")


def sn_transpositions(n: int) -> Graph:
    _require(n >= 2, f"sn-transpositions needs n >= 2, got {n}")
    gens = tuple(transposition(n, i, j) for i, j in itertools.combinations(range(n), 2))
    return perm_cayley(PermCayleySpec(n=n, generators=gens), name=f"sn-transpositions-{n}")


def random_abelian_spec(rng: np.random.Generator, max_order: int = 200, max_factors: int = 3) -> AbelianCayleySpec:
    """Random group of order <= max_order with a random generating set."""
    orders: List[int] = []
    for _ in range(int(rng.integers(1, max_factors + 1))):
        budget = max_order // max(1, math.prod(orders))
        if budget < 2:
            break
        orders.append(int(rng.integers(2, min(budget, 16) + 1)))
    if not orders:
        orders = [int(rng.integers(3, min(max_order, 16) + 1))]
    orders_t = tuple(orders)

    def reaches_all(gens) -> bool:
        probe = AbelianCayleySpec(orders_t, tuple(gens))
        try:
            abelian_cayley(probe)
        except GroupSpecError:
            return False
        return True

    for _ in range(50):
        count = int(rng.integers(1, len(orders_t) + 3))
        gens = []
        for _ in range(count):
            s = tuple(int(rng.integers(0, m)) for m in orders_t)
            if any(s) and s not in gens:
                gens.append(s)
        if gens and reaches_all(gens):
            return AbelianCayleySpec(orders_t, tuple(gens))
    logger.debug(f"random generators failed to generate Z{orders_t}; falling back to unit vectors")
    units = tuple(tuple(1 if i == j else 0 for i in range(len(orders_t))) for j in range(len(orders_t)))
    return AbelianCayleySpec(orders_t, units)


def parse_abelian_params(params: Sequence[str]) -> AbelianCayleySpec:
    """'4x4' '1,0' '0,1' -> Z_4 x Z_4 with generators (1,0), (0,1)."""
    if len(params) < 2:
        raise FamilyParameterError("abelian-cayley needs orders and at least one generator")
    try:
        orders = tuple(int(m) for m in params[0].split("x"))
        gens = tuple(tuple(int(a) for a in p.split(",")) for p in params[1:])
    except ValueError:
        raise FamilyParameterError(f"cannot parse abelian-cayley parameters {list(params)}") from None
    return AbelianCayleySpec(orders, gens)


def _int_family(fn: Callable[..., Graph], arity: int) -> Callable[[Sequence[str]], Graph]:
    def build(params: Sequence[str]) -> Graph:
        if len(params) != arity:
            raise FamilyParameterError(f"{fn.__name__} takes {arity} integer parameter(s), got {list(params)}")
        try:
            args = [int(p) for p in params]
        except ValueError:
            raise FamilyParameterError(f"{fn.__name__} parameters must be integers, got {list(params)}") from None
        return fn(*args)

    return build


FAMILIES: Dict[str, Callable[[Sequence[str]], Graph]] = {
    "hypercube": _int_family(hypercube, 1),
    "complete": _int_family(complete, 1),
    "cycle": _int_family(cycle, 1),
    "path": _int_family(path, 1),
    "slice": _int_family(slice_graph, 2),
    "middle-slice": _int_family(middle_slice_adjacent, 1),
    "dyck": _int_family(dyck, 1),
    "tree": _int_family(tree, 2),
    "sn-special": _int_family(sn_special, 1),
    "sn-transpositions": _int_family(sn_transpositions, 1),
    "abelian-cayley": lambda params: abelian_cayley(parse_abelian_params(params)),
}


def build_family(name: str, params: Sequence[str]) -> Graph:
    if name not in FAMILIES:
        raise FamilyParameterError(f"unknown family {name!r}; choose from {', '.join(sorted(FAMILIES))}")
    return FAMILIES[name](params)
