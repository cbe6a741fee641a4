"""
Combinatorial types (G, w) of tropical curves.

A combinatorial type is a connected multigraph, loops and parallel edges
allowed, with a nonnegative integer weight on every vertex. Edges keep a
stable index inside a graph; certificates and isomorphisms ignore it.
"""

import logging
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import factorial
from typing import Sequence, Union

import networkx as nx

from .exceptions import GraphError

logger = logging.getLogger(__name__)

MAX_CERTIFICATE_VERTICES = 16

Edge = tuple[int, int]

_TEXT_PATTERN = re.compile(r'^n=(\d+); w=([0-9,]*); E=(.*)$')
_EDGE_PATTERN = re.compile(r'\((\d+),(\d+)\)')


@dataclass(frozen=True, order=True)
class CanonicalCert:
    """Byte string determined by the isomorphism class of a weighted graph"""
    certificate: bytes

    def __str__(self):
        return self.certificate.decode('ascii')


@dataclass(frozen=True)
class WeightedGraph:
    """Connected multigraph with nonnegative integer vertex weights"""
    num_vertices: int
    weights: tuple[int, ...]
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        n = int(self.num_vertices)
        if n < 1:
            raise GraphError('a combinatorial type needs at least one vertex')
        weights = tuple(int(w) for w in self.weights)
        if len(weights) != n:
            raise GraphError(f'expected {n} vertex weights, got {len(weights)}')
        if any(w < 0 for w in weights):
            raise GraphError('vertex weights must be nonnegative')
        edges = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f'edge ({u},{v}) has an endpoint outside 0..{n - 1}')
            edges.append((min(u, v), max(u, v)))
        object.__setattr__(self, 'num_vertices', n)
        object.__setattr__(self, 'weights', weights)
        object.__setattr__(self, 'edges', tuple(edges))

    def __str__(self):
        return self.to_text()

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    @property
    def betti_number(self) -> int:
        return self.num_edges - self.num_vertices + 1

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        # a loop contributes 2 to its base vertex
        degree = [0] * self.num_vertices
        for u, v in self.edges:
            degree[u] += 1
            degree[v] += 1
        return tuple(degree)

    @cached_property
    def loop_counts(self) -> tuple[int, ...]:
        loops = [0] * self.num_vertices
        for u, v in self.edges:
            if u == v:
                loops[u] += 1
        return tuple(loops)

    @cached_property
    def adjacency(self) -> tuple[dict[int, int], ...]:
        """Non-loop edge multiplicities, one dict per vertex"""
        adjacency = [Counter() for _ in range(self.num_vertices)]
        for u, v in self.edges:
            if u != v:
                adjacency[u][v] += 1
                adjacency[v][u] += 1
        return tuple(dict(a) for a in adjacency)

    @cached_property
    def is_connected(self) -> bool:
        return nx.is_connected(self.to_networkx())

    def degree(self, vertex: int) -> int:
        return self.degrees[vertex]

    def loop_count(self, vertex: int) -> int:
        return self.loop_counts[vertex]

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        for vertex, weight in enumerate(self.weights):
            graph.add_node(vertex, weight=weight)
        for index, (u, v) in enumerate(self.edges):
            graph.add_edge(u, v, key=index, index=index)
        return graph

    def to_text(self) -> str:
        """`n=<k>; w=<w0,...>; E=<(u,v),...>` with edges sorted"""
        weights = ','.join(str(w) for w in self.weights)
        edges = ','.join(f'({u},{v})' for u, v in sorted(self.edges))
        return f'n={self.num_vertices}; w={weights}; E={edges}'

    @classmethod
    def from_text(cls, text: str) -> 'WeightedGraph':
        match = _TEXT_PATTERN.match(text.strip())
        if match is None:
            raise GraphError(f'not a graph encoding: {text!r}')
        n = int(match.group(1))
        weights = tuple(int(w) for w in match.group(2).split(',') if w != '')
        edges = tuple((int(u), int(v)) for u, v in _EDGE_PATTERN.findall(match.group(3)))
        return cls(n, weights, edges)


def theta_graph() -> WeightedGraph:
    return WeightedGraph(2, (0, 0), ((0, 1), (0, 1), (0, 1)))


def dumbbell_graph() -> WeightedGraph:
    """Two loops joined by a bridge; edge order: loop, loop, bridge"""
    return WeightedGraph(2, (0, 0), ((0, 0), (1, 1), (0, 1)))


def bouquet(loops: int, weight: int = 0) -> WeightedGraph:
    return WeightedGraph(1, (weight,), ((0, 0),) * loops)


def banana_graph(parallel: int) -> WeightedGraph:
    return WeightedGraph(2, (0, 0), ((0, 1),) * parallel)


def complete_graph_k4() -> WeightedGraph:
    return WeightedGraph(4, (0, 0, 0, 0), ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))


def figure2_graph() -> WeightedGraph:
    """Genus-3 curve: weight-1 vertex, weight-0 vertex with a loop, two parallel edges"""
    return WeightedGraph(2, (1, 0), ((0, 1), (0, 1), (1, 1)))


def genus(graph: WeightedGraph) -> int:
    if not graph.is_connected:
        raise GraphError('not connected')
    return graph.betti_number + graph.total_weight


def is_valid_type(graph: WeightedGraph, g: int) -> bool:
    if not graph.is_connected:
        return False
    for weight, degree in zip(graph.weights, graph.degrees):
        if weight == 0 and degree < 3:
            return False
    return graph.betti_number + graph.total_weight == g


def _edge_index(graph: WeightedGraph, edge: Union[int, Edge]) -> int:
    if isinstance(edge, int):
        if not 0 <= edge < graph.num_edges:
            raise GraphError(f'edge index {edge} not in graph with {graph.num_edges} edges')
        return edge
    u, v = edge
    pair = (min(u, v), max(u, v))
    try:
        return graph.edges.index(pair)
    except ValueError:
        raise GraphError(f'edge {pair} not in graph') from None


def contract_edge(graph: WeightedGraph, edge: Union[int, Edge]) -> WeightedGraph:
    """Contract one edge, given by index or endpoint pair"""
    index = _edge_index(graph, edge)
    a, b = graph.edges[index]
    rest = graph.edges[:index] + graph.edges[index + 1:]

    if a == b:
        weights = list(graph.weights)
        weights[a] += 1
        return WeightedGraph(graph.num_vertices, tuple(weights), rest)

    # b merges into a; labels above b shift down by one
    def image(vertex):
        if vertex == b:
            vertex = a
        return vertex - 1 if vertex > b else vertex

    weights = list(graph.weights)
    weights[a] += weights[b]
    del weights[b]
    edges = tuple((image(u), image(v)) for u, v in rest)
    return WeightedGraph(graph.num_vertices - 1, tuple(weights), edges)


def relabel(graph: WeightedGraph, permutation: Sequence[int]) -> WeightedGraph:
    """Vertex v becomes permutation[v]; edge indices are kept"""
    if sorted(permutation) != list(range(graph.num_vertices)):
        raise GraphError('relabeling is not a permutation of the vertices')
    weights = [0] * graph.num_vertices
    for vertex, weight in enumerate(graph.weights):
        weights[permutation[vertex]] = weight
    edges = tuple((permutation[u], permutation[v]) for u, v in graph.edges)
    return WeightedGraph(graph.num_vertices, tuple(weights), edges)


def _dense(values: Sequence) -> list[int]:
    palette = {value: rank for rank, value in enumerate(sorted(set(values)))}
    return [palette[value] for value in values]


def _refine(colours: list[int], adjacency) -> list[int]:
    classes = len(set(colours))
    while True:
        signatures = [
            (colours[v], tuple(sorted((colours[u], m) for u, m in adjacency[v].items())))
            for v in range(len(colours))
        ]
        refined = _dense(signatures)
        refined_classes = len(set(refined))
        if refined_classes == classes:
            return refined
        colours, classes = refined, refined_classes


def _individualize(colours: list[int], vertex: int) -> list[int]:
    return _dense([2 * c + (0 if v == vertex else 1) for v, c in enumerate(colours)])


def _encode(graph: WeightedGraph, labeling: list[int]):
    weights = [0] * graph.num_vertices
    for vertex, weight in enumerate(graph.weights):
        weights[labeling[vertex]] = weight
    edges = sorted(
        (min(labeling[u], labeling[v]), max(labeling[u], labeling[v])) for u, v in graph.edges
    )
    return tuple(weights), tuple(edges)


@lru_cache(maxsize=65536)
def _search_tree(graph: WeightedGraph):
    """Leaves of the individualization-refinement tree that realize the least encoding"""
    if graph.num_vertices > MAX_CERTIFICATE_VERTICES:
        raise GraphError(
            f'too large: {graph.num_vertices} vertices, limit {MAX_CERTIFICATE_VERTICES}'
        )
    n = graph.num_vertices
    adjacency = graph.adjacency
    start = _dense([(graph.weights[v], graph.degrees[v], graph.loop_counts[v]) for v in range(n)])

    best, best_leaves = None, []
    stack = [_refine(start, adjacency)]
    while stack:
        colours = stack.pop()
        counts = Counter(colours)
        if len(counts) == n:
            key = _encode(graph, colours)
            if best is None or key < best:
                best, best_leaves = key, [tuple(colours)]
            elif key == best:
                best_leaves.append(tuple(colours))
            continue
        target = min(c for c, size in counts.items() if size > 1)
        for vertex in range(n):
            if colours[vertex] == target:
                stack.append(_refine(_individualize(colours, vertex), adjacency))
    return best, tuple(best_leaves)


def canonical_form(graph: WeightedGraph) -> WeightedGraph:
    (weights, edges), _ = _search_tree(graph)
    return WeightedGraph(graph.num_vertices, weights, edges)


def certified_form(graph: WeightedGraph) -> tuple[CanonicalCert, WeightedGraph]:
    """Certificate and canonical representative from a single search"""
    if not graph.is_connected:
        raise GraphError('not connected')
    form = canonical_form(graph)
    return CanonicalCert(form.to_text().encode('ascii')), form


def canonical_certificate(graph: WeightedGraph) -> CanonicalCert:
    return certified_form(graph)[0]


def vertex_automorphisms(graph: WeightedGraph) -> list[tuple[int, ...]]:
    """Weight- and multiplicity-preserving vertex permutations"""
    _, leaves = _search_tree(graph)
    first = leaves[0]
    position_to_vertex = {position: vertex for vertex, position in enumerate(first)}
    return [tuple(position_to_vertex[leaf[v]] for v in range(graph.num_vertices)) for leaf in leaves]


def automorphism_edge_group_order(graph: WeightedGraph) -> int:
    """Order of Aut(G, w) as a group of edge permutations"""
    multiplicities = Counter(graph.edges)
    pairs = sorted(multiplicities)
    pair_maps = set()
    for automorphism in vertex_automorphisms(graph):
        image = []
        for u, v in pairs:
            x, y = automorphism[u], automorphism[v]
            image.append((min(x, y), max(x, y)))
        pair_maps.add(tuple(image))
    order = len(pair_maps)
    for multiplicity in multiplicities.values():
        order *= factorial(multiplicity)
    return order


def bonds(graph: WeightedGraph) -> frozenset[int]:
    """Minimal edge cuts as bitmasks over edge indices"""
    if not graph.is_connected:
        raise GraphError('not connected')
    n = graph.num_vertices
    simple = nx.Graph()
    simple.add_nodes_from(range(n))
    simple.add_edges_from((u, v) for u, v in graph.edges if u != v)
    found = set()
    # vertex 0 always on the first side
    for mask in range(1 << (n - 1)):
        side = {0} | {v for v in range(1, n) if mask >> (v - 1) & 1}
        if len(side) == n:
            continue
        other = set(range(n)) - side
        if not (nx.is_connected(simple.subgraph(side)) and nx.is_connected(simple.subgraph(other))):
            continue
        cut = 0
        for index, (u, v) in enumerate(graph.edges):
            if (u in side) != (v in side):
                cut |= 1 << index
        found.add(cut)
    return frozenset(found)
