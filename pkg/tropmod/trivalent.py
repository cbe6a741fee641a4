"""
Connected 3-regular multigraphs of genus g, the maximal cells of M_g^tr.

Vertices are labeled in breadth-first discovery order. A vertex is only
processed once it has been reached, and the fresh neighbours it introduces
get non-increasing edge multiplicities, so every isomorphism class is
reached while most relabelings are never generated. Survivors are deduped
by canonical certificate.
"""

import logging
import random
from typing import Iterator

from .exceptions import GenusError
from .parallel import parallel_map
from .weighted_graphs import WeightedGraph, canonical_certificate, is_valid_type

logger = logging.getLogger(__name__)

MIN_GENUS = 2
MAX_GENUS = 6

TRIVALENT_COUNTS = {2: 2, 3: 5, 4: 17, 5: 71, 6: 388}


def _check_genus(g: int) -> None:
    if not MIN_GENUS <= g <= MAX_GENUS:
        raise GenusError(f'genus {g} outside {MIN_GENUS}..{MAX_GENUS}')


def _assign_old(left: int, capacities: list[int]) -> Iterator[tuple[int, ...]]:
    if not capacities:
        yield ()
        return
    head, tail = capacities[0], capacities[1:]
    for m in range(min(head, left), -1, -1):
        for rest in _assign_old(left - m, tail):
            yield (m,) + rest


def _new_parts(total: int, largest: int, slots: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing parts of `total`, each at most `largest`, at most `slots` of them"""
    if total == 0:
        yield ()
        return
    if slots == 0:
        return
    for part in range(min(total, largest), 0, -1):
        for rest in _new_parts(total - part, part, slots - 1):
            yield (part,) + rest


def _labeled_candidates(n: int) -> Iterator[tuple[tuple[int, int], ...]]:
    def extend(v, remaining, edges, discovered):
        if v == n:
            if discovered == n:
                yield tuple(edges)
            return
        if v >= discovered:
            return
        need = remaining[v]
        for loops in range(need // 2, -1, -1):
            left = need - 2 * loops
            old = list(range(v + 1, discovered))
            for old_mults in _assign_old(left, [remaining[u] for u in old]):
                rest = left - sum(old_mults)
                for new_mults in _new_parts(rest, 3, n - discovered):
                    rem = list(remaining)
                    added = [(v, v)] * loops
                    rem[v] = 0
                    for u, m in zip(old, old_mults):
                        rem[u] -= m
                        added.extend([(v, u)] * m)
                    for offset, m in enumerate(new_mults):
                        u = discovered + offset
                        rem[u] -= m
                        added.extend([(v, u)] * m)
                    yield from extend(v + 1, rem, edges + added, discovered + len(new_mults))

    yield from extend(0, [3] * n, [], 1)


def _certified(graph: WeightedGraph):
    return canonical_certificate(graph), graph


def enumerate_trivalent(g: int, jobs: int = 1) -> list[WeightedGraph]:
    """All connected trivalent genus-g graphs up to isomorphism, sorted by certificate"""
    _check_genus(g)
    n = 2 * g - 2
    candidates = [
        WeightedGraph(n, (0,) * n, edges) for edges in _labeled_candidates(n)
    ]
    logger.debug('genus %d: %d labeled trivalent candidates', g, len(candidates))

    classes = {}
    for cert, graph in parallel_map(_certified, candidates, jobs):
        classes.setdefault(cert, graph)

    graphs = [classes[cert] for cert in sorted(classes)]
    for graph in graphs:
        if not is_valid_type(graph, g):
            raise GenusError(f'generated graph {graph} is not a genus-{g} type')
    logger.info('genus %d: %d trivalent graphs', g, len(graphs))
    return graphs


def random_trivalent(g: int, rng: random.Random) -> WeightedGraph:
    """Uniform random pairing of 3(2g-2) half-edges; may be disconnected"""
    _check_genus(g)
    n = 2 * g - 2
    half_edges = [v for v in range(n) for _ in range(3)]
    rng.shuffle(half_edges)
    edges = tuple(zip(half_edges[0::2], half_edges[1::2]))
    return WeightedGraph(n, (0,) * n, edges)


def sample_trivalent_classes(g: int, seed: int = 0, patience: int = 2000) -> set:
    """
    Certificates of the connected classes hit by random pairings, drawn
    until `patience` samples in a row bring no new class.
    """
    rng = random.Random(seed)
    found = set()
    seen = {}
    idle = 0
    while idle < patience:
        graph = random_trivalent(g, rng)
        idle += 1
        if not graph.is_connected:
            continue
        text = graph.to_text()
        if text not in seen:
            seen[text] = canonical_certificate(graph)
        if seen[text] not in found:
            found.add(seen[text])
            idle = 0
    logger.debug('pairings saturated at %d classes for g=%d', len(found), g)
    return found
