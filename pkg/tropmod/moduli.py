"""
The cell poset P_g of M_g^tr: stable weighted graphs of genus g ordered by
edge contraction, built down from the trivalent cells.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .exceptions import GenusError
from .parallel import parallel_map
from .posets import GradedPoset, f_vector, maximal_cells
from .trivalent import enumerate_trivalent
from .weighted_graphs import (
    CanonicalCert,
    WeightedGraph,
    automorphism_edge_group_order,
    canonical_certificate,
    certified_form,
    contract_edge,
)

logger = logging.getLogger(__name__)

MIN_GENUS = 2
MAX_GENUS = 5

__all__ = ['Cell', 'CellPoset', 'build_moduli_poset', 'f_vector', 'maximal_cells']


@dataclass(frozen=True)
class Cell:
    id: int
    rank: int
    graph: WeightedGraph
    cert: CanonicalCert

    def label(self) -> str:
        return self.graph.to_text()

    def to_json(self) -> dict:
        return {
            'id': self.id,
            'rank': self.rank,
            'graph': self.graph.to_text(),
            'aut': automorphism_edge_group_order(self.graph),
        }


@dataclass
class CellPoset(GradedPoset):
    kind = 'moduli'

    @cached_property
    def by_cert(self) -> dict[CanonicalCert, Cell]:
        return {cell.cert: cell for cell in self.cells}

    def cell_of(self, graph: WeightedGraph) -> Cell:
        return self.by_cert[canonical_certificate(graph)]


def _contractions(graph: WeightedGraph):
    found = []
    for index in range(graph.num_edges):
        found.append(certified_form(contract_edge(graph, index)))
    return found


def build_moduli_poset(
    g: int, jobs: int = 1, maximal: Optional[Sequence[WeightedGraph]] = None
) -> CellPoset:
    """
    Close the maximal cells under 1-edge contraction, one rank at a time
    from the top, deduping cells by certificate. Every cell stores the
    canonical form of its class, so the result does not depend on the
    order or labelling of `maximal`.
    """
    if not MIN_GENUS <= g <= MAX_GENUS:
        raise GenusError(f'genus {g} outside {MIN_GENUS}..{MAX_GENUS}')
    if maximal is None:
        maximal = enumerate_trivalent(g, jobs=jobs)

    table: dict[CanonicalCert, WeightedGraph] = {}
    for graph in maximal:
        cert, form = certified_form(graph)
        table.setdefault(cert, form)
    covers: set[tuple[CanonicalCert, CanonicalCert]] = set()

    top_rank = 3 * g - 3
    level = sorted(table)
    for rank in range(top_rank, 0, -1):
        graphs = [table[cert] for cert in level]
        next_level = set()
        for upper, contractions in zip(level, parallel_map(_contractions, graphs, jobs)):
            for cert, contracted in contractions:
                if cert not in table:
                    table[cert] = contracted
                covers.add((cert, upper))
                next_level.add(cert)
        logger.debug('genus %d: %d cells of rank %d', g, len(next_level), rank - 1)
        level = sorted(next_level)

    ordered = sorted(table, key=lambda cert: (table[cert].num_edges, cert))
    ids = {cert: index for index, cert in enumerate(ordered)}
    cells = [Cell(ids[cert], table[cert].num_edges, table[cert], cert) for cert in ordered]
    poset = CellPoset(g, cells, frozenset((ids[lo], ids[hi]) for lo, hi in covers))
    logger.info('genus %d: moduli poset with %d cells, f-vector %s', g, len(cells), f_vector(poset))
    return poset
