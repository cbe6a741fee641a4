"""
Graded cell posets shared by M_g^tr and the Schottky locus: ranks,
f-vectors, maximal cells and the JSON / DOT exports.
"""

import hashlib
import json
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx

logger = logging.getLogger(__name__)


@dataclass
class GradedPoset:
    """Cells carry `id` and `rank`; covers are (lower id, upper id) pairs"""
    genus: int
    cells: list
    covers: frozenset = field(default_factory=frozenset)

    kind = 'poset'

    def __len__(self):
        return len(self.cells)

    @cached_property
    def upper_covers(self) -> dict[int, list[int]]:
        upper = defaultdict(list)
        for lower, higher in sorted(self.covers):
            upper[lower].append(higher)
        return upper

    @cached_property
    def lower_covers(self) -> dict[int, list[int]]:
        lower = defaultdict(list)
        for low, higher in sorted(self.covers):
            lower[higher].append(low)
        return lower

    def cells_of_rank(self, rank: int) -> list:
        return [cell for cell in self.cells if cell.rank == rank]

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        for cell in self.cells:
            graph.add_node(cell.id, rank=cell.rank)
        graph.add_edges_from(self.covers)
        return graph

    def is_graded(self) -> bool:
        ranks = {cell.id: cell.rank for cell in self.cells}
        return all(ranks[lower] + 1 == ranks[higher] for lower, higher in self.covers)

    def to_json(self) -> dict:
        return {
            'genus': self.genus,
            'fvector': f_vector(self),
            'cells': [cell.to_json() for cell in self.cells],
            'covers': [list(pair) for pair in sorted(self.covers)],
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(',', ':'))

    def digest(self) -> str:
        return hashlib.sha256(self.to_json_text().encode('ascii')).hexdigest()

    def to_dot(self) -> str:
        """Hasse diagram, one `rank=same` row per rank, lower ranks at the bottom"""
        lines = [f'digraph {self.kind}_{self.genus} {{', '  rankdir=BT;', '  node [shape=box, fontsize=10];']
        by_rank = defaultdict(list)
        for cell in self.cells:
            by_rank[cell.rank].append(cell)
        for rank in sorted(by_rank):
            lines.append(f'  subgraph rank_{rank} {{')
            lines.append('    rank=same;')
            for cell in by_rank[rank]:
                label = cell.label().replace('"', '\\"')
                lines.append(f'    c{cell.id} [label="{cell.id}: {label}"];')
            lines.append('  }')
        for lower, higher in sorted(self.covers):
            lines.append(f'  c{lower} -> c{higher};')
        lines.append('}')
        return '\n'.join(lines) + '\n'


def f_vector(poset: GradedPoset) -> list[int]:
    counts = Counter(cell.rank for cell in poset.cells)
    if not counts:
        return []
    return [counts.get(rank, 0) for rank in range(max(counts) + 1)]


def maximal_cells(poset: GradedPoset) -> list:
    upper = poset.upper_covers
    return [cell for cell in poset.cells if not upper.get(cell.id)]
