"""
The tropical Torelli map, on metric curves (Jacobian forms) and on cells
(simple cographic matroids), and the Schottky poset A_g^cogr it sweeps out.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import exact
from .exceptions import GenusError, MatroidError, TropmodError
from .matroids import (
    BinaryMatroid,
    TUMatrix,
    ZonotopalCone,
    is_isomorphic_matroid,
    simplify,
    tu_representation_cographic,
    zonotopal_cone,
)
from .moduli import CellPoset, build_moduli_poset
from .parallel import parallel_map
from .posets import GradedPoset, f_vector, maximal_cells
from .quadforms import QuadForm, cone_membership
from .weighted_graphs import WeightedGraph, genus, is_valid_type

logger = logging.getLogger(__name__)

MIN_GENUS = 2
MAX_GENUS = 5

# second Voronoi decomposition counts for A_g^tr, quoted from the literature
REFERENCE_AG_MAXIMAL = {2: 1, 3: 1, 4: 3, 5: 222}
REFERENCE_AG_TOTAL = {2: 4, 3: 9, 4: 61, 5: 179433}


@dataclass(frozen=True)
class MetricCurve:
    graph: WeightedGraph
    lengths: tuple[Fraction, ...]

    def __post_init__(self):
        lengths = tuple(Fraction(length) for length in self.lengths)
        if len(lengths) != self.graph.num_edges:
            raise TropmodError(f'{len(lengths)} lengths for {self.graph.num_edges} edges')
        if any(length <= 0 for length in lengths):
            raise TropmodError('edge lengths must be positive')
        if not is_valid_type(self.graph, genus(self.graph)):
            raise TropmodError(f'{self.graph} is not a stable combinatorial type')
        object.__setattr__(self, 'lengths', lengths)

    @property
    def genus(self) -> int:
        return genus(self.graph)

    def scaled(self, factor) -> 'MetricCurve':
        return MetricCurve(self.graph, tuple(length * Fraction(factor) for length in self.lengths))

    @classmethod
    def from_json(cls, data: dict) -> 'MetricCurve':
        try:
            graph = WeightedGraph.from_text(data['graph'])
            lengths = tuple(Fraction(str(length)) for length in data['lengths'])
        except (KeyError, TypeError, ValueError) as exc:
            raise TropmodError(f'malformed curve description: {exc}') from None
        return cls(graph, lengths)

    def to_json(self) -> dict:
        return {'graph': self.graph.to_text(), 'lengths': [str(length) for length in self.lengths]}


def tropical_jacobian(curve: MetricCurve) -> QuadForm:
    """B·diag(l)·Bᵀ for the signed cycle basis B, padded by zeros to the genus"""
    b = tu_representation_cographic(curve.graph).entries
    size = curve.genus
    block = exact.matmul([[x * l for x, l in zip(row, curve.lengths)] for row in b], exact.transpose(b))
    rows = [[Fraction(0)] * size for _ in range(size)]
    for i, row in enumerate(block):
        for j, value in enumerate(row):
            rows[i][j] = Fraction(value)
    return QuadForm.from_rows(rows)


def torelli_cell_matrix(graph: WeightedGraph) -> tuple[TUMatrix, tuple[Optional[int], ...]]:
    """TU representative of the simplified cographic matroid and the edge-to-element map"""
    full = tu_representation_cographic(graph)
    _, mapping = simplify(full.matroid())
    kept = [e for e in range(graph.num_edges) if mapping[e] is not None and mapping.index(mapping[e]) == e]
    return full.select(kept), mapping


def torelli_cell_image(graph: WeightedGraph) -> BinaryMatroid:
    matrix, _ = torelli_cell_matrix(graph)
    return matrix.matroid()


def jacobian_in_cographic_cone(curve: MetricCurve) -> dict[tuple[int, ...], Fraction]:
    """
    Coefficients of the Jacobian in the simplified cographic cone, keyed by
    the edges of each parallel class. Bridges have zero columns and drop out.
    """
    matrix, mapping = torelli_cell_matrix(curve.graph)
    classes = defaultdict(list)
    for edge, element in enumerate(mapping):
        if element is not None:
            classes[element].append(edge)
    if not classes:
        return {}
    b = tu_representation_cographic(curve.graph).entries
    block = exact.matmul([[x * l for x, l in zip(row, curve.lengths)] for row in b], exact.transpose(b))
    coefficients = cone_membership(QuadForm.from_rows(block), zonotopal_cone(matrix))
    if coefficients is None:
        raise MatroidError('Jacobian lies outside its cographic cone')
    return {tuple(classes[k]): coefficients[k] for k in sorted(classes)}


@dataclass(frozen=True)
class SchottkyCell:
    id: int
    rank: int
    matroid: BinaryMatroid
    matrix: TUMatrix
    source: WeightedGraph

    def cone(self) -> ZonotopalCone:
        return zonotopal_cone(self.matrix)

    def label(self) -> str:
        return f'n={self.matroid.ground_size} r={self.matroid.rank} from {self.source.to_text()}'

    def to_json(self) -> dict:
        return {
            'id': self.id,
            'rank': self.rank,
            'matroid': self.matroid.to_json(),
            'graph': self.source.to_text(),
        }


@dataclass
class SchottkyPoset(GradedPoset):
    cell_map: dict[int, int] = field(default_factory=dict)

    kind = 'schottky'

    def class_of(self, matroid) -> Optional[SchottkyCell]:
        for cell in self.cells:
            if cell.matroid.invariant_key == matroid.invariant_key and is_isomorphic_matroid(matroid, cell.matroid) is not None:
                return cell
        return None


def _cell_image(graph: WeightedGraph):
    matrix, _ = torelli_cell_matrix(graph)
    return matrix


def build_schottky_poset(g: int, jobs: int = 1, moduli: Optional[CellPoset] = None) -> SchottkyPoset:
    """
    Isomorphism classes of simplified cographic matroids over every cell of
    P_g; N is covered by M when N is a one-element deletion of M.
    """
    if not MIN_GENUS <= g <= MAX_GENUS:
        raise GenusError(f'genus {g} outside {MIN_GENUS}..{MAX_GENUS}')
    moduli = moduli or build_moduli_poset(g, jobs=jobs)
    matrices = parallel_map(_cell_image, [cell.graph for cell in moduli.cells], jobs)

    buckets: dict[tuple, list[int]] = defaultdict(list)
    classes: list[tuple[TUMatrix, BinaryMatroid, WeightedGraph]] = []
    harvest: dict[int, int] = {}
    for cell, matrix in zip(moduli.cells, matrices):
        matroid = matrix.matroid()
        key = matroid.invariant_key
        found = next(
            (k for k in buckets[key] if is_isomorphic_matroid(matroid, classes[k][1]) is not None), None
        )
        if found is None:
            found = len(classes)
            classes.append((matrix, matroid, cell.graph))
            buckets[key].append(found)
        harvest[cell.id] = found

    order = sorted(range(len(classes)), key=lambda k: (classes[k][1].ground_size, k))
    new_id = {old: new for new, old in enumerate(order)}
    cells = [
        SchottkyCell(new_id[k], classes[k][1].ground_size, classes[k][1], classes[k][0], classes[k][2])
        for k in order
    ]

    covers = set()
    for cell in cells:
        for element in range(cell.matroid.ground_size):
            deletion = cell.matroid.delete([element])
            lower = next(
                (c.id for c in cells if c.matroid.invariant_key == deletion.invariant_key
                 and is_isomorphic_matroid(deletion, c.matroid) is not None),
                None,
            )
            if lower is None:
                raise MatroidError(f'deletion of element {element} from cell {cell.id} has no class')
            covers.add((lower, cell.id))

    poset = SchottkyPoset(
        g, cells, frozenset(covers), cell_map={cid: new_id[k] for cid, k in harvest.items()}
    )
    logger.info('genus %d: Schottky poset with %d cells, f-vector %s', g, len(cells), f_vector(poset))
    return poset


def torelli_cell_map(moduli: CellPoset, schottky: Optional[SchottkyPoset] = None) -> dict[int, int]:
    """Moduli cell id -> Schottky cell id of its simplified cographic matroid"""
    schottky = schottky or build_schottky_poset(moduli.genus, moduli=moduli)
    if schottky.cell_map:
        return dict(schottky.cell_map)
    mapping = {}
    for cell in moduli.cells:
        target = schottky.class_of(torelli_cell_image(cell.graph))
        if target is None:
            raise MatroidError(f'moduli cell {cell.id} has no Schottky class')
        mapping[cell.id] = target.id
    return mapping


def genus3_schottky_witnesses() -> list[WeightedGraph]:
    """One genus-3 curve per cell of A_3^cogr, from a point up to K_4"""
    return [
        WeightedGraph(1, (3,), ()),
        WeightedGraph(1, (2,), ((0, 0),)),
        WeightedGraph(1, (1,), ((0, 0), (0, 0))),
        WeightedGraph(1, (0,), ((0, 0), (0, 0), (0, 0))),
        WeightedGraph(2, (1, 0), ((0, 1), (0, 1), (0, 1))),
        WeightedGraph(2, (0, 0), ((0, 1), (0, 1), (0, 1), (1, 1))),
        WeightedGraph(2, (0, 0), ((0, 1), (0, 1), (0, 1), (0, 1))),
        WeightedGraph(3, (0, 0, 0), ((0, 1), (0, 2), (0, 2), (1, 2), (1, 2))),
        WeightedGraph(4, (0, 0, 0, 0), ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))),
    ]


@dataclass(frozen=True)
class TableRow:
    genus: int
    moduli_maximal: int
    moduli_total: int
    schottky_maximal: int
    schottky_total: int

    @property
    def reference_maximal(self) -> int:
        return REFERENCE_AG_MAXIMAL[self.genus]

    @property
    def reference_total(self) -> int:
        return REFERENCE_AG_TOTAL[self.genus]


@dataclass(frozen=True)
class TablesReport:
    rows: tuple[TableRow, ...]

    def format(self) -> str:
        lines = []
        for title, attributes in (
            ('Number of maximal cells', ('moduli_maximal', 'schottky_maximal', 'reference_maximal')),
            ('Total number of cells', ('moduli_total', 'schottky_total', 'reference_total')),
        ):
            lines.append(title)
            lines.append(f'{"g":>3} {"M_g^tr":>10} {"A_g^cogr":>10} {"A_g^tr":>10}')
            for row in self.rows:
                values = [getattr(row, attribute) for attribute in attributes]
                lines.append(f'{row.genus:>3} ' + ' '.join(f'{v:>10}' for v in values))
            lines.append('A_g^tr column: reference, not computed')
            lines.append('')
        return '\n'.join(lines)


def reproduce_tables(genus_max: int = MAX_GENUS, jobs: int = 1, posets: Optional[dict] = None) -> TablesReport:
    """
    Maximal and total cell counts of M_g^tr and A_g^cogr for g = 2..genus_max.
    `posets` may supply prebuilt {g: (moduli, schottky)} pairs.
    """
    if not MIN_GENUS <= genus_max <= MAX_GENUS:
        raise GenusError(f'genus {genus_max} outside {MIN_GENUS}..{MAX_GENUS}')
    posets = posets or {}
    rows = []
    for g in range(MIN_GENUS, genus_max + 1):
        moduli, schottky = posets.get(g, (None, None))
        moduli = moduli or build_moduli_poset(g, jobs=jobs)
        schottky = schottky or build_schottky_poset(g, jobs=jobs, moduli=moduli)
        row = TableRow(
            g, len(maximal_cells(moduli)), len(moduli), len(maximal_cells(schottky)), len(schottky)
        )
        if g <= 3 and (row.schottky_maximal, row.schottky_total) != (row.reference_maximal, row.reference_total):
            raise TropmodError(f'A_{g}^cogr counts differ from A_{g}^tr')
        rows.append(row)
    return TablesReport(tuple(rows))
