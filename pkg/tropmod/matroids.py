"""
Regular matroids: binary representations, circuits, simplification,
isomorphism and automorphism search, totally unimodular representatives,
zonotopal cones and the realization of matroid isomorphisms in GL_g(Z).

Ground-set subsets are int bitmasks: bit e set means element e is in.
"""

import logging
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Optional, Sequence

import networkx as nx

from . import exact
from .exceptions import MatroidError
from .weighted_graphs import WeightedGraph

logger = logging.getLogger(__name__)

MAX_ISOMORPHISM_SIZE = 12
MAX_TU_ROWS = 8
MAX_TU_COLUMNS = 14

MK4_ROWS = ((1, 0, 0, 1, 1, 0), (0, 1, 0, -1, 0, 1), (0, 0, 1, 0, -1, -1))
U23_ROWS = ((1, 0, 1), (0, 1, -1))

# columns as bitmasks over 3 rows; lines 013 124 235 346 045 156 026
FANO_COLUMNS = (0b001, 0b010, 0b100, 0b011, 0b110, 0b111, 0b101)

Bijection = tuple[int, ...]


def elements_of(mask: int) -> list[int]:
    return [e for e in range(mask.bit_length()) if mask >> e & 1]


def mask_of(elements) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def _map_mask(mask: int, image: Sequence[int]) -> int:
    mapped = 0
    for e in elements_of(mask):
        mapped |= 1 << image[e]
    return mapped


def _popcount(mask: int) -> int:
    return bin(mask).count('1')


class Matroid:
    """A matroid on {0, ..., ground_size - 1} known through its circuits"""

    ground_size: int

    @property
    def circuits(self) -> frozenset[int]:
        raise NotImplementedError

    def rank_of(self, elements: Sequence[int]) -> int:
        raise NotImplementedError

    def restrict(self, elements: Sequence[int]) -> 'Matroid':
        """Restriction to `elements`; element elements[k] becomes k"""
        raise NotImplementedError

    @cached_property
    def rank(self) -> int:
        return self.rank_of(range(self.ground_size))

    def delete(self, elements: Sequence[int]) -> 'Matroid':
        removed = set(elements)
        return self.restrict([e for e in range(self.ground_size) if e not in removed])

    def circuit_lists(self) -> list[list[int]]:
        return sorted((elements_of(c) for c in self.circuits), key=lambda c: (len(c), c))

    @cached_property
    def loops(self) -> list[int]:
        return [e for e in range(self.ground_size) if (1 << e) in self.circuits]

    @cached_property
    def parallel_pairs(self) -> list[tuple[int, int]]:
        return [tuple(elements_of(c)) for c in sorted(self.circuits) if _popcount(c) == 2]

    def is_simple(self) -> bool:
        return not self.loops and not self.parallel_pairs

    @cached_property
    def element_profiles(self) -> tuple[tuple, ...]:
        """Per element: sorted (circuit size, count) over circuits through it"""
        profiles = [Counter() for _ in range(self.ground_size)]
        for circuit in self.circuits:
            size = _popcount(circuit)
            for e in elements_of(circuit):
                profiles[e][size] += 1
        return tuple(tuple(sorted(p.items())) for p in profiles)

    @cached_property
    def invariant_key(self) -> tuple:
        return self.ground_size, self.rank, len(self.circuits), tuple(sorted(self.element_profiles))

    def to_json(self) -> dict:
        return {'n': self.ground_size, 'rank': self.rank, 'circuits': self.circuit_lists()}

    def __repr__(self):
        return f'<{type(self).__name__} n={self.ground_size} rank={self.rank}>'


class CircuitMatroid(Matroid):
    """Matroid given by its circuit bitmasks; used where no binary representation exists"""

    def __init__(self, ground_size: int, circuits):
        self.ground_size = ground_size
        self._circuits = frozenset(c if isinstance(c, int) else mask_of(c) for c in circuits)
        if any(c >> ground_size for c in self._circuits):
            raise MatroidError('circuit outside the ground set')

    @property
    def circuits(self) -> frozenset[int]:
        return self._circuits

    def rank_of(self, elements: Sequence[int]) -> int:
        independent = 0
        for e in elements:
            candidate = independent | (1 << e)
            if not any(c & candidate == c for c in self._circuits):
                independent = candidate
        return _popcount(independent)

    def restrict(self, elements: Sequence[int]) -> 'CircuitMatroid':
        elements = list(elements)
        position = {e: k for k, e in enumerate(elements)}
        inside = mask_of(elements)
        circuits = [
            mask_of(position[e] for e in elements_of(c)) for c in self._circuits if c & inside == c
        ]
        return CircuitMatroid(len(elements), circuits)


class BinaryMatroid(Matroid):
    """Column matroid over GF(2); each column is a bitmask over the rows"""

    def __init__(self, columns: Sequence[int], num_rows: Optional[int] = None):
        self.columns = tuple(int(c) for c in columns)
        self.ground_size = len(self.columns)
        widest = max((c.bit_length() for c in self.columns), default=0)
        self.num_rows = widest if num_rows is None else num_rows
        if widest > self.num_rows:
            raise MatroidError('column wider than the declared row count')

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], num_columns: Optional[int] = None) -> 'BinaryMatroid':
        """Reduce an integer matrix mod 2"""
        n = len(rows[0]) if rows else (num_columns or 0)
        columns = [0] * n
        for i, row in enumerate(rows):
            for j, value in enumerate(row):
                if value % 2:
                    columns[j] |= 1 << i
        return cls(columns, len(rows))

    def _eliminate(self, indices: Sequence[int]):
        """Pivot table of the span of the given columns and the GF(2) kernel basis"""
        pivots: dict[int, tuple[int, int]] = {}
        kernel = []
        for j in indices:
            value, combo = self.columns[j], 1 << j
            while value:
                low = value & -value
                if low not in pivots:
                    pivots[low] = (value, combo)
                    break
                value ^= pivots[low][0]
                combo ^= pivots[low][1]
            else:
                kernel.append(combo)
        return pivots, kernel

    def rank_of(self, elements: Sequence[int]) -> int:
        pivots, _ = self._eliminate(list(elements))
        return len(pivots)

    @cached_property
    def circuits(self) -> frozenset[int]:
        _, basis = self._eliminate(range(self.ground_size))
        # every nonzero combination of the kernel basis
        span = [0]
        for vector in basis:
            span += [v ^ vector for v in span]
        found = []
        for vector in sorted(span[1:], key=lambda v: (_popcount(v), v)):
            if not any(c & vector == c for c in found):
                found.append(vector)
        return frozenset(found)

    def restrict(self, elements: Sequence[int]) -> 'BinaryMatroid':
        return BinaryMatroid([self.columns[e] for e in elements], self.num_rows)

    def rep_rows(self) -> list[str]:
        """Reduced row echelon basis of the row space, one bitstring per row"""
        rows = []
        for i in range(self.num_rows):
            row = 0
            for j, col in enumerate(self.columns):
                if col >> i & 1:
                    row |= 1 << j
            rows.append(row)
        basis = []
        for row in rows:
            for pivot in basis:
                if row & (pivot & -pivot):
                    row ^= pivot
            if row:
                low = row & -row
                basis = [b ^ row if b & low else b for b in basis]
                basis.append(row)
        basis.sort(key=lambda b: (b & -b))
        return [''.join(str(b >> j & 1) for j in range(self.ground_size)) for b in basis]

    def to_json(self) -> dict:
        data = super().to_json()
        data['rep_rows'] = self.rep_rows()
        return data


@dataclass(frozen=True)
class TUMatrix:
    """Integer matrix with entries in {-1, 0, 1}; TU-ness checked by is_totally_unimodular"""
    entries: tuple[tuple[int, ...], ...]
    num_columns: int

    def __post_init__(self):
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        if any(len(row) != self.num_columns for row in entries):
            raise MatroidError('ragged matrix')
        if any(x not in (-1, 0, 1) for row in entries for x in row):
            raise MatroidError('entries must lie in {-1, 0, 1}')
        object.__setattr__(self, 'entries', entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], num_columns: Optional[int] = None) -> 'TUMatrix':
        if num_columns is None:
            num_columns = len(rows[0]) if rows else 0
        return cls(tuple(tuple(row) for row in rows), num_columns)

    @property
    def num_rows(self) -> int:
        return len(self.entries)

    def column(self, index: int) -> tuple[int, ...]:
        return exact.column(self.entries, index)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.num_columns)]

    def select(self, indices: Sequence[int]) -> 'TUMatrix':
        return TUMatrix(tuple(tuple(row[j] for j in indices) for row in self.entries), len(indices))

    def matroid(self) -> BinaryMatroid:
        return BinaryMatroid.from_rows(self.entries, self.num_columns)


@dataclass(frozen=True)
class ZonotopalCone:
    """Open cone spanned by the rank-1 forms v vᵀ of the columns of a TU matrix"""
    rays: tuple[tuple[tuple[int, ...], ...], ...]

    @cached_property
    def dimension(self) -> int:
        return exact.rank([flatten_symmetric(ray) for ray in self.rays])

    def ray_index(self) -> dict:
        return {ray: index for index, ray in enumerate(self.rays)}


def flatten_symmetric(matrix) -> list:
    """Upper triangle, row by row"""
    size = len(matrix)
    return [matrix[i][j] for i in range(size) for j in range(i, size)]


def fano() -> BinaryMatroid:
    return BinaryMatroid(FANO_COLUMNS, 3)


def mk4_matrix() -> TUMatrix:
    return TUMatrix.from_rows(MK4_ROWS)


def u23_matrix() -> TUMatrix:
    return TUMatrix.from_rows(U23_ROWS)


def mk4() -> BinaryMatroid:
    return mk4_matrix().matroid()


def uniform(d: int, n: int) -> CircuitMatroid:
    if not 0 <= d <= n:
        raise MatroidError(f'uniform matroid needs 0 <= d <= n, got d={d}, n={n}')
    return CircuitMatroid(n, [mask_of(c) for c in combinations(range(n), d + 1)])


def is_totally_unimodular(rows: Sequence[Sequence[int]]) -> bool:
    """Every square minor in {-1, 0, 1}, by enumeration with early exit"""
    rows = [list(row) for row in rows]
    if not rows or not rows[0]:
        return True
    m, n = len(rows), len(rows[0])
    if any(x not in (-1, 0, 1) for row in rows for x in row):
        return False
    if m > MAX_TU_ROWS or n > MAX_TU_COLUMNS:
        raise MatroidError(f'{m}x{n} matrix is beyond minor enumeration; use structural check')
    for size in range(2, min(m, n) + 1):
        for chosen_rows in combinations(range(m), size):
            for chosen_cols in combinations(range(n), size):
                minor = [[rows[i][j] for j in chosen_cols] for i in chosen_rows]
                if size == 2:
                    value = minor[0][0] * minor[1][1] - minor[0][1] * minor[1][0]
                else:
                    value = exact.det(minor)
                if value not in (-1, 0, 1):
                    logger.debug('minor rows=%s cols=%s has determinant %s', chosen_rows, chosen_cols, value)
                    return False
    return True


def _spanning_tree(graph: WeightedGraph) -> nx.Graph:
    tree = nx.Graph()
    tree.add_nodes_from(range(graph.num_vertices))
    for u, v, key in nx.minimum_spanning_edges(
        graph.to_networkx(), algorithm='kruskal', weight='index', keys=True, data=False
    ):
        tree.add_edge(u, v, index=key)
    return tree


def tu_representation_cographic(graph: WeightedGraph) -> TUMatrix:
    """
    Signed fundamental cycles of the Kruskal tree taken in edge-index order.

    Edges point from the lower to the higher vertex. A cycle runs along its
    non-tree edge forward and returns through the tree. Row 0 starts with a
    positive entry; every later row has non-positive overlap with the row
    before it, ties broken by a positive first entry.
    """
    if not graph.is_connected:
        raise MatroidError('cographic matroid needs a connected graph')
    tree = _spanning_tree(graph)
    tree_edges = {data['index'] for _, _, data in tree.edges(data=True)}
    rows = []
    for index, (u, v) in enumerate(graph.edges):
        if index in tree_edges:
            continue
        row = [0] * graph.num_edges
        row[index] = 1
        path = nx.shortest_path(tree, v, u)
        for x, y in zip(path, path[1:]):
            row[tree.edges[x, y]['index']] = 1 if x < y else -1
        rows.append(row)

    for k, row in enumerate(rows):
        if k == 0:
            overlap = 0
        else:
            overlap = sum(a * b for a, b in zip(row, rows[k - 1]))
        first = next((x for x in row if x), 0)
        if overlap > 0 or (overlap == 0 and first < 0):
            rows[k] = [-x for x in row]
    return TUMatrix.from_rows(rows, graph.num_edges)


def cographic_matroid(graph: WeightedGraph) -> BinaryMatroid:
    """Column matroid of the cycle space; its circuits are the bonds of the graph"""
    return tu_representation_cographic(graph).matroid()


def simplify(matroid: Matroid) -> tuple[Matroid, tuple[Optional[int], ...]]:
    """Drop loops and keep the lowest element of each parallel class"""
    loops = set(matroid.loops)
    # the least element of a parallel class is parallel to every other member
    representative = {}
    for a, b in matroid.parallel_pairs:
        representative[b] = min(representative.get(b, b), a)
    kept = [e for e in range(matroid.ground_size) if e not in loops and e not in representative]
    position = {e: k for k, e in enumerate(kept)}
    mapping = tuple(
        None if e in loops else position[representative.get(e, e)] for e in range(matroid.ground_size)
    )
    return matroid.restrict(kept), mapping


def _matching_search(source: Matroid, target: Matroid, first_only: bool) -> list[Bijection]:
    n = source.ground_size
    if max(n, target.ground_size) > MAX_ISOMORPHISM_SIZE:
        raise MatroidError(f'isomorphism search limited to {MAX_ISOMORPHISM_SIZE} elements')
    if source.invariant_key != target.invariant_key:
        return []

    source_profiles, target_profiles = source.element_profiles, target.element_profiles
    closing = [[] for _ in range(n)]
    for circuit in source.circuits:
        closing[circuit.bit_length() - 1].append(circuit)
    target_circuits = target.circuits

    image = [0] * n
    found: list[Bijection] = []

    def extend(i: int, used: int) -> bool:
        if i == n:
            found.append(tuple(image))
            return first_only
        for j in range(n):
            if used >> j & 1 or target_profiles[j] != source_profiles[i]:
                continue
            image[i] = j
            if all(_map_mask(c, image) in target_circuits for c in closing[i]):
                if extend(i + 1, used | 1 << j):
                    return True
        return False

    extend(0, 0)
    return found


def is_isomorphic_matroid(source: Matroid, target: Matroid) -> Optional[Bijection]:
    """Lexicographically least circuit-preserving bijection, or None"""
    found = _matching_search(source, target, first_only=True)
    return found[0] if found else None


def automorphisms(matroid: Matroid) -> list[Bijection]:
    return _matching_search(matroid, matroid, first_only=False)


def automorphism_group_order(matroid: Matroid) -> int:
    return len(automorphisms(matroid))


def zonotopal_cone(matrix: TUMatrix) -> ZonotopalCone:
    rays = []
    for column in matrix.columns():
        ray = exact.outer(column)
        if ray not in rays:
            rays.append(ray)
    return ZonotopalCone(tuple(rays))


def _greedy_basis(rows, num_columns: int) -> list[int]:
    basis = []
    for j in range(num_columns):
        trial = [[row[k] for k in basis + [j]] for row in rows]
        if exact.rank(trial) > len(basis):
            basis.append(j)
    return basis


def _standard_form(rows, basis: Sequence[int]):
    """Unimodular U with U·A = [A'; 0], where A' has the identity in the basis columns"""
    g = len(rows)
    r = len(basis)
    if r == 0:
        return exact.identity(g), []
    restricted = [[row[j] for j in basis] for row in rows]
    chosen = []
    for i in range(g):
        if exact.rank([restricted[k] for k in chosen + [i]]) > len(chosen):
            chosen.append(i)
            if len(chosen) == r:
                break
    order = chosen + [i for i in range(g) if i not in chosen]
    permutation = [[int(order[k] == i) for i in range(g)] for k in range(g)]
    try:
        top_inverse = exact.integer_inverse([restricted[i] for i in chosen])
    except ValueError:
        raise MatroidError('basis minor is not unimodular; matrix is not totally unimodular') from None
    rest = [restricted[i] for i in order[r:]]
    lower_left = [[-x for x in row] for row in exact.matmul(rest, top_inverse)] if rest else []
    block = [top_inverse[k] + [0] * (g - r) for k in range(r)]
    block += [lower_left[k] + [int(k == m) for m in range(g - r)] for k in range(g - r)]
    transform = exact.matmul(block, permutation)
    reduced = exact.matmul(transform, rows)
    if any(x for row in reduced[r:] for x in row):
        raise MatroidError('rows outside the span of the basis minor')
    return transform, reduced[:r]


def _match_signs(left, right, r: int, n: int):
    """Row signs d and column signs s with right[i][j] == d[i] * left[i][j] * s[j]"""
    d: list[Optional[int]] = [None] * r
    s: list[Optional[int]] = [None] * n
    for root in range(r):
        if d[root] is not None:
            continue
        d[root] = 1
        queue = deque([('row', root)])
        while queue:
            kind, index = queue.popleft()
            if kind == 'row':
                for j in range(n):
                    if left[index][j] and s[j] is None:
                        s[j] = right[index][j] * d[index] * left[index][j]
                        queue.append(('column', j))
            else:
                for i in range(r):
                    if left[i][index] and d[i] is None:
                        d[i] = right[i][index] * left[i][index] * s[index]
                        queue.append(('row', i))
    s = [1 if sign is None else sign for sign in s]
    for i in range(r):
        for j in range(n):
            if right[i][j] != d[i] * left[i][j] * s[j]:
                raise MatroidError('not an isomorphism: sign pattern cannot be matched')
    return d, s


def realize_matroid_iso(a: TUMatrix, b: TUMatrix, bijection: Sequence[int]) -> list[list[int]]:
    """X in GL_g(Z) with X·a_i = ±b_{bijection[i]} for every column i"""
    bijection = tuple(bijection)
    n = a.num_columns
    if b.num_columns != n or sorted(bijection) != list(range(n)):
        raise MatroidError('not an isomorphism: bijection does not match the ground sets')
    if a.num_rows != b.num_rows:
        raise MatroidError(f'rank mismatch: {a.num_rows} rows against {b.num_rows}')

    source, target = a.matroid(), b.matroid()
    mapped = {_map_mask(c, bijection) for c in source.circuits}
    if mapped != set(target.circuits):
        raise MatroidError('not an isomorphism: circuits are not preserved')

    g = a.num_rows
    permuted = [[row[bijection[i]] for i in range(n)] for row in b.entries]
    basis = _greedy_basis(a.entries, n)
    if len(_greedy_basis(permuted, n)) != len(basis):
        raise MatroidError('rank mismatch between the two representations')

    transform_a, reduced_a = _standard_form(a.entries, basis)
    transform_b, reduced_b = _standard_form(permuted, basis)
    r = len(basis)
    row_signs, _ = _match_signs(reduced_a, reduced_b, r, n)
    signs = [[0] * g for _ in range(g)]
    for k in range(g):
        signs[k][k] = row_signs[k] if k < r else 1

    x = exact.matmul(exact.matmul(exact.integer_inverse(transform_b), signs), transform_a)
    check_realization(x, a, b, bijection)
    return x


def check_realization(x, a: TUMatrix, b: TUMatrix, bijection: Bijection) -> None:
    if abs(exact.det(x)) != 1:
        raise MatroidError('realizing matrix is not unimodular')
    for i, column in enumerate(a.columns()):
        image = exact.mat_vec(x, column)
        expected = b.column(bijection[i])
        if image != expected and image != tuple(-v for v in expected):
            raise MatroidError(f'realizing matrix sends column {i} to {image}, expected ±{expected}')


def ray_permutation(x, matrix: TUMatrix, cone: Optional[ZonotopalCone] = None) -> Optional[Bijection]:
    """Permutation of the cone rays induced by Q -> X Q Xᵀ, or None if X does not stabilize them"""
    cone = cone or zonotopal_cone(matrix)
    index = cone.ray_index()
    permutation = []
    for column in matrix.columns():
        image = index.get(exact.outer(exact.mat_vec(x, column)))
        if image is None:
            return None
        permutation.append(image)
    return tuple(permutation)


def realized_ray_permutations(matrix: TUMatrix) -> set[Bijection]:
    """Ray permutations of realizations of every matroid automorphism; matrix must be simple"""
    cone = zonotopal_cone(matrix)
    realized = set()
    for automorphism in automorphisms(matrix.matroid()):
        x = realize_matroid_iso(matrix, matrix, automorphism)
        realized.add(ray_permutation(x, matrix, cone))
    return realized


def stabilizer_ray_permutations(matrix: TUMatrix, bound: int = 1) -> set[Bijection]:
    """
    Ray permutations of all X in GL_g(Z) with entries in [-bound, bound]
    stabilizing the ray set. With an identity block among the columns,
    bound 1 already reaches every stabilizing X.
    """
    g = matrix.num_rows
    cone = zonotopal_cone(matrix)
    signed = {column for column in matrix.columns()} | {tuple(-v for v in c) for c in matrix.columns()}
    found = set()
    for entries in product(range(-bound, bound + 1), repeat=g * g):
        x = [list(entries[k * g:(k + 1) * g]) for k in range(g)]
        if any(exact.mat_vec(x, column) not in signed for column in matrix.columns()):
            continue
        if abs(exact.det(x)) != 1:
            continue
        permutation = ray_permutation(x, matrix, cone)
        if permutation is not None:
            found.add(permutation)
    return found
