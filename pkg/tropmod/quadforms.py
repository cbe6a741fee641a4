"""
Exact quadratic forms: positive semidefiniteness, Delone subdivisions of
definite forms in dimension at most 3, reduction of binary forms into the
fundamental cone of A_2^tr, and membership in zonotopal cones.

No floating point anywhere: entries are Fractions, hull decisions are
integer determinant signs.
"""

import logging
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import factorial, gcd, lcm
from typing import Optional, Sequence

import sympy

from . import exact
from .exceptions import FormError, MatroidError
from .matroids import ZonotopalCone, flatten_symmetric

logger = logging.getLogger(__name__)

MAX_DELONE_DIMENSION = 3
MIN_DELONE_WINDOW = 2


@dataclass(frozen=True)
class QuadForm:
    """Symmetric g×g matrix with exact rational entries"""
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        try:
            entries = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        except (TypeError, ValueError) as exc:
            raise FormError(f'unparsable matrix entry: {exc}') from None
        size = len(entries)
        if any(len(row) != size for row in entries):
            raise FormError('quadratic form must be a square matrix')
        for i in range(size):
            for j in range(i + 1, size):
                if entries[i][j] != entries[j][i]:
                    raise FormError(f'matrix is not symmetric at ({i},{j})')
        object.__setattr__(self, 'entries', entries)

    @classmethod
    def from_rows(cls, rows) -> 'QuadForm':
        return cls(tuple(tuple(row) for row in rows))

    @property
    def g(self) -> int:
        return len(self.entries)

    @cached_property
    def rank(self) -> int:
        return exact.rank(self.entries) if self.g else 0

    def value(self, vector: Sequence) -> Fraction:
        return sum(
            self.entries[i][j] * vector[i] * vector[j] for i in range(self.g) for j in range(self.g)
        )

    def transform(self, x: Sequence[Sequence[int]]) -> 'QuadForm':
        """Xᵀ Q X"""
        return QuadForm.from_rows(exact.matmul(exact.matmul(exact.transpose(x), self.entries), x))

    def is_zero(self) -> bool:
        return not any(x for row in self.entries for x in row)

    def to_rows(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.entries]

    def __str__(self):
        return ';'.join(','.join(str(x) for x in row) for row in self.entries)


def parse_matrix(text: str) -> QuadForm:
    """Rows separated by ';', entries by ','; `p/q` literals allowed"""
    rows = [row for row in text.strip().split(';') if row.strip()]
    if not rows:
        raise FormError('empty matrix')
    try:
        parsed = [[Fraction(entry.strip()) for entry in row.split(',')] for row in rows]
    except (ValueError, ZeroDivisionError):
        raise FormError(f'unparsable matrix {text!r}') from None
    return QuadForm.from_rows(parsed)


def _as_form(form) -> QuadForm:
    return form if isinstance(form, QuadForm) else QuadForm.from_rows(form)


def is_valid_form(form) -> bool:
    """Positive semidefinite, by symmetric pivoting on positive diagonal entries"""
    form = _as_form(form)
    remaining = [list(row) for row in form.entries]
    while remaining:
        diagonal = [remaining[i][i] for i in range(len(remaining))]
        if any(d < 0 for d in diagonal):
            return False
        pivot = next((i for i, d in enumerate(diagonal) if d > 0), None)
        if pivot is None:
            return not any(x for row in remaining for x in row)
        p = remaining[pivot][pivot]
        column = [remaining[i][pivot] for i in range(len(remaining))]
        remaining = [
            [remaining[i][j] - column[i] * column[j] / p for j in range(len(remaining)) if j != pivot]
            for i in range(len(remaining)) if i != pivot
        ]
    return True


def is_positive_definite(form) -> bool:
    form = _as_form(form)
    return is_valid_form(form) and form.rank == form.g


def random_unimodular(rng: random.Random, g: int = 2, steps: int = 8) -> list[list[int]]:
    """Product of random elementary column operations, signs and swaps"""
    x = exact.identity(g)
    for _ in range(steps):
        move = rng.randrange(3)
        i = rng.randrange(g)
        if move == 0 and g > 1:
            j = rng.choice([k for k in range(g) if k != i])
            factor = rng.choice([-2, -1, 1, 2])
            for row in x:
                row[i] += factor * row[j]
        elif move == 1:
            for row in x:
                row[i] = -row[i]
        elif g > 1:
            j = rng.choice([k for k in range(g) if k != i])
            for row in x:
                row[i], row[j] = row[j], row[i]
    return x


@dataclass(frozen=True)
class DelonePeriod:
    """Delone cells up to Z^g translation, each with its lexicographically least vertex at the origin"""
    g: int
    cells: tuple[tuple[tuple[int, ...], ...], ...]

    def vertex_counts(self) -> list[int]:
        return sorted(len(cell) for cell in self.cells)

    def combinatorial_type(self) -> str:
        if self.g == 2:
            if self.vertex_counts() == [3, 3]:
                return 'D1'
            if self.vertex_counts() == [4]:
                return 'D2'
        return f'{len(self.cells)} cells with vertex counts {self.vertex_counts()}'

    def to_json(self) -> dict:
        return {'g': self.g, 'cells': [[list(v) for v in cell] for cell in self.cells]}


def _integral(form: QuadForm) -> list[list[int]]:
    scale = lcm(*(x.denominator for row in form.entries for x in row))
    return [[int(x * scale) for x in row] for row in form.entries]


def _box(g: int, radius: int) -> list[tuple[int, ...]]:
    return list(product(range(-radius, radius + 1), repeat=g))


def _side(base: Sequence[Sequence[int]], origin: Sequence[int], point: Sequence[int]) -> Fraction:
    rows = [[b - o for b, o in zip(vertex, origin)] for vertex in base]
    rows.append([p - o for p, o in zip(point, origin)])
    return exact.det(rows)


def _facets(vertices: list[tuple[int, ...]], g: int) -> list[frozenset]:
    found = set()
    for subset in combinations(vertices, g):
        sides = [_side(subset[1:], subset[0], v) for v in vertices]
        if not any(sides):
            continue
        if all(s >= 0 for s in sides) or all(s <= 0 for s in sides):
            found.add(frozenset(v for v, s in zip(vertices, sides) if s == 0))
    return list(found)


def _affine_dimension(points) -> int:
    points = list(points)
    if len(points) <= 1:
        return 0
    base = points[0]
    return exact.rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


def _pulling_simplices(face: frozenset, dimension: int, facets: list[frozenset]) -> list[tuple]:
    if len(face) == dimension + 1:
        return [tuple(sorted(face))]
    apex = min(face)
    subfaces = set()
    for facet in facets:
        part = face & facet
        if apex not in part and part != face and _affine_dimension(part) == dimension - 1:
            subfaces.add(part)
    simplices = []
    for subface in subfaces:
        for simplex in _pulling_simplices(subface, dimension - 1, facets):
            simplices.append((apex,) + simplex)
    return simplices


def polytope_volume(vertices: Sequence[tuple[int, ...]]) -> Fraction:
    """Euclidean volume of a full-dimensional lattice polytope by a pulling triangulation"""
    vertices = sorted(set(map(tuple, vertices)))
    g = len(vertices[0])
    facets = _facets(vertices, g)
    volume = Fraction(0)
    for simplex in _pulling_simplices(frozenset(vertices), g, facets):
        apex = simplex[0]
        volume += abs(exact.det([[a - b for a, b in zip(v, apex)] for v in simplex[1:]]))
    return volume / factorial(g)


def _normalize_cell(points) -> tuple[tuple[int, ...], ...]:
    least = min(points)
    return tuple(sorted(tuple(p - l for p, l in zip(point, least)) for point in points))


def delone_subdivision(form, window: int = 3) -> DelonePeriod:
    """
    Maximal cells of Del(Q) up to translation.

    Cell vertices come from [-window, window]^g and emptiness is checked on
    [-(window+1), window+1]^g. Any two vertices of a cell differ by a vector
    of least Q-norm in its class mod 2Z^g, which bounds the candidates. The
    translation classes found must have volumes summing to 1.
    """
    form = _as_form(form)
    g = form.g
    if not 1 <= g <= MAX_DELONE_DIMENSION:
        raise FormError(f'Delone subdivisions are computed for 1 <= g <= {MAX_DELONE_DIMENSION}, got {g}')
    if window < MIN_DELONE_WINDOW:
        raise FormError(f'window must be at least {MIN_DELONE_WINDOW}')
    if not is_valid_form(form):
        raise FormError('not positive semidefinite')
    if form.rank < g:
        raise FormError('definite only; reduce along nullspace first')

    matrix = _integral(form)

    def norm(x):
        return sum(matrix[i][j] * x[i] * x[j] for i in range(g) for j in range(g))

    def parity(x):
        return tuple(v % 2 for v in x)

    points = [p for p in _box(g, window) if any(p)]
    coset_minimum = {}
    for point in points:
        key = parity(point)
        if any(key):
            coset_minimum[key] = min(coset_minimum.get(key, norm(point)), norm(point))

    def shortest_in_coset(v):
        key = parity(v)
        return any(key) and norm(v) <= coset_minimum.get(key, norm(v))

    candidates = [p for p in points if shortest_in_coset(p)]
    validation = sorted(_box(g, window + 1), key=norm)
    norms = {x: norm(x) for x in validation}
    logger.debug('Delone search for %s: %d candidate vertices', form, len(candidates))

    cells = set()
    for simplex in combinations(candidates, g):
        if not all(shortest_in_coset(tuple(a - b for a, b in zip(p, q))) for p, q in combinations(simplex, 2)):
            continue
        if exact.det(simplex) == 0:
            continue
        # empty sphere through the origin: norm(x) - 2 x·y >= 0 for every lattice point x
        y = exact.solve_rational(simplex, [Fraction(norm(p), 2) for p in simplex])
        denominator = lcm(*(value.denominator for value in y))
        numerators = [int(value * denominator) for value in y]
        powers = {}
        for x in validation:
            power = norms[x] * denominator - 2 * sum(a * b for a, b in zip(x, numerators))
            if power < 0:
                break
            powers[x] = power
        else:
            cells.add(_normalize_cell([x for x, power in powers.items() if power == 0]))

    total = sum((polytope_volume(cell) for cell in cells), Fraction(0))
    if total != 1:
        raise FormError(f'cells cover volume {total} of a period; increase window')
    period = DelonePeriod(g, tuple(sorted(cells)))
    logger.info('Delone subdivision of %s: %s', form, period.combinatorial_type())
    return period


class G2Class(str, Enum):
    D1 = 'D1_triangulated'
    D2 = 'D2_square'
    D3 = 'D3_segment'
    D4 = 'D4_point'


@dataclass(frozen=True)
class G2Reduction:
    kind: G2Class
    reduced: QuadForm
    transform: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            'class': self.kind.value,
            'reduced': self.reduced.to_rows(),
            'transform': [list(row) for row in self.transform],
        }


def _selling_reduce(form: QuadForm) -> tuple[list[int], list[int]]:
    """Basis (e1, e2) whose superbase (e1, e2, -e1-e2) is obtuse"""
    e1, e2 = [1, 0], [0, 1]
    matrix = form.entries

    def pairing(u, v):
        return sum(matrix[i][j] * u[i] * v[j] for i in range(2) for j in range(2))

    while True:
        q1, q2, b12 = pairing(e1, e1), pairing(e2, e2), pairing(e1, e2)
        if b12 > 0:
            e2 = [-v for v in e2]
        elif q1 + b12 < 0:
            e2 = [a + b for a, b in zip(e1, e2)]
        elif q2 + b12 < 0:
            e1 = [a + b for a, b in zip(e1, e2)]
        else:
            return e1, e2


def selling_parameters(form) -> tuple[Fraction, Fraction, Fraction]:
    """Sorted Selling parameters of an obtuse superbase of a binary form"""
    form = _as_form(form)
    e1, e2 = _selling_reduce(form)
    superbase = [e1, e2, [-a - b for a, b in zip(e1, e2)]]
    matrix = form.entries
    pairs = [
        -sum(matrix[i][j] * superbase[s][i] * superbase[t][j] for i in range(2) for j in range(2))
        for s, t in ((0, 1), (0, 2), (1, 2))
    ]
    return tuple(sorted(pairs))


def _rank_one_normal_form(form: QuadForm) -> list[list[int]]:
    (a, b), (_, c) = form.entries
    direction = (a, b) if a else (b, c)
    scale = lcm(*(x.denominator for x in direction))
    u = [int(x * scale) for x in direction]
    content = gcd(*u)
    p, q = (v // content for v in u)
    s, r, h = sympy.gcdex(p, q)
    sign = 1 if h > 0 else -1
    return [[sign * int(s), -q], [sign * int(r), p]]


def classify_g2(form) -> G2Reduction:
    form = _as_form(form)
    if form.g != 2:
        raise FormError(f'classification needs a binary form, got g={form.g}')
    if not is_valid_form(form):
        raise FormError('not positive semidefinite')

    if form.rank == 0:
        return G2Reduction(G2Class.D4, form, ((1, 0), (0, 1)))

    if form.rank == 1:
        x = _rank_one_normal_form(form)
        reduced = form.transform(x)
        if reduced.entries[0][1] or reduced.entries[1][1]:
            raise FormError(f'rank-1 reduction of {form} failed')
        return G2Reduction(G2Class.D3, reduced, tuple(map(tuple, x)))

    e1, e2 = _selling_reduce(form)
    superbase = [e1, e2, [-a - b for a, b in zip(e1, e2)]]
    best = None
    for i, j in ((0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)):
        x = [[superbase[i][0], superbase[j][0]], [superbase[i][1], superbase[j][1]]]
        candidate = form.transform(x)
        (a, b), (_, c) = candidate.entries
        if b <= 0 and -2 * b <= a <= c:
            key = (a, b, c)
            if best is None or key < best[0]:
                best = (key, candidate, x)
    _, reduced, x = best
    kind = G2Class.D2 if reduced.entries[0][1] == 0 else G2Class.D1
    return G2Reduction(kind, reduced, tuple(map(tuple, x)))


def g2_equivalent(first, second) -> bool:
    return classify_g2(first).reduced == classify_g2(second).reduced


def in_fundamental_cone(form) -> bool:
    """b <= 0 and -2b <= a <= c"""
    (a, b), (_, c) = _as_form(form).entries
    return b <= 0 and -2 * b <= a <= c


def cone_membership(form, cone: ZonotopalCone) -> Optional[list[Fraction]]:
    """Nonnegative coefficients expressing Q in the cone's rays, or None"""
    form = _as_form(form)
    if cone.rays and len(cone.rays[0]) != form.g:
        raise FormError(f'form of size {form.g} against a cone of {len(cone.rays[0])}x{len(cone.rays[0])} rays')
    if not cone.rays:
        return [] if form.is_zero() else None
    columns = [flatten_symmetric(ray) for ray in cone.rays]
    if exact.rank(columns) < len(columns):
        raise MatroidError('rays are dependent: not a simplicial cone')
    coefficients = exact.solve_rational(exact.transpose(columns), flatten_symmetric(form.entries))
    if coefficients is None or any(c < 0 for c in coefficients):
        return None
    return coefficients
