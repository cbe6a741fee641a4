"""
Covers of A_2^tr and A_3^tr by the complete fans FP^3 and FP^6.

A source matroid on n+1 elements (U_{2,4} or the Fano matroid) whose every
one-element deletion is isomorphic to the target matroid glues n+1 copies
of the target's zonotopal cone. Each overlap of two maximal cones gets an
explicit GL_g(Z) witness.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

import sympy

from .exceptions import CoverError, MatroidError
from .matroids import (
    Matroid,
    TUMatrix,
    check_realization,
    elements_of,
    fano,
    is_isomorphic_matroid,
    mask_of,
    mk4_matrix,
    realize_matroid_iso,
    u23_matrix,
    uniform,
)
from .parallel import parallel_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FPFan:
    """Rays e_1..e_n and -(e_1+...+e_n); every set of at most n rays spans a cone"""
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise CoverError('FP^n needs n >= 1')

    @property
    def rays(self) -> tuple[tuple[int, ...], ...]:
        units = [tuple(int(i == k) for i in range(self.n)) for k in range(self.n)]
        return tuple(units) + ((-1,) * self.n,)

    def cones(self) -> list[int]:
        """All cones as bitmasks over the n+1 rays, smallest first"""
        return [
            mask_of(subset)
            for size in range(self.n + 1)
            for subset in combinations(range(self.n + 1), size)
        ]

    def maximal_cones(self) -> list[int]:
        everything = (1 << (self.n + 1)) - 1
        return [everything & ~(1 << i) for i in range(self.n + 1)]


def build_fp(n: int) -> FPFan:
    return FPFan(n)


@dataclass(frozen=True)
class Overlap:
    i: int
    j: int
    subset: tuple[int, ...]
    witness: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {'i': self.i, 'j': self.j, 'S': list(self.subset), 'X': [list(row) for row in self.witness]}


@dataclass
class CoverMap:
    fan: FPFan
    source: Matroid
    target_matrix: TUMatrix
    target_name: str
    assignments: dict[int, dict[int, int]] = field(default_factory=dict)
    overlaps: list[Overlap] = field(default_factory=list)
    classes: list[tuple[int, ...]] = field(default_factory=list)
    cell_images: dict[int, int] = field(default_factory=dict)

    def summary(self) -> str:
        return (
            f'{len(self.overlaps)} overlaps verified; '
            f'{len(self.assignments)} deletions ≅ {self.target_name}; OK'
        )

    def to_json(self) -> dict:
        return {
            'n': self.fan.n,
            'target': self.target_name,
            'indexing': 'elements are 0-based; element k is k+1 in the printed circuit list',
            'source_circuits': self.source.circuit_lists(),
            'target_matrix': [list(row) for row in self.target_matrix.entries],
            'assignments': {
                str(i): {str(e): t for e, t in sorted(pi.items())} for i, pi in sorted(self.assignments.items())
            },
            'overlaps': [overlap.to_json() for overlap in self.overlaps],
            'classes': [list(columns) for columns in self.classes],
            'cell_images': [
                {'S': elements_of(cone), 'class': image} for cone, image in sorted(self.cell_images.items())
            ],
        }


def _witness(task) -> Optional[list[list[int]]]:
    matrix, left, right = task
    try:
        return realize_matroid_iso(matrix.select(left), matrix.select(right), tuple(range(len(left))))
    except MatroidError:
        return None


def _target_classes(matrix: TUMatrix) -> tuple[list[tuple[int, ...]], dict[int, int]]:
    """Isomorphism classes of restrictions of the target, and the class of each column subset"""
    target = matrix.matroid()
    representatives: list[tuple[int, ...]] = []
    matroids = []
    class_of = {}
    for size in range(target.ground_size + 1):
        for columns in combinations(range(target.ground_size), size):
            restriction = target.restrict(columns)
            found = next(
                (k for k, other in enumerate(matroids) if is_isomorphic_matroid(restriction, other) is not None),
                None,
            )
            if found is None:
                found = len(representatives)
                representatives.append(columns)
                matroids.append(restriction)
            class_of[mask_of(columns)] = found
    return representatives, class_of


def build_cover(source: Matroid, target_matrix: TUMatrix, target_name: str, jobs: int = 1) -> CoverMap:
    fan = build_fp(source.ground_size - 1)
    target = target_matrix.matroid()
    cover = CoverMap(fan, source, target_matrix, target_name)
    elements = list(range(source.ground_size))

    for i in elements:
        remaining = [e for e in elements if e != i]
        bijection = is_isomorphic_matroid(source.delete([i]), target)
        if bijection is None:
            raise CoverError(f'deleting element {i} does not give {target_name}')
        cover.assignments[i] = {e: bijection[k] for k, e in enumerate(remaining)}

    keys, tasks = [], []
    for i, j in combinations(elements, 2):
        rest = [e for e in elements if e not in (i, j)]
        for size in range(len(rest) + 1):
            for subset in combinations(rest, size):
                keys.append((i, j, subset))
                tasks.append((
                    target_matrix,
                    [cover.assignments[i][e] for e in subset],
                    [cover.assignments[j][e] for e in subset],
                ))
    for (i, j, subset), witness in zip(keys, parallel_map(_witness, tasks, jobs)):
        if witness is None:
            raise CoverError(f'overlap of cones {i} and {j} on S={list(subset)} has no GL_g(Z) witness')
        cover.overlaps.append(Overlap(i, j, subset, tuple(map(tuple, witness))))

    cover.classes, class_of = _target_classes(target_matrix)
    for cone in fan.cones():
        images = {
            class_of[mask_of(cover.assignments[i][e] for e in elements_of(cone))]
            for i in elements if not cone >> i & 1
        }
        if len(images) != 1:
            raise CoverError(f'cone {elements_of(cone)} maps to different cells from different charts')
        cover.cell_images[cone] = images.pop()
    if set(cover.cell_images.values()) != set(range(len(cover.classes))):
        raise CoverError(f'cover misses cells of the {target_name} cone')
    top = class_of[(1 << target.ground_size) - 1]
    if any(cover.cell_images[cone] != top for cone in fan.maximal_cones()):
        raise CoverError('a maximal cone does not reach the top cell')

    logger.info('FP^%d cover of %s: %s', fan.n, target_name, cover.summary())
    return cover


def build_cover_a3(jobs: int = 1) -> CoverMap:
    return build_cover(fano(), mk4_matrix(), 'MK4', jobs)


def build_cover_a2(jobs: int = 1) -> CoverMap:
    return build_cover(uniform(2, 4), u23_matrix(), 'U23', jobs)


def verify_witnesses(cover: CoverMap) -> int:
    """Re-check every recorded witness from the log alone; returns the count"""
    for overlap in cover.overlaps:
        left = cover.target_matrix.select([cover.assignments[overlap.i][e] for e in overlap.subset])
        right = cover.target_matrix.select([cover.assignments[overlap.j][e] for e in overlap.subset])
        try:
            check_realization(overlap.witness, left, right, tuple(range(len(overlap.subset))))
        except MatroidError as exc:
            raise CoverError(f'witness for ({overlap.i}, {overlap.j}, {list(overlap.subset)}) fails: {exc}') from None
    return len(cover.overlaps)


def modp_ray_classes(g: int, p: int) -> int:
    """Nonzero vectors of (Z/p)^g up to sign"""
    if g < 1:
        raise CoverError('g must be at least 1')
    if not sympy.isprime(p):
        raise CoverError(f'{p} is not prime')
    nonzero = p ** g - 1
    return nonzero if p == 2 else nonzero // 2
