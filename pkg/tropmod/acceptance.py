"""
Named end-to-end checks behind `verify-all`. Each check returns a
pass flag and a one-line detail; the report text is deterministic for a
given genus bound and seed.
"""

import hashlib
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Optional

from .covers import build_cover_a2, build_cover_a3, modp_ray_classes, verify_witnesses
from .exceptions import GenusError, TropmodError
from .matroids import (
    MK4_ROWS,
    U23_ROWS,
    automorphism_group_order,
    automorphisms,
    cographic_matroid,
    fano,
    is_isomorphic_matroid,
    is_totally_unimodular,
    mk4,
    mk4_matrix,
    realized_ray_permutations,
    simplify,
    stabilizer_ray_permutations,
    u23_matrix,
    uniform,
)
from .moduli import build_moduli_poset
from .posets import f_vector, maximal_cells
from .quadforms import QuadForm, classify_g2, delone_subdivision, g2_equivalent, random_unimodular
from .torelli import (
    MetricCurve,
    build_schottky_poset,
    genus3_schottky_witnesses,
    jacobian_in_cographic_cone,
    reproduce_tables,
    torelli_cell_image,
    tropical_jacobian,
)
from .trivalent import TRIVALENT_COUNTS, enumerate_trivalent
from .weighted_graphs import (
    WeightedGraph,
    bonds,
    canonical_certificate,
    dumbbell_graph,
    genus,
    relabel,
    theta_graph,
)

logger = logging.getLogger(__name__)

MODULI_FVECTORS = {
    2: [1, 2, 2, 2],
    3: [1, 2, 5, 9, 12, 8, 5],
    4: [1, 3, 7, 21, 43, 75, 89, 81, 42, 17],
    5: [1, 3, 11, 34, 100, 239, 492, 784, 1002, 926, 632, 260, 71],
}
SCHOTTKY_FVECTORS = {
    2: [1, 1, 1, 1],
    3: [1, 1, 1, 2, 2, 1, 1],
    4: [1, 1, 1, 2, 3, 4, 5, 4, 2, 2],
    5: [1, 1, 1, 2, 3, 5, 9, 12, 15, 17, 15, 7, 4],
}
SCHOTTKY_MAXIMAL = {2: 1, 3: 1, 4: 2, 5: 4}
MODULI_TOTALS = {2: 7, 3: 42, 4: 379, 5: 4555}
SCHOTTKY_TOTALS = {2: 4, 3: 9, 4: 25, 5: 92}

RANDOM_FORMS = 100
RANDOM_CURVES = 200
RELABELINGS = 100


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f'[{"PASS" if self.passed else "FAIL"}] {self.name}: {self.detail}'


@dataclass
class AcceptanceContext:
    genus_max: int
    seed: int
    jobs: int = 1
    moduli: dict = field(default_factory=dict)
    schottky: dict = field(default_factory=dict)

    @property
    def genera(self) -> range:
        return range(2, self.genus_max + 1)

    def rng(self, salt: str) -> random.Random:
        return random.Random(f'{self.seed}:{salt}')

    def moduli_poset(self, g: int):
        if g not in self.moduli:
            self.moduli[g] = build_moduli_poset(g, jobs=self.jobs)
        return self.moduli[g]

    def schottky_poset(self, g: int):
        if g not in self.schottky:
            self.schottky[g] = build_schottky_poset(g, jobs=self.jobs, moduli=self.moduli_poset(g))
        return self.schottky[g]


@dataclass(frozen=True)
class AcceptanceReport:
    genus_max: int
    seed: int
    results: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [result for result in self.results if not result.passed]

    def text(self) -> str:
        lines = [f'verify-all genus-max={self.genus_max} seed={self.seed}']
        lines += [result.line() for result in self.results]
        passed = sum(result.passed for result in self.results)
        lines.append(f'{passed}/{len(self.results)} checks passed')
        return '\n'.join(lines) + '\n'

    def digest(self) -> str:
        return hashlib.sha256(self.text().encode('utf-8')).hexdigest()


CHECKS: list[tuple[str, Callable[[AcceptanceContext], tuple[bool, str]]]] = []


def check(name: str):
    def register(func):
        CHECKS.append((name, func))
        return func
    return register


@check('trivalent-counts')
def _trivalent_counts(ctx):
    counts = {g: len(enumerate_trivalent(g, jobs=ctx.jobs)) for g in ctx.genera}
    return all(counts[g] == TRIVALENT_COUNTS[g] for g in counts), str(counts)


@check('moduli-fvectors')
def _moduli_fvectors(ctx):
    found = {g: f_vector(ctx.moduli_poset(g)) for g in ctx.genera}
    ok = all(found[g] == MODULI_FVECTORS[g] and sum(found[g]) == MODULI_TOTALS[g] for g in found)
    return ok, '; '.join(f'g={g}: {",".join(map(str, fv))}' for g, fv in found.items())


@check('moduli-structure')
def _moduli_structure(ctx):
    for g in ctx.genera:
        poset = ctx.moduli_poset(g)
        tops = maximal_cells(poset)
        if len(tops) != TRIVALENT_COUNTS[g] or any(any(cell.graph.weights) for cell in tops):
            return False, f'g={g}: maximal cells are not the trivalent graphs'
        if not poset.is_graded():
            return False, f'g={g}: a cover skips a rank'
        bottom = poset.cells_of_rank(0)
        if [cell.graph for cell in bottom] != [WeightedGraph(1, (g,), ())]:
            return False, f'g={g}: unexpected rank-0 cells'
        if any(genus(cell.graph) != g for cell in poset.cells):
            return False, f'g={g}: contraction changed the genus'
        if any(not poset.upper_covers.get(cell.id) for cell in poset.cells if cell not in tops):
            return False, f'g={g}: a non-maximal cell has no upper cover'
    return True, f'graded, genus-preserving, unique bottom for g<={ctx.genus_max}'


@check('certificate-relabel')
def _certificate_relabel(ctx):
    rng = ctx.rng('relabel')
    tried = 0
    for g in ctx.genera:
        if g > 3:
            break
        for cell in ctx.moduli_poset(g).cells:
            for _ in range(RELABELINGS):
                permutation = list(range(cell.graph.num_vertices))
                rng.shuffle(permutation)
                tried += 1
                if canonical_certificate(relabel(cell.graph, permutation)) != cell.cert:
                    return False, f'relabeling {cell.graph} changed its certificate'
    return True, f'{tried} random relabelings'


@check('schottky-fvectors')
def _schottky_fvectors(ctx):
    found = {g: f_vector(ctx.schottky_poset(g)) for g in ctx.genera}
    ok = all(found[g] == SCHOTTKY_FVECTORS[g] for g in found)
    return ok, '; '.join(f'g={g}: {",".join(map(str, fv))}' for g, fv in found.items())


@check('schottky-genus3-witnesses')
def _schottky_witnesses(ctx):
    if ctx.genus_max < 3:
        return True, 'skipped below genus 3'
    poset = ctx.schottky_poset(3)
    hit = {poset.class_of(torelli_cell_image(graph)).id for graph in genus3_schottky_witnesses()}
    return hit == {cell.id for cell in poset.cells}, f'{len(hit)} of {len(poset)} cells witnessed'


@check('tables')
def _tables(ctx):
    posets = {g: (ctx.moduli_poset(g), ctx.schottky_poset(g)) for g in ctx.genera}
    report = reproduce_tables(ctx.genus_max, jobs=ctx.jobs, posets=posets)
    ok = all(
        (row.moduli_maximal, row.moduli_total, row.schottky_maximal, row.schottky_total)
        == (TRIVALENT_COUNTS[row.genus], MODULI_TOTALS[row.genus], SCHOTTKY_MAXIMAL[row.genus], SCHOTTKY_TOTALS[row.genus])
        for row in report.rows
    )
    return ok, ' '.join(f'g={r.genus}:{r.moduli_maximal}/{r.moduli_total},{r.schottky_maximal}/{r.schottky_total}' for r in report.rows)


@check('cographic-bonds')
def _cographic_bonds(ctx):
    compared = 0
    for g in ctx.genera:
        if g > 4:
            break
        for cell in ctx.moduli_poset(g).cells:
            if cell.graph.num_edges <= 10:
                compared += 1
                if cographic_matroid(cell.graph).circuits != bonds(cell.graph):
                    return False, f'circuits differ from bonds for {cell.graph}'
    return True, f'{compared} graphs'


@check('jacobian-examples')
def _jacobian_examples(ctx):
    theta = tropical_jacobian(MetricCurve(theta_graph(), (1, 1, 1)))
    dumbbell = tropical_jacobian(MetricCurve(dumbbell_graph(), (1, 1, 5)))
    point = tropical_jacobian(MetricCurve(WeightedGraph(1, (3,), ()), ()))
    coefficients = jacobian_in_cographic_cone(MetricCurve(theta_graph(), (1, 2, 3)))
    ok = (
        theta == QuadForm.from_rows([[2, -1], [-1, 2]])
        and dumbbell == QuadForm.from_rows([[1, 0], [0, 1]])
        and point.is_zero() and point.g == 3
        and list(coefficients.values()) == [1, 2, 3]
    )
    return ok, f'theta {theta}; dumbbell {dumbbell}; coefficients {[str(c) for c in coefficients.values()]}'


@check('jacobian-scaling')
def _jacobian_scaling(ctx):
    rng = ctx.rng('scaling')
    checked = 0
    for cell in ctx.moduli_poset(min(ctx.genus_max, 3)).cells:
        lengths = tuple(Fraction(rng.randint(1, 9), rng.randint(1, 4)) for _ in cell.graph.edges)
        factor = Fraction(rng.randint(1, 7), rng.randint(1, 5))
        curve = MetricCurve(cell.graph, lengths)
        original = tropical_jacobian(curve)
        scaled = tropical_jacobian(curve.scaled(factor))
        expected = [[factor * x for x in row] for row in original.entries]
        if scaled != QuadForm.from_rows(expected):
            return False, f'scaling fails for {cell.graph}'
        checked += 1
    return True, f'{checked} curves'


@check('torelli-coefficients')
def _torelli_coefficients(ctx):
    rng = ctx.rng('torelli')
    cells = [cell for g in ctx.genera if g <= 4 for cell in ctx.moduli_poset(g).cells]
    checked = 0
    for _ in range(RANDOM_CURVES):
        cell = rng.choice(cells)
        lengths = tuple(Fraction(rng.randint(1, 20), rng.randint(1, 6)) for _ in cell.graph.edges)
        coefficients = jacobian_in_cographic_cone(MetricCurve(cell.graph, lengths))
        bridges = {index for index, _ in enumerate(cell.graph.edges)} - {e for c in coefficients for e in c}
        if any(cographic_matroid(cell.graph).rank_of([e]) for e in bridges):
            return False, f'{cell.graph}: a non-bridge edge has no coefficient'
        if any(value != sum(lengths[e] for e in edges) for edges, value in coefficients.items()):
            return False, f'{cell.graph}: coefficients differ from edge lengths'
        checked += 1
    return True, f'{checked} random metric curves'


@check('simplify-idempotent')
def _simplify_idempotent(ctx):
    for g in ctx.genera:
        for cell in ctx.schottky_poset(g).cells:
            simple, mapping = simplify(cell.matroid)
            if not cell.matroid.is_simple() or mapping != tuple(range(cell.matroid.ground_size)):
                return False, f'g={g}: cell {cell.id} is not simple'
            if simple.circuits != cell.matroid.circuits:
                return False, f'g={g}: simplifying cell {cell.id} changed it'
    return True, 'every harvested matroid is a fixed point of simplify'


@check('totally-unimodular')
def _totally_unimodular(ctx):
    ok = is_totally_unimodular(MK4_ROWS) and is_totally_unimodular(U23_ROWS) and not is_totally_unimodular([[2]])
    return ok, 'MK4 and U23 representatives TU, [[2]] not'


@check('matroid-automorphisms')
def _matroid_automorphisms(ctx):
    orders = {
        'MK4': automorphism_group_order(mk4()),
        'F7': automorphism_group_order(fano()),
        'U23': automorphism_group_order(uniform(2, 3)),
    }
    return orders == {'MK4': 24, 'F7': 168, 'U23': 6}, str(orders)


@check('fano-deletions')
def _fano_deletions(ctx):
    isomorphic = sum(is_isomorphic_matroid(fano().delete([i]), mk4()) is not None for i in range(7))
    return isomorphic == 7, f'{isomorphic} of 7 deletions isomorphic to MK4'


@check('ray-permutations')
def _ray_permutations(ctx):
    details = []
    for name, matrix in (('U23', u23_matrix()), ('MK4', mk4_matrix())):
        group = set(automorphisms(matrix.matroid()))
        realized = realized_ray_permutations(matrix)
        stabilized = stabilizer_ray_permutations(matrix)
        if not realized == stabilized == group:
            return False, f'{name}: realized {len(realized)}, stabilizer {len(stabilized)}, Aut {len(group)}'
        details.append(f'{name} {len(group)}')
    return True, 'ray permutations equal Aut(M): ' + ', '.join(details)


def random_definite_form(rng: random.Random, bound: int = 5) -> QuadForm:
    while True:
        a, b, c = rng.randint(1, bound), rng.randint(-bound, bound), rng.randint(1, bound)
        if a * c - b * b > 0:
            return QuadForm.from_rows([[a, b], [b, c]])


@check('delone-classification')
def _delone_classification(ctx):
    rng = ctx.rng('delone')
    expected = {'D1_triangulated': 'D1', 'D2_square': 'D2'}
    for _ in range(RANDOM_FORMS):
        form = random_definite_form(rng)
        period = delone_subdivision(form, 3)
        if period != delone_subdivision(form, 4):
            return False, f'{form}: window 3 and 4 disagree'
        if expected[classify_g2(form).kind.value] != period.combinatorial_type():
            return False, f'{form}: reduction and Delone cells disagree'
    return True, f'{RANDOM_FORMS} random definite forms'


@check('g2-equivalence')
def _g2_equivalence(ctx):
    for n in range(1, 7):
        x_n = QuadForm.from_rows([[1, Fraction(1, n)], [Fraction(1, n), Fraction(1, n * n)]])
        y_n = QuadForm.from_rows([[Fraction(1, n * n), 0], [0, 0]])
        if not g2_equivalent(x_n, y_n):
            return False, f'X_{n} and Y_{n} not equivalent'
    if g2_equivalent([[1, 0], [0, 0]], [[0, 0], [0, 0]]):
        return False, 'limits identified'
    rng = ctx.rng('equivalence')
    for _ in range(RANDOM_FORMS):
        form = random_definite_form(rng)
        if not g2_equivalent(form, form.transform(random_unimodular(rng))):
            return False, f'{form} not equivalent to a unimodular transform'
    return True, 'X_n ~ Y_n for n<=6, limits distinct, invariant under GL_2(Z)'


@check('cover-a2')
def _cover_a2(ctx):
    cover = build_cover_a2(jobs=ctx.jobs)
    return len(cover.overlaps) == 24 and verify_witnesses(cover) == 24, cover.summary()


@check('cover-a3')
def _cover_a3(ctx):
    cover = build_cover_a3(jobs=ctx.jobs)
    return len(cover.overlaps) == 672 and verify_witnesses(cover) == 672, cover.summary()


@check('modp-rays')
def _modp_rays(ctx):
    for p in (2, 3, 5, 7):
        for g in (1, 2, 3):
            vectors = {v for v in product(range(p), repeat=g) if any(v)}
            orbits = {min(v, tuple(-x % p for x in v)) for v in vectors}
            if modp_ray_classes(g, p) != len(orbits):
                return False, f'g={g}, p={p}'
    return True, f'FP^3 from p=3: {modp_ray_classes(2, 3)} rays; FP^6 from p=2: {modp_ray_classes(3, 2)} rays'


def run_checks(
    genus_max: int, seed: int = 0, jobs: int = 1, only=None, context: Optional[AcceptanceContext] = None
) -> AcceptanceReport:
    """Run the registered checks in order; `context` may carry prebuilt posets"""
    if not 2 <= genus_max <= 5:
        raise GenusError(f'genus-max {genus_max} outside 2..5')
    ctx = context or AcceptanceContext(genus_max, seed, jobs)
    results = []
    for name, func in CHECKS:
        if only and name not in only:
            continue
        try:
            passed, detail = func(ctx)
        except TropmodError as exc:
            passed, detail = False, f'{type(exc).__name__}: {exc}'
        logger.info('%s: %s', name, 'pass' if passed else 'FAIL')
        results.append(CheckResult(name, passed, detail))
    return AcceptanceReport(genus_max, seed, tuple(results))
