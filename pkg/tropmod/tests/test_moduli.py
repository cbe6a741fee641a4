import json
import random
from unittest import skipUnless

from django.conf import settings
from django.test import SimpleTestCase

from tropmod.exceptions import GenusError
from tropmod.moduli import build_moduli_poset, f_vector, maximal_cells
from tropmod.weighted_graphs import (
    WeightedGraph,
    canonical_certificate,
    contract_edge,
    genus,
    is_valid_type,
    relabel,
)


class ModuliPosetTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.posets = {g: build_moduli_poset(g) for g in (2, 3, 4)}

    def test_f_vectors(self):
        self.assertEqual(f_vector(self.posets[2]), [1, 2, 2, 2])
        self.assertEqual(f_vector(self.posets[3]), [1, 2, 5, 9, 12, 8, 5])
        self.assertEqual(f_vector(self.posets[4]), [1, 3, 7, 21, 43, 75, 89, 81, 42, 17])

    def test_totals(self):
        self.assertEqual([len(self.posets[g]) for g in (2, 3, 4)], [7, 42, 379])

    def test_maximal_cells_are_trivalent(self):
        for g, poset in self.posets.items():
            tops = maximal_cells(poset)
            self.assertEqual(len(tops), {2: 2, 3: 5, 4: 17}[g])
            for cell in tops:
                self.assertEqual(cell.rank, 3 * g - 3)
                self.assertEqual(set(cell.graph.degrees), {3})

    def test_unique_bottom(self):
        for g, poset in self.posets.items():
            bottom = poset.cells_of_rank(0)
            self.assertEqual([cell.graph for cell in bottom], [WeightedGraph(1, (g,), ())])

    def test_every_cell_is_a_stable_type_of_the_genus(self):
        for g, poset in self.posets.items():
            for cell in poset.cells:
                self.assertTrue(is_valid_type(cell.graph, g))

    def test_covers_are_one_edge_contractions(self):
        poset = self.posets[3]
        by_id = {cell.id: cell for cell in poset.cells}
        self.assertTrue(poset.is_graded())
        for lower, upper in poset.covers:
            contractions = {
                canonical_certificate(contract_edge(by_id[upper].graph, e))
                for e in range(by_id[upper].graph.num_edges)
            }
            self.assertIn(by_id[lower].cert, contractions)

    def test_every_contraction_is_a_recorded_cover(self):
        for g in (2, 3):
            poset = self.posets[g]
            for cell in poset.cells:
                expected = {
                    poset.cell_of(contract_edge(cell.graph, e)).id for e in range(cell.graph.num_edges)
                }
                self.assertEqual(set(poset.lower_covers.get(cell.id, [])), expected)

    def test_rebuild_from_shuffled_relabeled_tops(self):
        rng = random.Random(19)
        tops = []
        for cell in maximal_cells(self.posets[3]):
            permutation = list(range(cell.graph.num_vertices))
            rng.shuffle(permutation)
            tops.append(relabel(cell.graph, permutation))
        rng.shuffle(tops)
        rebuilt = build_moduli_poset(3, maximal=tops)
        self.assertEqual([cell.cert for cell in rebuilt.cells], [cell.cert for cell in self.posets[3].cells])
        self.assertEqual(rebuilt.covers, self.posets[3].covers)
        self.assertEqual(rebuilt.digest(), self.posets[3].digest())

    def test_contraction_genus_exhaustive(self):
        for g, poset in self.posets.items():
            for cell in poset.cells:
                for index in range(cell.graph.num_edges):
                    self.assertEqual(genus(contract_edge(cell.graph, index)), g)

    def test_cell_lookup_after_relabeling(self):
        rng = random.Random(7)
        poset = self.posets[3]
        for cell in poset.cells:
            for _ in range(3):
                permutation = list(range(cell.graph.num_vertices))
                rng.shuffle(permutation)
                self.assertIs(poset.cell_of(relabel(cell.graph, permutation)), cell)

    def test_json_export(self):
        data = json.loads(self.posets[2].to_json_text())
        self.assertEqual(sorted(data), ['cells', 'covers', 'fvector', 'genus'])
        self.assertEqual(data['fvector'], [1, 2, 2, 2])
        self.assertEqual(data['cells'][0], {'id': 0, 'rank': 0, 'graph': 'n=1; w=2; E=', 'aut': 1})
        self.assertEqual(len(data['covers']), len(self.posets[2].covers))

    def test_digest_is_stable(self):
        self.assertEqual(build_moduli_poset(3).digest(), self.posets[3].digest())

    def test_dot_export(self):
        dot = self.posets[2].to_dot()
        self.assertTrue(dot.startswith('digraph moduli_2 {'))
        self.assertEqual(dot.count('rank=same;'), 4)
        self.assertEqual(dot.count(' -> '), len(self.posets[2].covers))

    def test_parallel_build_matches(self):
        self.assertEqual(build_moduli_poset(3, jobs=2).digest(), self.posets[3].digest())

    def test_genus_out_of_range(self):
        with self.assertRaises(GenusError):
            build_moduli_poset(6)


@skipUnless(settings.TROPMOD_SLOW_TESTS, 'set TROPMOD_SLOW_TESTS to build P_5')
class GenusFiveTests(SimpleTestCase):
    def test_f_vector(self):
        poset = build_moduli_poset(5)
        self.assertEqual(f_vector(poset), [1, 3, 11, 34, 100, 239, 492, 784, 1002, 926, 632, 260, 71])
        self.assertEqual(len(poset), 4555)
