import random
from unittest import skipUnless

from django.conf import settings
from django.test import SimpleTestCase

from tropmod.exceptions import GenusError
from tropmod.trivalent import (
    TRIVALENT_COUNTS,
    enumerate_trivalent,
    random_trivalent,
    sample_trivalent_classes,
)
from tropmod.weighted_graphs import canonical_certificate, genus


class EnumerateTrivalentTests(SimpleTestCase):
    def test_counts(self):
        for g in (2, 3, 4, 5):
            with self.subTest(genus=g):
                self.assertEqual(len(enumerate_trivalent(g)), TRIVALENT_COUNTS[g])

    @skipUnless(settings.TROPMOD_SLOW_TESTS, 'set TROPMOD_SLOW_TESTS to enumerate genus 6')
    def test_genus_six(self):
        self.assertEqual(len(enumerate_trivalent(6)), 388)

    def test_genus_two_is_theta_and_dumbbell(self):
        texts = {graph.to_text() for graph in enumerate_trivalent(2)}
        self.assertEqual(len(texts), 2)
        self.assertTrue(any(text.count('(0,1)') == 3 for text in texts))

    def test_graphs_are_trivalent_and_distinct(self):
        graphs = enumerate_trivalent(4)
        certificates = [canonical_certificate(graph) for graph in graphs]
        self.assertEqual(certificates, sorted(set(certificates)))
        for graph in graphs:
            self.assertEqual(set(graph.degrees), {3})
            self.assertEqual(genus(graph), 4)
            self.assertEqual(graph.num_edges, 9)

    def test_parallel_run_matches_serial(self):
        self.assertEqual(enumerate_trivalent(4, jobs=2), enumerate_trivalent(4))

    def test_genus_out_of_range(self):
        for g in (1, 7):
            with self.assertRaises(GenusError):
                enumerate_trivalent(g)


class RandomPairingTests(SimpleTestCase):
    def test_random_pairing_is_trivalent(self):
        graph = random_trivalent(3, random.Random(1))
        self.assertEqual(graph.degrees, (3, 3, 3, 3))

    def test_saturated_pairings_find_every_class(self):
        for g in (2, 3, 4):
            with self.subTest(genus=g):
                known = {canonical_certificate(graph) for graph in enumerate_trivalent(g)}
                self.assertEqual(sample_trivalent_classes(g, seed=g), known)
