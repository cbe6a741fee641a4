import random

import networkx as nx
from django.test import SimpleTestCase

from tropmod.exceptions import GraphError
from tropmod.weighted_graphs import (
    WeightedGraph,
    automorphism_edge_group_order,
    banana_graph,
    bonds,
    bouquet,
    canonical_certificate,
    canonical_form,
    complete_graph_k4,
    contract_edge,
    dumbbell_graph,
    figure2_graph,
    genus,
    is_valid_type,
    relabel,
    theta_graph,
)


def random_graph(rng, n, m):
    """Connected multigraph with loops: a random tree plus random extra edges"""
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    edges += [(rng.randrange(n), rng.randrange(n)) for _ in range(m)]
    rng.shuffle(edges)
    weights = tuple(rng.choice([0, 0, 0, 1, 2]) for _ in range(n))
    return WeightedGraph(n, weights, tuple(edges))


def shuffled(graph, rng):
    permutation = list(range(graph.num_vertices))
    rng.shuffle(permutation)
    return relabel(graph, permutation)


class WeightedGraphTests(SimpleTestCase):
    def test_edges_are_normalized(self):
        graph = WeightedGraph(2, (0, 0), ((1, 0), (0, 1)))
        self.assertEqual(graph.edges, ((0, 1), (0, 1)))

    def test_loops_count_twice_in_degree(self):
        graph = dumbbell_graph()
        self.assertEqual(graph.degrees, (3, 3))
        self.assertEqual(graph.loop_counts, (1, 1))
        self.assertEqual(graph.degree(0), 3)

    def test_text_encoding(self):
        graph = WeightedGraph(3, (1, 0, 2), ((2, 1), (0, 0), (0, 1)))
        self.assertEqual(graph.to_text(), 'n=3; w=1,0,2; E=(0,0),(0,1),(1,2)')
        self.assertEqual(WeightedGraph.from_text(graph.to_text()).to_text(), graph.to_text())
        self.assertEqual(WeightedGraph.from_text('n=1; w=3; E=').edges, ())

    def test_bad_encodings_raise(self):
        with self.assertRaises(GraphError):
            WeightedGraph.from_text('n=2 w=0,0')
        with self.assertRaises(GraphError):
            WeightedGraph(2, (0,), ())
        with self.assertRaises(GraphError):
            WeightedGraph(2, (0, -1), ((0, 1),))
        with self.assertRaises(GraphError):
            WeightedGraph(2, (0, 0), ((0, 2),))

    def test_genus(self):
        self.assertEqual(genus(theta_graph()), 2)
        self.assertEqual(genus(dumbbell_graph()), 2)
        self.assertEqual(genus(figure2_graph()), 3)
        self.assertEqual(genus(complete_graph_k4()), 3)
        self.assertEqual(genus(bouquet(0, weight=4)), 4)

    def test_genus_of_disconnected_graph(self):
        with self.assertRaisesMessage(GraphError, 'not connected'):
            genus(WeightedGraph(2, (1, 1), ()))

    def test_stability(self):
        self.assertTrue(is_valid_type(theta_graph(), 2))
        self.assertTrue(is_valid_type(bouquet(1, weight=1), 2))
        self.assertFalse(is_valid_type(bouquet(1), 1))
        self.assertFalse(is_valid_type(WeightedGraph(2, (0, 2), ((0, 1),)), 2))
        self.assertFalse(is_valid_type(theta_graph(), 3))

    def test_contract_loop_raises_weight(self):
        contracted = contract_edge(dumbbell_graph(), 0)
        self.assertEqual(contracted.weights, (1, 0))
        self.assertEqual(contracted.num_edges, 2)

    def test_contract_bridge_merges_vertices(self):
        contracted = contract_edge(dumbbell_graph(), (0, 1))
        self.assertEqual(contracted.to_text(), 'n=1; w=0; E=(0,0),(0,0)')

    def test_contraction_preserves_genus_and_stability(self):
        rng = random.Random(11)
        for _ in range(200):
            graph = random_graph(rng, rng.randint(1, 6), rng.randint(0, 5))
            if not graph.num_edges:
                continue
            g = genus(graph)
            contracted = contract_edge(graph, rng.randrange(graph.num_edges))
            self.assertEqual(genus(contracted), g)
            if is_valid_type(graph, g):
                self.assertTrue(is_valid_type(contracted, g))

    def test_missing_edge(self):
        with self.assertRaises(GraphError):
            contract_edge(theta_graph(), (0, 0))
        with self.assertRaises(GraphError):
            contract_edge(theta_graph(), 3)


class CertificateTests(SimpleTestCase):
    def test_relabeling_invariance(self):
        rng = random.Random(3)
        for _ in range(150):
            graph = random_graph(rng, rng.randint(1, 7), rng.randint(0, 6))
            self.assertEqual(canonical_certificate(shuffled(graph, rng)), canonical_certificate(graph))

    def test_certificates_agree_with_networkx_isomorphism(self):
        rng = random.Random(5)
        graphs = [random_graph(rng, 4, 3) for _ in range(40)]

        def same(a, b):
            return nx.is_isomorphic(
                a.to_networkx(), b.to_networkx(),
                node_match=lambda x, y: x['weight'] == y['weight'],
            )

        for a, b in zip(graphs, graphs[1:]):
            self.assertEqual(canonical_certificate(a) == canonical_certificate(b), same(a, b))

    def test_weights_distinguish(self):
        self.assertNotEqual(
            canonical_certificate(WeightedGraph(2, (1, 0), ((0, 1), (0, 0)))),
            canonical_certificate(WeightedGraph(2, (0, 1), ((0, 1), (0, 0)))),
        )
        self.assertEqual(
            canonical_certificate(WeightedGraph(2, (1, 0), ((0, 1), (1, 1)))),
            canonical_certificate(WeightedGraph(2, (0, 1), ((0, 1), (0, 0)))),
        )

    def test_canonical_form_is_isomorphic(self):
        graph = figure2_graph()
        form = canonical_form(graph)
        self.assertEqual(canonical_certificate(form), canonical_certificate(graph))
        self.assertEqual(canonical_form(form), form)

    def test_too_many_vertices(self):
        path = WeightedGraph(17, (1,) * 17, tuple((v, v + 1) for v in range(16)))
        with self.assertRaisesMessage(GraphError, 'too large'):
            canonical_certificate(path)

    def test_disconnected_graph_has_no_certificate(self):
        with self.assertRaises(GraphError):
            canonical_certificate(WeightedGraph(2, (1, 1), ()))


class AutomorphismTests(SimpleTestCase):
    def test_orders(self):
        self.assertEqual(automorphism_edge_group_order(theta_graph()), 6)
        self.assertEqual(automorphism_edge_group_order(dumbbell_graph()), 2)
        self.assertEqual(automorphism_edge_group_order(complete_graph_k4()), 24)
        self.assertEqual(automorphism_edge_group_order(banana_graph(4)), 24)
        self.assertEqual(automorphism_edge_group_order(bouquet(3)), 6)
        self.assertEqual(automorphism_edge_group_order(figure2_graph()), 2)


class BondTests(SimpleTestCase):
    def test_theta(self):
        self.assertEqual(bonds(theta_graph()), frozenset({0b111}))

    def test_dumbbell_bridge_is_the_only_bond(self):
        self.assertEqual(bonds(dumbbell_graph()), frozenset({0b100}))

    def test_k4_has_seven_bonds(self):
        found = bonds(complete_graph_k4())
        self.assertEqual(len(found), 7)
        self.assertEqual(sorted(bin(b).count('1') for b in found), [3, 3, 3, 3, 4, 4, 4])
