"""Vertex-minor Ramsey tests."""

# run these tests like:
#
#    python -m unittest test_ramsey.py


from unittest import TestCase

import networkx as nx

from errors import BudgetExceeded, ShapeError
from graphs import (complete_graph, empty_graph, generator, graph_from_edges,
                    path_graph, random_graph, to_networkx, wheel_graph)
from minors import local_equivalence_orbit
from ramsey import (CLASSICAL_RAMSEY, RECURSION, contains_clique_or_independent_pm,
                    contains_independent_vm, extremal_partition, graph_classes,
                    has_clique, has_independent_set, lower_bound_k,
                    maximum_independent_set, piv_ramsey, piv_ramsey_upper_bound,
                    random_independent_vm_rate, vm_ramsey, vm_ramsey_search,
                    vm_ramsey_upper_bound)


class IndependentSetTestCase(TestCase):
    """Test independent sets, cliques and their orbit versions."""

    def test_plain_sets(self):
        C5 = graph_from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
        self.assertTrue(has_independent_set(C5, 2))
        self.assertFalse(has_independent_set(C5, 3))
        self.assertTrue(has_clique(C5, 2))
        self.assertFalse(has_clique(C5, 3))
        self.assertEqual(len(maximum_independent_set(C5)), 2)
        self.assertEqual(maximum_independent_set(empty_graph(4)), [0, 1, 2, 3])

    def test_clique_holds_independent_vm(self):
        self.assertTrue(contains_independent_vm(complete_graph(4), 3))
        self.assertFalse(contains_independent_vm(complete_graph(4), 5))

    def test_wheel_avoids_independent_triple(self):
        W = wheel_graph(6)
        self.assertFalse(contains_independent_vm(W, 3))
        self.assertFalse(contains_independent_vm(W, 3, engine=RECURSION))
        self.assertTrue(contains_independent_vm(W, 2))

    def test_engines_agree(self):
        """Ensure orbit and recursion engines agree on every class up to 7 vertices"""

        for n in range(1, 8):
            for G in graph_classes(n):
                for k in (1, 2, 3):
                    self.assertEqual(contains_independent_vm(G, k),
                                     contains_independent_vm(G, k, engine=RECURSION))

    def test_engines_agree_on_random_graphs(self):
        rng = generator(13)
        for _ in range(40):
            G = random_graph(6, rng)
            self.assertEqual(contains_independent_vm(G, 4),
                             contains_independent_vm(G, 4, engine=RECURSION))

    def test_unknown_engine(self):
        with self.assertRaises(ShapeError):
            contains_independent_vm(path_graph(3), 2, engine="guess")

    def test_pivot_minor_targets(self):
        self.assertTrue(contains_clique_or_independent_pm(complete_graph(3), 3))
        self.assertTrue(contains_clique_or_independent_pm(empty_graph(3), 3))
        self.assertFalse(contains_clique_or_independent_pm(path_graph(2), 3))


class RamseyNumberTestCase(TestCase):
    """Test exhaustive R_vm and R_piv scans."""

    def test_isomorphism_classes(self):
        self.assertEqual([len(graph_classes(n)) for n in range(6)], [1, 1, 2, 4, 11, 34])

    def test_small_values(self):
        self.assertEqual(vm_ramsey(1), 1)
        self.assertEqual(vm_ramsey(2), 3)

    def test_three(self):
        """Ensure R_vm(3) == 7 with the 6-wheel among the certificates"""

        result = vm_ramsey_search(3)
        self.assertEqual(result.value, 7)
        self.assertEqual(result.value, vm_ramsey_upper_bound(3))
        self.assertEqual(result.failures_by_n[7], 0)
        self.assertEqual(len(result.certificates), result.failures_by_n[6])
        wheel = to_networkx(wheel_graph(6))
        self.assertTrue(any(nx.is_isomorphic(to_networkx(G), wheel)
                            for G in result.certificates))

    def test_out_of_reach(self):
        with self.assertRaises(BudgetExceeded):
            vm_ramsey(4)

    def test_pivot_sandwich(self):
        """Ensure R_vm(k-1) <= R_piv(k) <= R(k) for k <= 3"""

        for k in (2, 3):
            value = piv_ramsey(k)
            self.assertLessEqual(vm_ramsey(k - 1), value)
            self.assertLessEqual(value, CLASSICAL_RAMSEY[k])
            self.assertLessEqual(value, piv_ramsey_upper_bound(k))


class ExtremalTestCase(TestCase):
    """Test the partition around a large independent set and the random rate."""

    def test_partition(self):
        G = random_graph(6, generator(77))
        h, U, classes = extremal_partition(G)
        self.assertIn(h, local_equivalence_orbit(G))
        self.assertTrue(has_independent_set(h, len(U)))
        for u in U:
            self.assertFalse(h.rows[u] & sum(1 << x for x in U))
        placed = sorted(v for members in classes.values() for v in members)
        self.assertEqual(placed, sorted(set(h.labels()) - set(U)))
        for S, members in classes.items():
            self.assertTrue(S <= set(U))
            for v in members:
                self.assertEqual({u for u in U if h.has_edge(u, v)}, S)

    def test_extremal_structure_without_independent_triple(self):
        """Ensure |V_{}| == 0 and |V_S| <= min(2, |S|) on 6-vertex graphs avoiding I_3"""

        avoiding = [G for G in graph_classes(6) if not contains_independent_vm(G, 3)]
        self.assertTrue(avoiding)
        for G in avoiding:
            _, U, classes = extremal_partition(G)
            self.assertEqual(classes.get(frozenset(), []), [])
            for S, members in classes.items():
                self.assertLessEqual(len(members), min(2, len(S)))

    def test_lower_bound_k(self):
        self.assertEqual(lower_bound_k(1), 2)
        self.assertLess(lower_bound_k(100), lower_bound_k(400))

    def test_random_rate(self):
        rate = random_independent_vm_rate(7, 20, seed=5, k=3)
        self.assertGreaterEqual(rate, 0.0)
        self.assertLessEqual(rate, 1.0)
        self.assertEqual(rate, random_independent_vm_rate(7, 20, seed=5, k=3))
        self.assertEqual(random_independent_vm_rate(7, 0, seed=5), 0.0)

    def test_random_graphs_can_avoid_large_independent_minors(self):
        """Ensure G(10, 1/2) misses I_k for k = lower_bound_k(10) in some samples"""

        self.assertEqual(lower_bound_k(10), 6)
        self.assertLess(random_independent_vm_rate(10, 20, seed=10), 1.0)
