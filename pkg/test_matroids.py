"""Binary matroid tests."""

# run these tests like:
#
#    python -m unittest test_matroids.py


from fractions import Fraction
from itertools import combinations
from unittest import TestCase

from errors import LabelError, NotBasisError, RangeError, ShapeError
from f2 import BitMatrix, gaussian_binomial
from graphs import (all_bipartite_graphs, bipartite_from_edges, derive_seed,
                    generator, pivot, random_bipartite)
from matroids import (CONTRACT, DELETE, BinaryMatroid, align_partition,
                      all_matroids, bases_normalizer, count_bases, dual,
                      enumerate_matroids, exact_mean_bases,
                      fundamental_graph, is_minor, matroid_from_fundamental,
                      matroid_minor_op, random_matroid,
                      rank_distribution_uniform_matroid,
                      sample_matroid_any_rank, sample_uniform_matroid)

FANO = BitMatrix.from_rows([[1, 0, 0, 1, 1, 0, 1],
                            [0, 1, 0, 1, 0, 1, 1],
                            [0, 0, 1, 0, 1, 1, 1]])


class BinaryMatroidTestCase(TestCase):
    """Test the matroid value type."""

    def test_equality_ignores_representation(self):
        M = BinaryMatroid((0, 1, 2), BitMatrix.from_rows([[1, 0, 1], [0, 1, 1]]))
        N = BinaryMatroid((0, 1, 2), BitMatrix.from_rows([[1, 1, 0], [0, 1, 1]]))
        self.assertEqual(M, N)
        self.assertEqual(hash(M), hash(N))
        self.assertEqual(BinaryMatroid.from_json(M.to_json()), M)

    def test_from_matrix_sorts_ground(self):
        M = BinaryMatroid.from_matrix((5, 2), BitMatrix.from_rows([[1, 0]]))
        self.assertEqual(M.ground, (2, 5))
        self.assertTrue(M.is_independent([5]))
        self.assertFalse(M.is_independent([2]))

    def test_rejects_bad_representations(self):
        with self.assertRaises(ShapeError):
            BinaryMatroid((0, 1), BitMatrix.from_rows([[1, 1], [1, 1]]))
        with self.assertRaises(ShapeError):
            BinaryMatroid((1, 0), BitMatrix.identity(2))

    def test_unknown_label(self):
        M = BinaryMatroid((0, 1), BitMatrix.identity(2))
        with self.assertRaises(LabelError):
            M.column_of(4)

    def test_count_bases(self):
        self.assertEqual(count_bases(BinaryMatroid(tuple(range(7)), FANO)), 28)
        U23 = BinaryMatroid((0, 1, 2), BitMatrix.from_rows([[1, 0, 1], [0, 1, 1]]))
        self.assertEqual(count_bases(U23), 3)
        self.assertEqual(len(list(U23.bases())), 3)

        free = BinaryMatroid((0, 1, 2, 3), BitMatrix.identity(4))
        self.assertEqual(count_bases(free), 1)


class FundamentalGraphTestCase(TestCase):
    """Test M(L, R, E) and fundamental graphs."""

    def test_round_trip(self):
        for B in all_bipartite_graphs(2, 3):
            M = matroid_from_fundamental(B)
            self.assertEqual(M.rank, 3)
            self.assertEqual(fundamental_graph(M, sorted(B.R)), B)

    def test_pivot_keeps_matroid(self):
        """Ensure M(B x lr) == M(B) for every edge lr"""

        rng = generator(5)
        for _ in range(50):
            B = random_bipartite(3, 3, rng)
            M = matroid_from_fundamental(B)
            for l, r in B.edges():
                self.assertEqual(matroid_from_fundamental(pivot(B, l, r)), M)

    def test_every_basis_gives_a_pivot_relative(self):
        M = BinaryMatroid(tuple(range(7)), FANO)
        for basis in M.bases():
            self.assertEqual(matroid_from_fundamental(fundamental_graph(M, basis)), M)

    def test_not_a_basis(self):
        M = BinaryMatroid((0, 1, 2), BitMatrix.from_rows([[1, 1, 0], [0, 0, 1]]))
        with self.assertRaises(NotBasisError):
            fundamental_graph(M, [0, 1])

    def test_dual(self):
        for M in all_matroids(4):
            D = dual(M)
            self.assertEqual(D.rank, M.n - M.rank)
            self.assertEqual(dual(D), M)


class MinorTestCase(TestCase):
    """Test deletion, contraction and is_minor."""

    def test_delete_and_contract_commute(self):
        for M in all_matroids(4):
            for e, f in combinations(M.ground, 2):
                one = matroid_minor_op(matroid_minor_op(M, e, DELETE), f, CONTRACT)
                other = matroid_minor_op(matroid_minor_op(M, f, CONTRACT), e, DELETE)
                self.assertEqual(one, other)

    def test_contraction_is_dual_deletion(self):
        for M in all_matroids(4):
            for e in M.ground:
                self.assertEqual(matroid_minor_op(M, e, CONTRACT),
                                 dual(matroid_minor_op(dual(M), e, DELETE)))

    def test_contracting_a_loop_deletes_it(self):
        M = BinaryMatroid((0, 1), BitMatrix.from_rows([[1, 0]]))
        self.assertEqual(matroid_minor_op(M, 1, CONTRACT), matroid_minor_op(M, 1, DELETE))

    def test_unknown_operation(self):
        with self.assertRaises(ShapeError):
            matroid_minor_op(BinaryMatroid((0,), BitMatrix.identity(1)), 0, "merge")

    def test_is_minor(self):
        M = BinaryMatroid(tuple(range(7)), FANO)
        self.assertTrue(is_minor(M, M))
        N = matroid_minor_op(matroid_minor_op(M, 6, CONTRACT), 3, DELETE)
        self.assertTrue(is_minor(M, N))

        free = BinaryMatroid((0, 1, 2), BitMatrix.identity(3))
        loops = BinaryMatroid((0, 1), BitMatrix.zeros(0, 2))
        self.assertFalse(is_minor(free, loops))

        with self.assertRaises(LabelError):
            is_minor(loops, free)

    def test_pivot_minors_give_matroid_minors(self):
        """Ensure deleting a vertex of B deletes or contracts it in M(B)"""

        rng = generator(11)
        for _ in range(30):
            B = random_bipartite(2, 3, rng)
            M = matroid_from_fundamental(B)
            for v in B.L:
                kept = bipartite_from_edges(sorted(B.L - {v}), sorted(B.R),
                                            [(l, r) for l, r in B.edges() if l != v])
                self.assertEqual(matroid_from_fundamental(kept), matroid_minor_op(M, v, DELETE))
            for v in B.R:
                kept = bipartite_from_edges(sorted(B.L), sorted(B.R - {v}),
                                            [(l, r) for l, r in B.edges() if r != v])
                self.assertEqual(matroid_from_fundamental(kept), matroid_minor_op(M, v, CONTRACT))


class CountingTestCase(TestCase):
    """Test enumeration, sampling and basis statistics."""

    def test_enumeration_counts(self):
        for n in range(1, 6):
            for r in range(n + 1):
                found = list(enumerate_matroids(r, n))
                self.assertEqual(len(found), gaussian_binomial(n, r))
                self.assertEqual(len({M.canonical() for M in found}), len(found))

    def test_exact_mean_bases(self):
        for n in range(1, 6):
            for r in range(n + 1):
                total = sum(count_bases(M) for M in enumerate_matroids(r, n))
                self.assertEqual(total, bases_normalizer(r, n))
                self.assertEqual(Fraction(total, gaussian_binomial(n, r)), exact_mean_bases(r, n))

    def test_rank_distribution(self):
        dist = rank_distribution_uniform_matroid(6)
        self.assertEqual(sum(dist.values()), 1)
        for r in range(7):
            self.assertEqual(dist[r], dist[6 - r])

        with self.assertRaises(RangeError):
            rank_distribution_uniform_matroid(65)

    def test_rank_distribution_small_and_tails(self):
        self.assertEqual(rank_distribution_uniform_matroid(1), {0: Fraction(1, 2), 1: Fraction(1, 2)})
        self.assertEqual(rank_distribution_uniform_matroid(2),
                         {0: Fraction(1, 5), 1: Fraction(3, 5), 2: Fraction(1, 5)})

        dist = rank_distribution_uniform_matroid(30)
        spread = 30 ** 0.5
        tail = sum(p for r, p in dist.items() if abs(r - 15) > spread)
        self.assertLess(tail, Fraction(1, 100))

    def test_random_matroid(self):
        rng = generator(3)
        M = random_matroid(3, 5, rng)
        self.assertEqual((M.rank, M.n), (3, 5))
        with self.assertRaises(RangeError):
            random_matroid(4, 3, rng)

    def test_uniform_over_rank_one_matroids(self):
        """Ensure the 3 rank-1 matroids on [2] come up equally often"""

        samples = 30000
        counts = {}
        for i in range(samples):
            key = sample_uniform_matroid(1, 2, derive_seed(17, i)).canonical()
            counts[key] = counts.get(key, 0) + 1
        self.assertEqual(len(counts), 3)
        for count in counts.values():
            self.assertLess(abs(count / samples - 1 / 3), 0.02)

    def test_any_rank_sample_replays(self):
        self.assertEqual(sample_matroid_any_rank(6, 44), sample_matroid_any_rank(6, 44))


class AlignPartitionTestCase(TestCase):
    """Test moving target vertices across the bipartition."""

    def test_moves_both_targets(self):
        B = bipartite_from_edges([0, 1], [3, 4], [(0, 4), (1, 3)])
        result = align_partition(B, [0], [3], [4], [1])
        self.assertEqual(result.L, {4})
        self.assertEqual(result.R, {1})
        self.assertEqual(result.edges(), [])

    def test_seed_does_not_change_result(self):
        B = bipartite_from_edges([0, 1], [3, 4], [(0, 4), (1, 3)])
        expected = align_partition(B, [0], [3], [4], [1])
        for seed in (0, 1, 2 ** 63):
            self.assertEqual(align_partition(B, [0], [3], [4], [1], seed=seed), expected)

    def test_runs_out(self):
        B = bipartite_from_edges([0, 1], [3, 4], [(1, 3)])
        self.assertIsNone(align_partition(B, [0], [3], [4], [1]))

    def test_keeps_matroid_minor(self):
        """Ensure the aligned graph is a fundamental graph of a minor"""

        rng = generator(21)
        for _ in range(40):
            B = random_bipartite(3, 3, rng)
            result = align_partition(B, [0, 1], [3, 4], [5], [2])
            if result is None:
                continue
            self.assertEqual(result.L, {5})
            self.assertEqual(result.R, {2})
            self.assertTrue(is_minor(matroid_from_fundamental(B), matroid_from_fundamental(result)))

    def test_bad_blocks(self):
        B = bipartite_from_edges([0, 1], [3, 4], [])
        with self.assertRaises(ShapeError):
            align_partition(B, [0], [3, 4], [], [1])
        with self.assertRaises(ShapeError):
            align_partition(B, [3], [0], [4], [1])
