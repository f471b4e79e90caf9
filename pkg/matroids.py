"""Binary matroids, their labeled minors and fundamental graphs."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

import config
from errors import (BudgetExceeded, LabelError, NotBasisError, RangeError,
                    ShapeError)
from f2 import BitMatrix, gaussian_binomial, is_full_rank, rank_of, rref
from graphs import (OrderedBipartiteGraph, bipartite_from_edges, delete_vertex,
                    delete_vertices, generator, pivot)


@dataclass(frozen=True, eq=False)
class BinaryMatroid:
    """Column matroid of a full-row-rank matrix over F2.

    ``ground`` is sorted and names the columns of ``rep`` in order. Equality
    compares independent sets, not matrices.
    """

    ground: tuple
    rep: BitMatrix

    def __post_init__(self):
        if len(self.ground) != self.rep.cols:
            raise ShapeError(f"{len(self.ground)} labels for {self.rep.cols} columns")
        if list(self.ground) != sorted(set(self.ground)):
            raise ShapeError("ground set must be sorted and duplicate free")
        if rank_of(self.rep.data) != self.rep.rows:
            raise ShapeError("representation is not of full row rank")

    def __repr__(self):
        return f"<BinaryMatroid rank {self.rank} on {list(self.ground)}>"

    def __eq__(self, other):
        if not isinstance(other, BinaryMatroid):
            return NotImplemented
        return same_matroid(self, other)

    def __hash__(self):
        return hash((self.ground, self.rank))

    @classmethod
    def from_matrix(cls, ground, matrix):
        """Any representation; columns are reordered by label and rows reduced."""

        order = sorted(range(len(ground)), key=lambda j: ground[j])
        matrix = matrix.select_columns(order)
        reduced, pivots = rref(matrix)
        data = reduced.data[:len(pivots)]
        return cls(tuple(ground[j] for j in order), BitMatrix(len(data), matrix.cols, data))

    @property
    def rank(self):
        return self.rep.rows

    @property
    def n(self):
        return len(self.ground)

    def position(self, label):
        try:
            return self.ground.index(label)
        except ValueError:
            raise LabelError(f"{label} is not in the ground set") from None

    def column_of(self, label):
        return self.rep.column(self.position(label))

    def rank_of(self, labels):
        return rank_of(self.column_of(x) for x in labels)

    def is_independent(self, labels):
        labels = list(labels)
        return self.rank_of(labels) == len(labels)

    def bases(self):
        for subset in combinations(self.ground, self.rank):
            if self.is_independent(subset):
                yield subset

    def canonical(self):
        """Reduced echelon form; equal matroids on the same ground agree."""

        return (self.ground, rref(self.rep)[0].data)

    def to_json(self):
        return json.dumps({"ground": list(self.ground), "rows": self.rank,
                           "columns_bits": list(self.rep.columns())})

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        columns = BitMatrix(len(data["ground"]), data["rows"], tuple(data["columns_bits"]))
        return cls.from_matrix(tuple(data["ground"]), columns.transpose())


def same_matroid(M, N):
    """Labeled equality through the independence oracle."""

    if set(M.ground) != set(N.ground) or M.rank != N.rank:
        return False
    return all(M.is_independent(s) == N.is_independent(s)
               for s in combinations(M.ground, M.rank))


##############################################################################
# Fundamental graphs


def matroid_from_fundamental(B):
    """M(L, R, E), represented by [I_R A]."""

    left, right = sorted(B.L), sorted(B.R)
    ground = tuple(sorted(left + right))
    position = {x: j for j, x in enumerate(ground)}
    rows = []
    for r in right:
        word = 1 << position[r]
        for l in left:
            if B.graph.has_edge(l, r):
                word |= 1 << position[l]
        rows.append(word)
    return BinaryMatroid(ground, BitMatrix(len(rows), len(ground), tuple(rows)))


def fundamental_graph(M, basis):
    """Bipartite graph of fundamental circuits: (ground - basis, basis, E)."""

    basis = sorted(basis)
    if len(basis) != M.rank or not M.is_independent(basis):
        raise NotBasisError(f"{basis} is not a basis")
    rows = list(M.rep.data)
    for i, b in enumerate(basis):
        bit = 1 << M.position(b)
        found = next(j for j in range(i, len(rows)) if rows[j] & bit)
        rows[i], rows[found] = rows[found], rows[i]
        for j in range(len(rows)):
            if j != i and rows[j] & bit:
                rows[j] ^= rows[i]
    others = [x for x in M.ground if x not in basis]
    edges = [(l, b) for i, b in enumerate(basis) for l in others
             if (rows[i] >> M.position(l)) & 1]
    return bipartite_from_edges(others, basis, edges)


def dual(M):
    """M*, read off a fundamental graph with its parts swapped."""

    basis = [M.ground[j] for j in rref(M.rep)[1]]
    B = fundamental_graph(M, basis)
    return matroid_from_fundamental(OrderedBipartiteGraph(B.graph, B.right))


##############################################################################
# Minors


DELETE = "delete"
CONTRACT = "contract"


def matroid_minor_op(M, e, kind):
    """M \\ e or M / e. Contracting a loop deletes it."""

    j = M.position(e)
    keep = [i for i in range(M.n) if i != j]
    ground = tuple(M.ground[i] for i in keep)
    rows = list(M.rep.data)
    if kind == CONTRACT and M.rep.column(j):
        bit = 1 << j
        i = next(i for i, row in enumerate(rows) if row & bit)
        for t in range(len(rows)):
            if t != i and rows[t] & bit:
                rows[t] ^= rows[i]
        del rows[i]
    elif kind not in (DELETE, CONTRACT):
        raise ShapeError(f"unknown minor operation {kind!r}")
    matrix = BitMatrix(len(rows), M.n, tuple(rows)).select_columns(keep)
    return BinaryMatroid.from_matrix(ground, matrix)


def is_minor(M, N):
    """Whether some deletions and contractions of ground(M) - ground(N) give N."""

    if not set(N.ground) <= set(M.ground):
        raise LabelError("ground(N) is not inside ground(M)")
    extra = [x for x in M.ground if x not in set(N.ground)]
    corank = N.n - N.rank
    failed = set()

    def search(m, remaining):
        if m.rank < N.rank or m.n - m.rank < corank:
            return False
        if not remaining:
            return same_matroid(m, N)
        key = m.canonical()
        if key in failed:
            return False
        e = remaining[-1]
        for kind in (DELETE, CONTRACT):
            if search(matroid_minor_op(m, e, kind), remaining[:-1]):
                return True
        failed.add(key)
        return False

    return search(M, extra)


##############################################################################
# Counting and sampling


def count_bases(M):
    if M.n > config.MAX_BASIS_GROUND:
        raise BudgetExceeded(f"counting bases on {M.n} elements")
    columns = M.rep.columns()
    return sum(1 for subset in combinations(columns, M.rank)
               if rank_of(subset) == M.rank)


def enumerate_matroids(r, n, ground=None):
    """Every rank-r binary matroid on n labeled elements, via echelon forms."""

    ground = tuple(range(n)) if ground is None else tuple(ground)
    for pivots in combinations(range(n), r):
        pivot_set = set(pivots)
        free = [(i, j) for i, p in enumerate(pivots)
                for j in range(p + 1, n) if j not in pivot_set]
        for bits in range(1 << len(free)):
            rows = [1 << p for p in pivots]
            for t, (i, j) in enumerate(free):
                if (bits >> t) & 1:
                    rows[i] |= 1 << j
            yield BinaryMatroid(ground, BitMatrix(r, n, tuple(rows)))


def all_matroids(n):
    for r in range(n + 1):
        yield from enumerate_matroids(r, n)


def random_matroid(r, n, rng):
    """Uniform rank-r matroid on [n]: a uniform full-rank r x n matrix."""

    if r > n:
        raise RangeError(f"rank {r} above {n}")
    for _ in range(config.MATROID_SAMPLE_TRIES):
        matrix = BitMatrix.from_array(rng.integers(0, 2, size=(r, n), dtype=np.uint8))
        if is_full_rank(matrix):
            return BinaryMatroid(tuple(range(n)), matrix)
    raise BudgetExceeded(f"no full-rank {r}x{n} matrix in {config.MATROID_SAMPLE_TRIES} draws")


def sample_uniform_matroid(r, n, seed):
    return random_matroid(r, n, generator(seed))


def rank_distribution_uniform_matroid(n):
    if n > 64:
        raise RangeError(f"n={n} above 64")
    counts = {r: gaussian_binomial(n, r) for r in range(n + 1)}
    total = sum(counts.values())
    return {r: Fraction(count, total) for r, count in counts.items()}


def sample_matroid_any_rank(n, seed):
    """Uniform binary matroid on [n] of any rank."""

    rng = generator(seed)
    weights = rank_distribution_uniform_matroid(n)
    ranks = sorted(weights)
    r = int(rng.choice(ranks, p=[float(weights[x]) for x in ranks]))
    return random_matroid(r, n, rng)


def bases_normalizer(r, n):
    """Sum of b(M) over all rank-r matroids on [n]."""

    return comb(n, r) * 2 ** (r * (n - r))


def exact_mean_bases(r, n):
    return Fraction(bases_normalizer(r, n), gaussian_binomial(n, r))


def basis_variance_bound(r, n):
    """Upper bound on Var[b] / E[b]^2 for a uniform rank-r matroid on [n]."""

    return 4 * Fraction(n + r, 2 * n) ** r


##############################################################################
# Partition alignment


def _align_side(B, vs, ys):
    queue = list(vs)
    for y in ys:
        while queue:
            v = queue.pop(0)
            if B.graph.has_edge(v, y):
                B = delete_vertex(pivot(B, v, y), v)
                break
            B = delete_vertex(B, v)
        else:
            return None
    return delete_vertices(B, queue)


def align_partition(B, v1s, v2s, y1, y2, seed=None):
    """Move Y1 into L and Y2 into R by pivoting against V1* and V2*.

    V1* (in L) is walked in ascending order against the targets in Y1 (in R),
    ascending: an edge v_i y_j means pivot there and delete v_i, a non-edge
    means delete v_i. Then V2* (in R) against Y2 (in L). Returns None when a
    side runs out of vertices before every target moved.

    The walk order is fixed, so ``seed`` is accepted for call compatibility
    and does not change the result; randomness comes from how B was drawn.
    """

    v1s, v2s, y1, y2 = (sorted(s) for s in (v1s, v2s, y1, y2))
    blocks = [set(v1s), set(v2s), set(y1), set(y2)]
    if sum(map(len, blocks)) != len(set().union(*blocks)):
        raise ShapeError("V1*, V2*, Y1 and Y2 must be disjoint")
    if not (set(v1s) | set(y2)) <= B.L or not (set(v2s) | set(y1)) <= B.R:
        raise ShapeError("V1* and Y2 must lie in L, V2* and Y1 in R")
    if len(v1s) != len(v2s):
        raise ShapeError("V1* and V2* must have equal size")
    B = _align_side(B, v1s, y1)
    if B is None:
        return None
    return _align_side(B, v2s, y2)
