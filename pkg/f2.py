"""Linear algebra over F2 on bit-packed rows.

A row is a Python integer whose bit j holds column j, so adding two rows is a
single XOR regardless of width.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

import config
from errors import BudgetExceeded, RangeError, ShapeError


@dataclass(frozen=True)
class BitMatrix:
    """Immutable rows x cols matrix over F2.

    ``data[i]`` is row i packed into an int: bit j is entry (i, j).
    """

    rows: int
    cols: int
    data: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or len(self.data) != self.rows:
            raise ShapeError(f"{len(self.data)} words for {self.rows} rows")
        limit = 1 << self.cols
        for word in self.data:
            if not 0 <= word < limit:
                raise ShapeError(f"row word {word:#x} wider than {self.cols} columns")

    def __repr__(self):
        return f"<BitMatrix {self.rows}x{self.cols}>"

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n):
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_rows(cls, rows, cols=None):
        """Build from nested 0/1 sequences."""

        rows = [list(row) for row in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        data = []
        for row in rows:
            if len(row) != cols:
                raise ShapeError(f"ragged row of length {len(row)}, expected {cols}")
            data.append(sum(1 << j for j, bit in enumerate(row) if bit & 1))
        return cls(len(rows), cols, tuple(data))

    @classmethod
    def from_array(cls, array):
        array = np.asarray(array, dtype=np.uint8)
        if array.ndim != 2:
            raise ShapeError(f"expected a 2-d array, got {array.ndim} dimensions")
        return cls.from_rows(array.tolist(), cols=array.shape[1])

    def to_array(self):
        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for i, word in enumerate(self.data):
            for j in range(self.cols):
                out[i, j] = (word >> j) & 1
        return out

    def get(self, i, j):
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise RangeError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
        return (self.data[i] >> j) & 1

    def column(self, j):
        """Column j packed the same way rows are (bit i is entry (i, j))."""

        if not 0 <= j < self.cols:
            raise RangeError(f"column {j} outside {self.cols}")
        return sum(1 << i for i, word in enumerate(self.data) if (word >> j) & 1)

    def columns(self):
        return tuple(self.column(j) for j in range(self.cols))

    def transpose(self):
        return BitMatrix(self.cols, self.rows, self.columns())

    def select_columns(self, cols):
        """Submatrix keeping ``cols`` in the given order."""

        data = []
        for word in self.data:
            data.append(sum(1 << new for new, old in enumerate(cols) if (word >> old) & 1))
        return BitMatrix(self.rows, len(cols), tuple(data))

    def hstack(self, other):
        if other.rows != self.rows:
            raise ShapeError(f"cannot stack {self.rows} rows beside {other.rows}")
        data = tuple(a | (b << self.cols) for a, b in zip(self.data, other.data))
        return BitMatrix(self.rows, self.cols + other.cols, data)

    @property
    def symmetric_zero_diagonal(self):
        if self.rows != self.cols:
            return False
        for i, word in enumerate(self.data):
            if (word >> i) & 1:
                return False
        return self == self.transpose()


##############################################################################
# Elimination


def reduce_word(word, pivots):
    """Reduce ``word`` against a basis keyed by leading bit."""

    while word:
        row = pivots.get(word.bit_length() - 1)
        if row is None:
            return word
        word ^= row
    return 0


def rank_of(words):
    """Rank of the span of an iterable of packed vectors."""

    pivots = {}
    for word in words:
        word = reduce_word(word, pivots)
        if word:
            pivots[word.bit_length() - 1] = word
    return len(pivots)


def rank_f2(m):
    """Dimension of the row space of ``m`` over F2."""

    return rank_of(m.data)


def is_full_rank(m):
    if m.rows > m.cols:
        raise ShapeError(f"{m.rows}x{m.cols} has more rows than columns")
    return rank_f2(m) == m.rows


def rref(m):
    """Reduced row echelon form and the pivot column of each nonzero row.

    Zero rows are kept at the bottom so the shape is unchanged.
    """

    rows = list(m.data)
    pivots = []
    top = 0
    for j in range(m.cols):
        if top == len(rows):
            break
        bit = 1 << j
        found = next((i for i in range(top, len(rows)) if rows[i] & bit), None)
        if found is None:
            continue
        rows[top], rows[found] = rows[found], rows[top]
        for i in range(len(rows)):
            if i != top and rows[i] & bit:
                rows[i] ^= rows[top]
        pivots.append(j)
        top += 1
    return BitMatrix(m.rows, m.cols, tuple(rows)), tuple(pivots)


def nullspace(m):
    """Basis of {x : M x = 0}, each vector packed over the columns."""

    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vector = 1 << free
        for i, col in enumerate(pivots):
            if (reduced.data[i] >> free) & 1:
                vector |= 1 << col
        basis.append(vector)
    return basis


##############################################################################
# Counting


def gaussian_binomial(n, r):
    """Number of r-dimensional subspaces of F2^n."""

    if r < 0 or r > n:
        raise RangeError(f"r={r} outside 0..{n}")
    num = den = 1
    for i in range(r):
        num *= (1 << (n - i)) - 1
        den *= (1 << (i + 1)) - 1
    return num // den


def full_rank_probability(r, n):
    """Probability that a uniform r x n matrix over F2 has rank r."""

    if r > n:
        return Fraction(0)
    prob = Fraction(1)
    for i in range(1, r + 1):
        prob *= 1 - Fraction(1, 2 ** (n - r + i))
    return prob


def rank_census(k, cap=None):
    """Count labeled k-vertex graphs by F2 rank of their adjacency matrix.

    The result has an entry for every rank 0..k, zeros included.
    """

    cap = config.CENSUS_MAX_K if cap is None else cap
    if k > cap:
        raise BudgetExceeded(f"rank census for k={k} exceeds cap {cap}")

    pairs = list(combinations(range(k), 2))
    census = {r: 0 for r in range(k + 1)}
    for mask in range(1 << len(pairs)):
        rows = [0] * k
        for bit, (i, j) in enumerate(pairs):
            if (mask >> bit) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        census[rank_of(rows)] += 1
    return census
