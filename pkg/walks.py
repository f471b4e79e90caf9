"""Exact Com, Piv and bPiv random walks on labeled graphs.

A distribution over the graphs on [k] (or over ordered bipartite graphs with
L = [0, l), R = [l, l + r)) is a vector indexed by colex edge masks. Every
probability these walks produce is dyadic, so vectors hold integer
numerators over one shared power-of-two denominator and all comparisons are
exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

import config
from errors import BudgetExceeded, ShapeError
from f2 import rank_f2
from graphs import (Biclique, Clique, OrderedBipartiteGraph, Tripartite,
                    bipartite_from_edge_mask, empty_graph, iter_bits, mask_of,
                    toggle_template)

COM = "com"
PIV = "piv"
BPIV = "bpiv"

STEP_KINDS = (COM, PIV, BPIV)


def edge_bits(shape):
    if len(shape) == 1:
        k, = shape
        return k * (k - 1) // 2
    l, r = shape
    return l * r


@dataclass(frozen=True)
class GraphDistribution:
    """Vector of numerators over 2**exponent, indexed by edge mask.

    ``shape`` is (k,) for graphs on [k] and (l, r) for ordered bipartite
    graphs. Signed vectors (characters) use the same container.
    """

    shape: tuple
    numerators: tuple
    exponent: int = 0

    def __post_init__(self):
        if len(self.numerators) != 1 << edge_bits(self.shape):
            raise ShapeError(f"{len(self.numerators)} weights for shape {self.shape}")

    def __repr__(self):
        return f"<GraphDistribution shape={self.shape} /2^{self.exponent}>"

    @property
    def kind(self):
        return "plain" if len(self.shape) == 1 else "bipartite"

    @property
    def size(self):
        return len(self.numerators)

    def probability(self, mask):
        return Fraction(self.numerators[mask], 1 << self.exponent)

    def total(self):
        return Fraction(sum(self.numerators), 1 << self.exponent)

    def to_json(self):
        return json.dumps({"shape": list(self.shape), "exponent": self.exponent,
                           "numerators": list(self.numerators)})

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls(tuple(data["shape"]), tuple(data["numerators"]), data["exponent"])


def _check_budget(shape):
    if edge_bits(shape) > config.WALK_MAX_EDGES:
        raise BudgetExceeded(f"2^{edge_bits(shape)} graphs exceed the walk budget")


def point_mass(shape, mask=0):
    _check_budget(shape)
    numerators = [0] * (1 << edge_bits(shape))
    numerators[mask] = 1
    return GraphDistribution(tuple(shape), tuple(numerators), 0)


def uniform_distribution(shape):
    _check_budget(shape)
    bits = edge_bits(shape)
    return GraphDistribution(tuple(shape), (1,) * (1 << bits), bits)


##############################################################################
# Templates and characters


def _shape_of(G):
    if isinstance(G, OrderedBipartiteGraph):
        return (len(G.L), len(G.R))
    return (len(G),)


def _standard_mask(G):
    """Edge mask of G after renaming its labels to [k] (or [0,l) + [l,l+r))."""

    if not isinstance(G, OrderedBipartiteGraph):
        return G.edge_mask()
    order = sorted(G.L) + sorted(G.R)
    mapping = {v: i for i, v in enumerate(order)}
    renamed = G.graph.relabel(mapping)
    return OrderedBipartiteGraph(renamed, mask_of(range(len(G.L)))).edge_mask()


@lru_cache(maxsize=64)
def template_counts(shape, kind):
    """(edge mask, multiplicity) for every uniformly chosen template."""

    _check_budget(shape)
    counts = {}
    if kind == COM and len(shape) == 1:
        k, = shape
        base = empty_graph(k)
        templates = (Clique(frozenset(iter_bits(s))) for s in range(1 << k))
    elif kind == PIV and len(shape) == 1:
        k, = shape
        base = empty_graph(k)
        templates = (Tripartite(frozenset(iter_bits(s)), frozenset(iter_bits(t)))
                     for s in range(1 << k) for t in range(1 << k))
    elif kind == BPIV and len(shape) == 2:
        l, r = shape
        base = bipartite_from_edge_mask(range(l), range(l, l + r), 0)
        templates = (Biclique(frozenset(iter_bits(s)), frozenset(iter_bits(t << l)))
                     for s in range(1 << l) for t in range(1 << r))
    else:
        raise ShapeError(f"walk {kind!r} does not act on shape {shape}")
    for template in templates:
        mask = toggle_template(base, template).edge_mask()
        counts[mask] = counts.get(mask, 0) + 1
    return tuple(sorted(counts.items()))


def step_exponent(shape, kind):
    """log2 of the number of equally likely templates per step."""

    if kind == COM:
        return shape[0]
    if kind == PIV:
        return 2 * shape[0]
    return shape[0] + shape[1]


def character_vector(G):
    """chi_G as a signed vector: H -> (-1)^|E(G) & E(H)|."""

    shape = _shape_of(G)
    _check_budget(shape)
    g_mask = _standard_mask(G)
    values = tuple(-1 if bin(g_mask & h).count("1") & 1 else 1
                   for h in range(1 << edge_bits(shape)))
    return GraphDistribution(shape, values, 0)


##############################################################################
# Operators


def apply_walk_step(mu, kind):
    """One step of the walk: toggle a uniformly chosen template."""

    counts = template_counts(mu.shape, kind)
    old = np.array(mu.numerators, dtype=object)
    index = np.arange(mu.size)
    new = np.zeros(mu.size, dtype=object)
    for mask, count in counts:
        new += count * old[index ^ mask]
    return GraphDistribution(mu.shape, tuple(int(x) for x in new),
                             mu.exponent + step_exponent(mu.shape, kind))


def run_recipe(mu, steps):
    """Apply the walk kinds in ``steps`` in order; return every intermediate."""

    history = [mu]
    for kind in steps:
        history.append(apply_walk_step(history[-1], kind))
    return history


def character_eigenvalue(G, kind):
    """E over templates of (-1)^|E(G) & E(template)|, exactly."""

    shape = _shape_of(G)
    g_mask = _standard_mask(G)
    total = sum(-count if bin(g_mask & mask).count("1") & 1 else count
                for mask, count in template_counts(shape, kind))
    return Fraction(total, 1 << step_exponent(shape, kind))


def eigenvalue_from_rank(G, kind):
    """2^-rank of the adjacency (bipartite: R x L) matrix."""

    if kind == COM:
        raise ShapeError("the Com eigenvalue has no rank formula")
    return Fraction(1, 1 << rank_f2(G.adj))


def inner_product(mu, nu):
    if mu.shape != nu.shape:
        raise ShapeError("inner product of different shapes")
    total = sum(a * b for a, b in zip(mu.numerators, nu.numerators))
    return Fraction(total, 1 << (mu.exponent + nu.exponent))


def linf_distance_to_uniform(mu):
    size = mu.size
    scale = 1 << mu.exponent
    worst = max(abs(num * size - scale) for num in mu.numerators)
    return Fraction(worst, size * scale)


##############################################################################
# Bounds


def mixing_bound(k, m1, m2):
    """2^(2k - C(k,2) - m) with m = m1 + 2*m2 steps' worth of mixing."""

    return Fraction(2) ** (2 * k - k * (k - 1) // 2 - (m1 + 2 * m2))


def bipartite_mixing_bound(t):
    return Fraction(1, 1 << t)


def complement_distribution(k, m1, m2):
    """Law of (G o x) xor G on U when x has m1 singletons and m2 pairs.

    For a uniformly random graph and a disjoint sequence inside a block
    Vhat, each singleton toggles a uniform clique and each pair a uniform
    tripartite template on U, independently.
    """

    mu = point_mass((k,))
    return run_recipe(mu, [COM] * m1 + [PIV] * m2)[-1]
