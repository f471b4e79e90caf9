"""Vertex-minor and pivot-minor Ramsey numbers for small k."""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import networkx as nx

import config
from errors import BudgetExceeded, OrbitCapExceeded, ShapeError
from graphs import (Graph, derive_seed, from_edge_mask, iter_bits, mask_of,
                    sample_uniform, to_networkx)
from minors import (is_vertex_minor, lc_moves, local_equivalence_orbit,
                    pivot_moves)

logger = logging.getLogger(__name__)

# R(k, k) for the classical sandwich R_piv(k) <= R(k).
CLASSICAL_RAMSEY = {1: 1, 2: 2, 3: 6}

ORBIT = "orbit"
RECURSION = "recursion"


def _has_independent(rows, candidates, k):
    if k <= 0:
        return True
    if bin(candidates).count("1") < k:
        return False
    v = (candidates & -candidates).bit_length() - 1
    rest = candidates & ~(1 << v)
    return _has_independent(rows, rest & ~rows[v], k - 1) or _has_independent(rows, rest, k)


def has_independent_set(G, k):
    return _has_independent(G.rows, G.present, k)


def has_clique(G, k):
    complement = tuple((G.present & ~row & ~(1 << v)) if (G.present >> v) & 1 else 0
                       for v, row in enumerate(G.rows))
    return _has_independent(complement, G.present, k)


def maximum_independent_set(G):
    nodes, _ = nx.max_weight_clique(nx.complement(to_networkx(G)), weight=None)
    return sorted(nodes)


def _orbit_any(G, moves, predicate, cap):
    """True as soon as some graph in the orbit satisfies ``predicate``."""

    seen = {G}
    queue = deque([G])
    while queue:
        current = queue.popleft()
        if predicate(current):
            return True
        for _, nxt in moves(current):
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > cap:
                    raise OrbitCapExceeded(f"orbit larger than {cap}")
                queue.append(nxt)
    return False


def contains_independent_vm(G, k, engine=ORBIT, budget=None):
    """Whether some k labels of G carry the edgeless graph as a vertex-minor.

    ``orbit`` scans the local-equivalence orbit for an independent set of
    size k; ``recursion`` asks the minor search about every k-subset.
    """

    if k > len(G):
        return False
    if engine == ORBIT:
        return _orbit_any(G, lc_moves, lambda g: has_independent_set(g, k), config.ORBIT_CAP)
    if engine == RECURSION:
        for U in combinations(G.labels(), k):
            if is_vertex_minor(G, from_edge_mask(k, 0, U), budget) is not None:
                return True
        return False
    raise ShapeError(f"unknown engine {engine!r}")


def contains_clique_or_independent_pm(G, k):
    """Whether a pivot-equivalent graph has an independent set or clique of size k."""

    if k > len(G):
        return False
    return _orbit_any(G, pivot_moves,
                      lambda g: has_independent_set(g, k) or has_clique(g, k),
                      config.ORBIT_CAP)


##############################################################################
# Exhaustive scans


def _extend(G, nbrs):
    """G plus a new vertex labeled G.n joined to ``nbrs``."""

    v = G.n
    rows = [row | (1 << v) if (nbrs >> u) & 1 else row for u, row in enumerate(G.rows)]
    rows.append(nbrs)
    return Graph(v + 1, G.present | (1 << v), tuple(rows))


@lru_cache(maxsize=None)
def graph_classes(n):
    """One labeled representative of every isomorphism class on [n]."""

    if n == 0:
        return (Graph(0, 0, ()),)
    classes = []
    buckets = {}
    for base in graph_classes(n - 1):
        for nbrs in range(1 << (n - 1)):
            candidate = _extend(base, nbrs)
            g = to_networkx(candidate)
            bucket = buckets.setdefault(nx.weisfeiler_lehman_graph_hash(g), [])
            if any(nx.is_isomorphic(g, other) for other in bucket):
                continue
            bucket.append(g)
            classes.append(candidate)
    logger.info("%d isomorphism classes on %d vertices", len(classes), n)
    return tuple(classes)


@dataclass
class RamseyResult:
    k: int
    value: int
    certificates: tuple = ()
    failures_by_n: dict = field(default_factory=dict)


def _ramsey_scan(k, contains):
    if k > config.MAX_RAMSEY_K:
        raise BudgetExceeded(f"exhaustive Ramsey scan for k={k} is out of reach")
    if k <= 0:
        return RamseyResult(k, 0)
    failures_by_n = {}
    previous = ()
    n = k
    while True:
        failures = tuple(g for g in graph_classes(n) if not contains(g, k))
        failures_by_n[n] = len(failures)
        logger.info("k=%d n=%d: %d graphs without the target", k, n, len(failures))
        if not failures:
            return RamseyResult(k, n, previous, failures_by_n)
        previous = failures
        n += 1


def vm_ramsey_search(k):
    """R_vm(k) with every (n-1)-vertex graph class that avoids I_k."""

    return _ramsey_scan(k, contains_independent_vm)


def vm_ramsey(k):
    return vm_ramsey_search(k).value


def piv_ramsey_search(k):
    return _ramsey_scan(k, contains_clique_or_independent_pm)


def piv_ramsey(k):
    return piv_ramsey_search(k).value


def vm_ramsey_upper_bound(k):
    return 2 ** k - 1


def piv_ramsey_upper_bound(k):
    return (k - 1) * (2 ** k - 1) + 1


def extremal_partition(G):
    """Classes V_S around a largest independent set found in G's orbit.

    Returns the orbit graph used, the independent set U and a map from each
    S (a frozenset inside U) to the vertices whose U-neighborhood is S.
    """

    best_graph, best_set = None, []
    for h in sorted(local_equivalence_orbit(G), key=lambda g: g.key()):
        U = maximum_independent_set(h)
        if best_graph is None or len(U) > len(best_set):
            best_graph, best_set = h, U
    classes = {}
    U = mask_of(best_set)
    for v in best_graph.labels():
        if (U >> v) & 1:
            continue
        S = frozenset(iter_bits(best_graph.rows[v] & U))
        classes.setdefault(S, []).append(v)
    return best_graph, best_set, classes


def lower_bound_k(n, slack=1.05):
    """Independent-set size the random lower bound rules out at n vertices."""

    return math.ceil(slack * math.sqrt(2 * math.log2(3) * n))


def random_independent_vm_rate(n, samples, seed, k=None, engine=RECURSION):
    """Fraction of G(n, 1/2) samples with I_k as a vertex-minor.

    Defaults to the recursion engine: a sample without I_k forces the orbit
    engine through the whole orbit, which can pass ORBIT_CAP by n = 10.
    """

    k = lower_bound_k(n) if k is None else k
    hits = sum(contains_independent_vm(sample_uniform(n, derive_seed(seed, i)), k, engine)
               for i in range(samples))
    return hits / samples if samples else 0.0
