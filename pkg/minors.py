"""Exact vertex-minor and pivot-minor decisions.

The searches delete one vertex outside the target at a time. A vertex-minor
H of G avoiding v is a vertex-minor of G - v, G*v - v or G x vu - v for any
single neighbor u; for pivot-minors only the first and last branch remain.
"""

from __future__ import annotations

import enum
import json
import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import config
from errors import BudgetExceeded, LabelError, OrbitCapExceeded, RangeError
from graphs import (OpSequence, OrderedBipartiteGraph, apply_sequence,
                    delete_vertex, delete_vertices, from_edge_mask,
                    induced_subgraph, iter_bits, local_complement, pivot)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinorWitness:
    """Operations applied to the whole graph, then the listed deletions.

    Deleting a vertex commutes with operations at other vertices, so any
    interleaving found by the search can be written in this form.
    """

    ops: OpSequence
    deletions: tuple

    def to_json(self):
        return json.dumps({"ops": [list(step) for step in self.ops],
                           "deletions": list(self.deletions)})

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls(OpSequence(tuple(tuple(s) for s in data["ops"])), tuple(data["deletions"]))


def replay(G, witness):
    return delete_vertices(apply_sequence(G, witness.ops), witness.deletions)


class Budget:
    """Counts expanded recursion nodes."""

    def __init__(self, limit=None):
        self.limit = config.MINOR_BUDGET if limit is None else limit
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.limit:
            raise BudgetExceeded(f"minor search passed {self.limit} nodes")


##############################################################################
# Orbits


def _orbit_paths(start, moves, cap):
    """BFS from ``start``; maps every reachable graph to a step path."""

    paths = {start: ()}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for step, nxt in moves(current):
            if nxt not in paths:
                paths[nxt] = paths[current] + (step,)
                if len(paths) > cap:
                    raise OrbitCapExceeded(f"orbit larger than {cap}")
                queue.append(nxt)
    return paths


def lc_moves(G):
    return [((v,), local_complement(G, v)) for v in G.labels()]


def pivot_moves(G):
    return [((u, v), pivot(G, u, v)) for u, v in G.edges()]


@lru_cache(maxsize=1 << 14)
def _lc_paths(G, cap):
    return _orbit_paths(G, lc_moves, cap)


@lru_cache(maxsize=1 << 14)
def _pivot_paths(G, cap):
    return _orbit_paths(G, pivot_moves, cap)


def local_equivalence_orbit(G, cap=None):
    """All graphs reachable from G by local complementations."""

    cap = config.ORBIT_CAP if cap is None else cap
    return frozenset(_lc_paths(G, cap))


def pivot_equivalence_orbit(G, cap=None):
    """All graphs (or ordered bipartite graphs) reachable by pivots."""

    cap = config.ORBIT_CAP if cap is None else cap
    return frozenset(_pivot_paths(G, cap))


@lru_cache(maxsize=1 << 12)
def _lc_class_masks(G):
    return frozenset(g.edge_mask() for g in _lc_paths(G, config.ORBIT_CAP))


##############################################################################
# Vertex-minors


def _smallest(mask):
    return (mask & -mask).bit_length() - 1


def _vm_branches(G, v):
    """(prefix ops, graph) for the three cases of deleting v."""

    branches = [((), G)]
    nbrs = G.rows[v]
    if nbrs & (nbrs - 1):
        branches.append((((v,),), local_complement(G, v)))
    if nbrs:
        u = _smallest(nbrs)
        branches.append((((u, v),), pivot(G, v, u)))
    return branches


def _vm_search(G, H, budget, failed):
    budget.tick()
    extra = G.present & ~H.present
    if not extra:
        path = _lc_paths(G, config.ORBIT_CAP).get(H)
        return None if path is None else list(path)
    key = G.key()
    if key in failed:
        return None
    v = extra.bit_length() - 1
    for prefix, branch in _vm_branches(G, v):
        rest = _vm_search(delete_vertex(branch, v), H, budget, failed)
        if rest is not None:
            return list(prefix) + rest
    failed.add(key)
    return None


def _check_labels(G, H):
    if H.present & ~G.present:
        raise LabelError(f"labels {sorted(iter_bits(H.present & ~G.present))} not in G")


def is_vertex_minor(G, H, budget=None):
    """A MinorWitness if H is a vertex-minor of G on exactly its labels, else None."""

    _check_labels(G, H)
    ops = _vm_search(G, H, Budget(budget), set())
    if ops is None:
        return None
    deletions = tuple(sorted(iter_bits(G.present & ~H.present), reverse=True))
    return MinorWitness(OpSequence(tuple(ops)), deletions)


def _reach(G, keep, budget, memo):
    budget.tick()
    extra = G.present & ~keep
    if not extra:
        return _lc_class_masks(G)
    key = G.key()
    if key in memo:
        return memo[key]
    v = extra.bit_length() - 1
    found = set()
    for _, branch in _vm_branches(G, v):
        found |= _reach(delete_vertex(branch, v), keep, budget, memo)
    memo[key] = frozenset(found)
    return memo[key]


def vertex_minors_on(G, U, budget=None):
    """Every labeled graph on U that is a vertex-minor of G."""

    U = sorted(U)
    keep = sum(1 << u for u in U)
    if keep & ~G.present:
        raise LabelError("U contains dead labels")
    masks = _reach(G, keep, budget if isinstance(budget, Budget) else Budget(budget), {})
    return {from_edge_mask(len(U), mask, U) for mask in masks}


##############################################################################
# Universality


class Verdict(enum.Enum):
    UNIVERSAL = "universal"
    NOT_UNIVERSAL = "not_universal"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass
class UniversalityResult:
    verdict: Verdict
    witness: tuple = None
    nodes: int = 0

    def __bool__(self):
        return self.verdict is Verdict.UNIVERSAL


def _sweep_gj(G, U, full, budget):
    """Graphs on U seen in G_J[U] over subsets J of the other vertices.

    Stops as soon as all ``full`` graphs have turned up.
    """

    others = [v for v in G.labels() if v not in U]
    found = set()

    def visit(g, i):
        budget.tick()
        if i == len(others):
            found.update(_lc_class_masks(induced_subgraph(g, U)))
            return len(found) == full
        return visit(g, i + 1) or visit(local_complement(g, others[i]), i + 1)

    visit(G, 0)
    return found


def is_k_vm_universal(G, k, budget=None):
    """Decide whether every graph on every k-subset of labels is a vertex-minor."""

    labels = G.labels()
    if k > len(labels):
        raise RangeError(f"k={k} exceeds {len(labels)} live vertices")
    full = 1 << (k * (k - 1) // 2)
    budget = Budget(budget)
    try:
        for U in combinations(labels, k):
            found = _sweep_gj(G, U, full, budget)
            if len(found) < full:
                logger.debug("G_J sweep incomplete on %s, running exact search", U)
                keep = sum(1 << u for u in U)
                found |= _reach(G, keep, budget, {})
            if len(found) < full:
                missing = min(set(range(full)) - found)
                H = from_edge_mask(k, missing, U)
                return UniversalityResult(Verdict.NOT_UNIVERSAL, (U, H), budget.nodes)
    except BudgetExceeded:
        return UniversalityResult(Verdict.BUDGET_EXCEEDED, None, budget.nodes)
    return UniversalityResult(Verdict.UNIVERSAL, None, budget.nodes)


##############################################################################
# Pivot-minors of ordered bipartite graphs


def _pm_search(B, H, budget, failed):
    budget.tick()
    extra = B.graph.present & ~H.graph.present
    if not extra:
        path = _pivot_paths(B, config.ORBIT_CAP).get(H)
        return None if path is None else list(path)
    key = B.key()
    if key in failed:
        return None
    v = extra.bit_length() - 1
    branches = [((), B)]
    nbrs = B.graph.rows[v]
    if nbrs:
        u = _smallest(nbrs)
        branches.append((((u, v),), pivot(B, v, u)))
    for prefix, branch in branches:
        rest = _pm_search(delete_vertex(branch, v), H, budget, failed)
        if rest is not None:
            return list(prefix) + rest
    failed.add(key)
    return None


def is_pivot_minor_ordered(G, H, budget=None):
    """Witness that H is a pivot-minor of G with matching parts, else None."""

    if not isinstance(G, OrderedBipartiteGraph) or not isinstance(H, OrderedBipartiteGraph):
        raise LabelError("ordered pivot-minors compare two ordered bipartite graphs")
    _check_labels(G.graph, H.graph)
    ops = _pm_search(G, H, Budget(budget), set())
    if ops is None:
        return None
    deletions = tuple(sorted(iter_bits(G.graph.present & ~H.graph.present), reverse=True))
    return MinorWitness(OpSequence(tuple(ops)), deletions)


def is_pivot_minor(G, H, budget=None):
    """Plain-graph pivot-minor test by the same recursion."""

    _check_labels(G, H)

    def search(g, failed):
        budget_.tick()
        extra = g.present & ~H.present
        if not extra:
            return H in _pivot_paths(g, config.ORBIT_CAP)
        if g.key() in failed:
            return False
        v = extra.bit_length() - 1
        candidates = [g]
        if g.rows[v]:
            candidates.append(pivot(g, v, _smallest(g.rows[v])))
        if any(search(delete_vertex(c, v), failed) for c in candidates):
            return True
        failed.add(g.key())
        return False

    budget_ = Budget(budget)
    return search(G, set())
