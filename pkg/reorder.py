"""Rewriting complementation sequences as disjoint singletons and pairs.

Given G, a block Vhat and a sequence seq over Vhat, ``reorder_sequence``
returns steps x_1..x_r with

  (I)   G o (x_i) - Vhat == G * seq - Vhat,
  (II)  the steps pairwise disjoint,
  (III) every label that appears exactly once in seq covered by some step.

The search processes one "special" vertex of Vhat at a time. Deleting it
leaves three cases (drop it, complement it, pivot it with a Vhat neighbor w);
a pivot case is solved recursively with w as the next special vertex and the
answer is folded back using

  G x vw * w         == G * w * v
  G x vw x wu        == G x vu
  G x vw * u * w     == G * u * v      (uw an edge of G x vw)
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

import config
from errors import BudgetExceeded, ReorderError, ShapeError
from graphs import (Graph, OpSequence, OrderedBipartiteGraph, apply_complementations,
                    apply_sequence, delete_vertex, delete_vertices, iter_bits,
                    local_complement, mask_of, pivot)

VM = "vm"
BIPARTITE_PIVOT = "bipartite_pivot"


def _with_pendants(G, vhat):
    """Add two fresh, non-adjacent pendant vertices on every vertex of Vhat.

    Operations inside Vhat restrict to induced subgraphs containing Vhat, so
    any answer for the enlarged graph is an answer for G.
    """

    base = G.graph if isinstance(G, OrderedBipartiteGraph) else G
    n = base.n + 2 * len(vhat)
    rows = list(base.rows) + [0] * (2 * len(vhat))
    present = base.present
    left = G.left if isinstance(G, OrderedBipartiteGraph) else 0
    for i, v in enumerate(vhat):
        for leaf in (base.n + 2 * i, base.n + 2 * i + 1):
            rows[leaf] = 1 << v
            rows[v] |= 1 << leaf
            present |= 1 << leaf
            if isinstance(G, OrderedBipartiteGraph) and not (G.left >> v) & 1:
                left |= 1 << leaf
    graph = Graph(n, present, tuple(rows))
    if isinstance(G, OrderedBipartiteGraph):
        return OrderedBipartiteGraph(graph, left)
    return graph


def _fold_pivot(v, w, tail):
    """Prefix the pivot at vw onto a solution whose special vertex was w."""

    used = {x for step in tail for x in step}
    if w not in used:
        return [(v, w)] + tail
    first = tail[0]
    if first == (w,):
        return [(w,), (v,)] + tail[1:]
    if len(first) == 2 and w in first:
        u = first[0] if first[1] == w else first[1]
        return [(v, u)] + tail[1:]
    if len(first) == 1 and len(tail) > 1 and tail[1] == (w,):
        return [first, (v,)] + tail[2:]
    raise ReorderError(f"special vertex {w} in unexpected position in {tail}")


def _vm_candidates(G, vhat, target, special):
    if not vhat:
        if G == target:
            yield []
        return
    v = special
    rest = vhat & ~(1 << v)
    nxt = rest.bit_length() - 1 if rest else None
    yield from _vm_candidates(delete_vertex(G, v), rest, target, nxt)
    for tail in _vm_candidates(delete_vertex(local_complement(G, v), v), rest, target, nxt):
        yield [(v,)] + tail
    for w in iter_bits(G.rows[v] & rest):
        for tail in _vm_candidates(delete_vertex(pivot(G, v, w), v), rest, target, w):
            yield _fold_pivot(v, w, tail)


def _pivot_candidates(B, vhat, target, special):
    if not vhat:
        if B == target:
            yield []
        return
    v = special
    rest = vhat & ~(1 << v)
    nxt = rest.bit_length() - 1 if rest else None
    yield from _pivot_candidates(delete_vertex(B, v), rest, target, nxt)
    for w in iter_bits(B.graph.rows[v] & rest):
        for tail in _pivot_candidates(delete_vertex(pivot(B, v, w), v), rest, target, w):
            if any(len(step) == 1 for step in tail):
                raise ReorderError("complementation in a pivot-only answer")
            yield _fold_pivot(v, w, tail)


def appears_once(seq, mode=VM):
    """Labels occurring exactly once; pivot pairs count each endpoint."""

    if mode == VM:
        counts = Counter(seq)
    else:
        counts = Counter(x for pair in seq for x in pair)
    return {x for x, count in counts.items() if count == 1}


def _effect(G, seq, mode):
    if mode == VM:
        return apply_complementations(G, seq)
    return apply_sequence(G, OpSequence(tuple(tuple(pair) for pair in seq)))


def reorder_sequence(G, vhat, seq, mode=VM):
    """Disjoint singleton/pair steps with the same effect as seq outside Vhat."""

    vhat = sorted(set(vhat))
    seq = [tuple(s) for s in seq] if mode == BIPARTITE_PIVOT else list(seq)
    used = {x for s in seq for x in s} if mode == BIPARTITE_PIVOT else set(seq)
    if not used <= set(vhat):
        raise ShapeError(f"sequence leaves Vhat: {sorted(used - set(vhat))}")
    if mode == VM and isinstance(G, OrderedBipartiteGraph):
        raise ShapeError("vm mode works on plain graphs")
    if mode == BIPARTITE_PIVOT and not isinstance(G, OrderedBipartiteGraph):
        raise ShapeError("bipartite_pivot mode needs an ordered bipartite graph")

    big = _with_pendants(G, vhat)
    target = delete_vertices(_effect(big, seq, mode), vhat)
    needed = appears_once(seq, mode)
    start = max(vhat) if vhat else None
    search = _vm_candidates if mode == VM else _pivot_candidates
    for steps in search(big, mask_of(vhat), target, start):
        if needed <= {x for step in steps for x in step}:
            return OpSequence(tuple(steps))
    raise ReorderError(f"no reordering of {seq} covers {sorted(needed)}")


def check_reordering(G, vhat, seq, ops, mode=VM):
    """Which of the three reordering properties ``ops`` satisfies."""

    seq = [tuple(s) for s in seq] if mode == BIPARTITE_PIVOT else list(seq)
    replay = delete_vertices(apply_sequence(G, ops), vhat)
    expected = delete_vertices(_effect(G, seq, mode), vhat)
    covered = set(ops.labels())
    return {
        "replay": replay == expected,
        "disjoint": ops.is_disjoint(),
        "covers_once": appears_once(seq, mode) <= covered,
    }


##############################################################################
# Gadget


def gadget_start(ghat):
    """First label of the P_3 copies; everything below belongs to Ghat."""

    return ghat.n


def build_gadget(ghat):
    """Ghat plus 2^(3h) disjoint P_3 copies, one per attachment pattern.

    Copy ``pattern`` occupies labels start + 3*pattern + p for p = 0, 1, 2 and
    its vertex p is joined to the j-th Vhat label (ascending) iff bit p*h + j
    of ``pattern`` is set.
    """

    vhat = ghat.labels()
    h = len(vhat)
    if h > config.MAX_GADGET_VHAT:
        raise BudgetExceeded(f"gadget for {h} vertices is too large")
    start = gadget_start(ghat)
    copies = 1 << (3 * h)
    rows = list(ghat.rows) + [0] * (3 * copies)
    for pattern in range(copies):
        a = start + 3 * pattern
        for x, y in ((a, a + 1), (a + 1, a + 2)):
            rows[x] |= 1 << y
            rows[y] |= 1 << x
        for p in range(3):
            for j, v in enumerate(vhat):
                if (pattern >> (p * h + j)) & 1:
                    rows[a + p] |= 1 << v
                    rows[v] |= 1 << (a + p)
    present = ghat.present | (((1 << (3 * copies)) - 1) << start)
    return Graph(start + 3 * copies, present, tuple(rows))


def gadget_embedding(ghat, extension, u1, u2):
    """Gadget labels (j1, j2) realising ``extension`` on Vhat + {u1, u2}."""

    vhat = ghat.labels()
    h = len(vhat)
    patterns = [0, 0, 0]
    second = 1 if extension.has_edge(u1, u2) else 2
    for j, v in enumerate(vhat):
        if extension.has_edge(u1, v):
            patterns[0] |= 1 << j
        if extension.has_edge(u2, v):
            patterns[second] |= 1 << j
    pattern = sum(bits << (p * h) for p, bits in enumerate(patterns))
    a = gadget_start(ghat) + 3 * pattern
    return a, a + second


@lru_cache(maxsize=256)
def _gadget_ops(ghat, seq):
    return reorder_sequence(build_gadget(ghat), ghat.labels(), list(seq))


def reorder_via_gadget(ghat, seq):
    """Steps that work for every graph G with G[Vhat] == Ghat."""

    if len(ghat) > config.MAX_GADGET_COMPOSITE_VHAT:
        raise BudgetExceeded("graph-independent reordering is limited to 3 vertices")
    return _gadget_ops(ghat, tuple(seq))
