"""Labeled graphs, ordered bipartite graphs and their elementary operations.

Graphs are immutable. Vertex labels are small integers that never change when
other vertices are deleted, so a sequence of operations recorded against a
big graph still makes sense against any of its induced subgraphs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import networkx as nx
import numpy as np

from errors import NoEdgeError, RangeError, ShapeError, VertexError
from f2 import BitMatrix


def iter_bits(mask):
    """Yield the set bit positions of ``mask`` in ascending order."""

    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(labels):
    mask = 0
    for v in labels:
        if v < 0:
            raise RangeError(f"negative label {v}")
        mask |= 1 << v
    return mask


##############################################################################
# Edge-set indexing
#
# Pairs {i < j} are numbered colexicographically: (0,1), (0,2), (1,2), (0,3)...
# Walk distributions index graphs by these bitmasks, so this is the one place
# the order is defined.


def pair_index(i, j):
    if i > j:
        i, j = j, i
    if i == j:
        raise RangeError(f"no pair index for the loop ({i}, {j})")
    return j * (j - 1) // 2 + i


def colex_pairs(k):
    return [(i, j) for j in range(k) for i in range(j)]


def cross_pairs(left, right):
    """L-R pairs of an ordered bipartite graph in colex order of labels."""

    pairs = [(min(a, b), max(a, b)) for a in left for b in right]
    return sorted(pairs, key=lambda p: (p[1], p[0]))


##############################################################################
# Graph


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple graph on stable integer labels.

    ``rows[v]`` is the neighborhood of v as a bitmask; rows of dead labels are
    zero and no live row mentions a dead label.
    """

    n: int
    present: int
    rows: tuple

    def __repr__(self):
        return f"<Graph {len(self)} vertices, {self.edge_count()} edges>"

    def key(self):
        return (self.present, tuple(self.rows[v] for v in iter_bits(self.present)))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __len__(self):
        return bin(self.present).count("1")

    @property
    def adj(self):
        return BitMatrix(self.n, self.n, self.rows)

    def labels(self):
        return tuple(iter_bits(self.present))

    def is_live(self, v):
        return 0 <= v < self.n and (self.present >> v) & 1 == 1

    def neighbors(self, v):
        """Neighborhood of v as a bitmask."""

        require_live(self, v)
        return self.rows[v]

    def has_edge(self, u, v):
        return self.is_live(u) and (self.rows[u] >> v) & 1 == 1

    def degree(self, v):
        return bin(self.neighbors(v)).count("1")

    def edges(self):
        return [(u, v) for u in iter_bits(self.present)
                for v in iter_bits(self.rows[u] >> (u + 1) << (u + 1))]

    def edge_count(self):
        return sum(bin(row).count("1") for row in self.rows) // 2

    def edge_mask(self, order=None):
        """Colex bitmask of the edge set, positions taken from ``order``.

        ``order`` defaults to the live labels ascending, so a graph on any
        k labels maps onto the index space of graphs on [k].
        """

        order = self.labels() if order is None else tuple(order)
        position = {v: p for p, v in enumerate(order)}
        mask = 0
        for u, v in self.edges():
            mask |= 1 << pair_index(position[u], position[v])
        return mask

    def relabel(self, mapping, n=None):
        """Copy with label v renamed to ``mapping[v]`` for every live v."""

        n = max(mapping.values(), default=-1) + 1 if n is None else n
        rows = [0] * n
        for v in iter_bits(self.present):
            rows[mapping[v]] = mask_of(mapping[u] for u in iter_bits(self.rows[v]))
        return Graph(n, mask_of(mapping[v] for v in iter_bits(self.present)), tuple(rows))


def require_live(G, *labels):
    for v in labels:
        if not G.is_live(v):
            raise VertexError(f"vertex {v} is not live")


def empty_graph(n):
    return Graph(n, (1 << n) - 1, (0,) * n)


def complete_graph(n):
    full = (1 << n) - 1
    return Graph(n, full, tuple(full ^ (1 << v) for v in range(n)))


def graph_from_edges(labels, edges, n=None):
    """Graph on ``labels`` (an int means range(labels)) with the given edges."""

    if isinstance(labels, int):
        labels = range(labels)
    labels = list(labels)
    n = max(labels, default=-1) + 1 if n is None else n
    present = mask_of(labels)
    if present >> n:
        raise RangeError(f"label beyond n={n}")
    rows = [0] * n
    for u, v in edges:
        if u == v:
            raise ShapeError(f"self-loop at {u}")
        if not ((present >> u) & 1 and (present >> v) & 1):
            raise VertexError(f"edge {u}{v} leaves the vertex set")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, present, tuple(rows))


def from_edge_mask(k, mask, labels=None):
    """Inverse of ``Graph.edge_mask`` for a graph on k vertices."""

    labels = tuple(range(k)) if labels is None else tuple(labels)
    edges = [(labels[i], labels[j]) for bit, (i, j) in enumerate(colex_pairs(k))
             if (mask >> bit) & 1]
    return graph_from_edges(labels, edges)


def path_graph(labels):
    labels = list(range(labels)) if isinstance(labels, int) else list(labels)
    return graph_from_edges(labels, zip(labels, labels[1:]))


def wheel_graph(n):
    """Hub 0 joined to a cycle on 1..n-1."""

    return from_networkx(nx.wheel_graph(n))


def from_networkx(g):
    return graph_from_edges(list(g.nodes), list(g.edges))


def to_networkx(G):
    g = nx.Graph()
    g.add_nodes_from(G.labels())
    g.add_edges_from(G.edges())
    return g


def to_graph6(G):
    """graph6 string of G; live labels are written in ascending order."""

    data = nx.to_graph6_bytes(to_networkx(G), nodes=list(G.labels()), header=False)
    return data.decode("ascii").strip()


def from_graph6(text):
    return from_networkx(nx.from_graph6_bytes(text.strip().encode("ascii")))


##############################################################################
# Operations on Graph


def local_complement(G, v):
    """G*v: complement the subgraph induced on N(v)."""

    require_live(G, v)
    rows = list(G.rows)
    nbrs = rows[v]
    for u in iter_bits(nbrs):
        rows[u] ^= nbrs ^ (1 << u)
    return Graph(G.n, G.present, tuple(rows))


def _swap_labels(rows, u, v):
    rows[u], rows[v] = rows[v], rows[u]
    both = (1 << u) | (1 << v)
    for x, row in enumerate(rows):
        if bin(row & both).count("1") == 1:
            rows[x] = row ^ both


def _toggle_parts(rows, *parts):
    """Toggle every edge between two distinct parts."""

    everything = 0
    for part in parts:
        everything |= part
    for part in parts:
        others = everything & ~part
        for x in iter_bits(part):
            rows[x] ^= others


def pivot(G, u, v):
    """G x uv, which equals G*u*v*u.

    Computed as the symmetric difference with the complete tripartite graph on
    N(u)&N(v), N(u)-N(v)-v, N(v)-N(u)-u followed by swapping labels u and v.
    On an OrderedBipartiteGraph u and v also trade parts.
    """

    if isinstance(G, OrderedBipartiteGraph):
        return _ordered_pivot(G, u, v)
    require_live(G, u, v)
    if not G.has_edge(u, v):
        raise NoEdgeError(f"{u}{v} is not an edge")
    rows = list(G.rows)
    nu = rows[u] & ~(1 << v)
    nv = rows[v] & ~(1 << u)
    _toggle_parts(rows, nu & nv, nu & ~nv, nv & ~nu)
    _swap_labels(rows, u, v)
    return Graph(G.n, G.present, tuple(rows))


def attempted_pivot(G, u, v):
    """Pivot at uv when uv is an edge, otherwise G unchanged."""

    base = G.graph if isinstance(G, OrderedBipartiteGraph) else G
    require_live(base, u, v)
    if base.has_edge(u, v):
        return pivot(G, u, v)
    return G


def induced_subgraph(G, labels):
    """G[U]."""

    labels = list(labels)
    if isinstance(G, OrderedBipartiteGraph):
        keep = mask_of(labels)
        return OrderedBipartiteGraph(induced_subgraph(G.graph, labels), G.left & keep)
    require_live(G, *labels)
    keep = mask_of(labels)
    rows = tuple(row & keep if (keep >> x) & 1 else 0 for x, row in enumerate(G.rows))
    return Graph(G.n, keep, rows)


def delete_vertices(G, labels):
    """G - U."""

    base = G.graph if isinstance(G, OrderedBipartiteGraph) else G
    drop = mask_of(labels)
    require_live(base, *iter_bits(drop))
    return induced_subgraph(G, iter_bits(base.present & ~drop))


def delete_vertex(G, v):
    return delete_vertices(G, (v,))


##############################################################################
# Templates


@dataclass(frozen=True)
class Clique:
    S: frozenset


@dataclass(frozen=True)
class Tripartite:
    """Complete tripartite graph on S-T, T-S and S&T."""

    S: frozenset
    T: frozenset


@dataclass(frozen=True)
class Biclique:
    S: frozenset
    T: frozenset


def toggle_template(G, template):
    """Symmetric difference of G's edge set with the template's edges."""

    if isinstance(G, OrderedBipartiteGraph):
        if not isinstance(template, Biclique):
            raise ShapeError("only biclique templates keep a graph bipartite")
        if not (mask_of(template.S) & ~G.left == 0 and mask_of(template.T) & G.left == 0):
            raise ShapeError("biclique must take S from L and T from R")
        return OrderedBipartiteGraph(toggle_template(G.graph, template), G.left)

    for label in set(template.S) | set(getattr(template, "T", ())):
        if not 0 <= label < G.n:
            raise RangeError(f"label {label} out of range")
    require_live(G, *template.S)
    rows = list(G.rows)
    s = mask_of(template.S)
    if isinstance(template, Clique):
        _toggle_parts(rows, *(1 << x for x in iter_bits(s)))
    elif isinstance(template, Tripartite):
        t = mask_of(template.T)
        require_live(G, *template.T)
        _toggle_parts(rows, s & ~t, t & ~s, s & t)
    elif isinstance(template, Biclique):
        t = mask_of(template.T)
        require_live(G, *template.T)
        if s & t:
            raise ShapeError("biclique sides overlap")
        _toggle_parts(rows, s, t)
    else:
        raise ShapeError(f"unknown template {template!r}")
    return Graph(G.n, G.present, tuple(rows))


##############################################################################
# OrderedBipartiteGraph


@dataclass(frozen=True, eq=False)
class OrderedBipartiteGraph:
    """Bipartite graph (L, R, E) whose parts are part of its identity."""

    graph: Graph
    left: int

    def __post_init__(self):
        if self.left & ~self.graph.present:
            raise VertexError("L contains dead labels")
        for v in iter_bits(self.left):
            if self.graph.rows[v] & self.left:
                raise ShapeError(f"edge inside L at {v}")
        for v in iter_bits(self.right):
            if self.graph.rows[v] & self.right:
                raise ShapeError(f"edge inside R at {v}")

    def __repr__(self):
        return f"<OrderedBipartiteGraph L={sorted(self.L)} R={sorted(self.R)}>"

    def key(self):
        return (self.left, self.graph.key())

    def __eq__(self, other):
        if not isinstance(other, OrderedBipartiteGraph):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def right(self):
        return self.graph.present & ~self.left

    @property
    def L(self):
        return frozenset(iter_bits(self.left))

    @property
    def R(self):
        return frozenset(iter_bits(self.right))

    @property
    def adj(self):
        """R x L adjacency matrix, both sides in ascending label order."""

        left = sorted(self.L)
        return BitMatrix.from_rows(
            [[self.graph.has_edge(r, l) for l in left] for r in sorted(self.R)],
            cols=len(left))

    def labels(self):
        return self.graph.labels()

    def edges(self):
        """Edges as (l, r) with l in L."""

        return [(l, r) for l in sorted(self.L) for r in iter_bits(self.graph.rows[l])]

    def edge_mask(self):
        mask = 0
        for bit, (a, b) in enumerate(cross_pairs(self.L, self.R)):
            if self.graph.has_edge(a, b):
                mask |= 1 << bit
        return mask


def bipartite_from_edges(left, right, edges, n=None):
    left, right = list(left), list(right)
    if set(left) & set(right):
        raise ShapeError("L and R overlap")
    graph = graph_from_edges(left + right, edges, n=n)
    return OrderedBipartiteGraph(graph, mask_of(left))


def bipartite_from_edge_mask(left, right, mask):
    pairs = cross_pairs(left, right)
    edges = [pair for bit, pair in enumerate(pairs) if (mask >> bit) & 1]
    return bipartite_from_edges(left, right, edges)


def _ordered_pivot(B, u, v):
    if (B.left >> v) & 1:
        u, v = v, u
    if not ((B.left >> u) & 1 and (B.right >> v) & 1):
        raise NoEdgeError(f"{u}{v} is not an L-R pair")
    return OrderedBipartiteGraph(pivot(B.graph, u, v), B.left ^ (1 << u) ^ (1 << v))


def bipartite_to_json(B):
    return json.dumps({"L": sorted(B.L), "R": sorted(B.R),
                       "edges": [list(edge) for edge in B.edges()]})


def bipartite_from_json(text):
    data = json.loads(text)
    return bipartite_from_edges(data["L"], data["R"], [tuple(e) for e in data["edges"]])


##############################################################################
# Operation sequences


@dataclass(frozen=True)
class OpSequence:
    """Ordered steps; a 1-tuple is a local complementation, a 2-tuple a pivot."""

    steps: tuple = ()

    def __post_init__(self):
        steps = tuple(tuple(sorted(step)) for step in self.steps)
        for step in steps:
            if len(step) not in (1, 2) or len(set(step)) != len(step):
                raise ShapeError(f"bad step {step}")
        object.__setattr__(self, "steps", steps)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def labels(self):
        return [v for step in self.steps for v in step]

    def is_disjoint(self):
        labels = self.labels()
        return len(labels) == len(set(labels))

    def to_json(self):
        return json.dumps([list(step) for step in self.steps])

    @classmethod
    def from_json(cls, text):
        return cls(tuple(tuple(step) for step in json.loads(text)))


def apply_sequence(G, ops):
    for step in ops:
        if len(step) == 1:
            if isinstance(G, OrderedBipartiteGraph):
                raise ShapeError("local complementation breaks bipartiteness")
            G = local_complement(G, step[0])
        else:
            G = pivot(G, *step)
    return G


def apply_complementations(G, labels):
    """G*v_1*...*v_r for a plain label list."""

    for v in labels:
        G = local_complement(G, v)
    return G


def build_gj(G, base, J, mode="plain"):
    """G_J: complement (or attempt to pivot) at base[i] for i in J, increasing.

    In ``bipartite_attempted`` mode ``base`` holds pairs (v_i, w_i) with v_i in
    L and w_i in R. Nothing is deleted.
    """

    for i in sorted(J):
        if mode == "plain":
            G = local_complement(G, base[i])
        elif mode == "bipartite_attempted":
            G = attempted_pivot(G, *base[i])
        else:
            raise ShapeError(f"unknown G_J mode {mode!r}")
    return G


##############################################################################
# Sampling


def generator(seed):
    """Seeded counter-based generator shared by every random draw."""

    return np.random.Generator(np.random.Philox(seed))


def derive_seed(master, index):
    """Seed of trial ``index`` under ``master``: SeedSequence([master, index]).

    Trials are independent of each other and can be replayed one at a time.
    """

    state = np.random.SeedSequence([master, index]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def _bits_to_mask(bits):
    packed = np.packbits(np.asarray(bits, dtype=np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def random_graph(n, rng):
    bits = rng.integers(0, 2, size=n * (n - 1) // 2, dtype=np.uint8)
    return from_edge_mask(n, _bits_to_mask(bits))


def random_bipartite(l, r, rng):
    """Uniform ordered bipartite graph with L = [0, l) and R = [l, l + r)."""

    bits = rng.integers(0, 2, size=l * r, dtype=np.uint8)
    return bipartite_from_edge_mask(range(l), range(l, l + r), _bits_to_mask(bits))


def sample_uniform(shape, seed):
    """G(n, 1/2) for an int shape, G(l, r, 1/2) for an (l, r) shape."""

    rng = generator(seed)
    if isinstance(shape, int):
        return random_graph(shape, rng)
    l, r = shape
    return random_bipartite(l, r, rng)


def all_graphs(k, labels=None):
    """Every labeled graph on k vertices, in edge-mask order."""

    for mask in range(1 << (k * (k - 1) // 2)):
        yield from_edge_mask(k, mask, labels)


def all_bipartite_graphs(l, r):
    """Every ordered bipartite graph with L = [0, l) and R = [l, l + r)."""

    left, right = range(l), range(l, l + r)
    for mask in range(1 << (l * r)):
        yield bipartite_from_edge_mask(left, right, mask)
