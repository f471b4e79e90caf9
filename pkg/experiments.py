"""Seeded experiment campaigns.

Every runner returns a ResultRecord whose aggregates are a pure function of
its per-trial rows (see ``AGGREGATORS``), and every trial draws from its own
seed ``derive_seed(master, trial)`` so a single trial can be replayed alone.
"""

from __future__ import annotations

import json
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from math import comb

import numpy as np
from scipy import stats

import config
from errors import ConfigError, ReorderError
from graphs import (all_graphs, attempted_pivot, build_gj, delete_vertex, derive_seed,
                    generator, induced_subgraph, local_complement, pivot, random_bipartite,
                    random_graph, sample_uniform, to_graph6)
from matroids import (CONTRACT, DELETE, align_partition, all_matroids, basis_variance_bound,
                      bases_normalizer, count_bases, enumerate_matroids,
                      exact_mean_bases, fundamental_graph, is_minor,
                      matroid_from_fundamental, matroid_minor_op,
                      rank_distribution_uniform_matroid, random_matroid,
                      sample_matroid_any_rank)
from minors import (Verdict, is_k_vm_universal, is_pivot_minor_ordered,
                    local_equivalence_orbit, vertex_minors_on)
from ramsey import vm_ramsey_search
from reorder import check_reordering, reorder_sequence, reorder_via_gadget
from walks import (BPIV, COM, PIV, bipartite_mixing_bound, linf_distance_to_uniform,
                   mixing_bound, point_mass, run_recipe)

logger = logging.getLogger(__name__)

##############################################################################
# Closed-form constants

C_VM = 1 / (2 * math.log2(4 / 3))
C_LOWER = 1 / (2 * math.log2(3))
C_PIVOT = 2 / math.log2(16 / 13)
C_MATROID = 1 / (2 * math.log2(8 / 7)) + 1 / 4


def universal_size(k, eps):
    """Vertices after which G(n, 1/2) is k-vm-universal with probability 1 - eps."""

    return math.ceil(C_VM * k * k + 16 * k * math.log2(k) + 4 * math.log2(1 / eps))


def minor_failure_bound(n, k):
    """Chance a fixed H on k fixed labels is not a vertex-minor of G(n + k, 1/2)."""

    return 2 ** (2 * k) * 0.75 ** n + 2.0 ** (-n + comb(k, 2) + 2 * k * math.log2(n))


def universality_failure_bound(n, k):
    """Union bound over all (U, H) for G(n, 1/2)."""

    return comb(n, k) * 2 ** comb(k, 2) * minor_failure_bound(n - k, k)


##############################################################################
# Config and record


@dataclass
class ExperimentConfig:
    experiment: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    output: str = None

    def __post_init__(self):
        if self.experiment not in RUNNERS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ConfigError(f"seed {self.seed} is not a 64-bit value")

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(data["experiment"], dict(data.get("params", {})),
                       int(data.get("seed", 0)), data.get("output"))
        except KeyError as exc:
            raise ConfigError(f"config is missing {exc}") from None

    @classmethod
    def from_json(cls, path):
        with open(path) as config_file:
            return cls.from_dict(json.load(config_file))

    def to_dict(self):
        return asdict(self)


@dataclass
class ResultRecord:
    config: dict
    trials: list
    aggregates: dict
    wall_time: float = 0.0

    def to_dict(self):
        return asdict(self)

    def recompute(self):
        """Aggregates from the stored trials alone."""

        experiment = self.config["experiment"]
        return AGGREGATORS[experiment](self.trials, self.config["params"])


def _map(fn, items, jobs):
    """Order-preserving map, fanned out over processes when jobs > 1."""

    if jobs <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _record(experiment, params, seed, trials, started):
    cfg = {"experiment": experiment, "params": params, "seed": seed}
    aggregates = AGGREGATORS[experiment](trials, params)
    return ResultRecord(cfg, trials, aggregates, time.perf_counter() - started)


def wilson_interval(successes, total):
    if total == 0:
        return (0.0, 1.0)
    ci = stats.binomtest(successes, total).proportion_ci(confidence_level=0.95, method="wilson")
    return (float(ci.low), float(ci.high))


##############################################################################
# Universality


def _universality_trial(args):
    n, k, budget, seed, index = args
    G = sample_uniform(n, seed)
    result = is_k_vm_universal(G, k, budget)
    return {"trial": index, "n": n, "seed": seed, "outcome": result.verdict.value,
            "nodes": result.nodes}


def _rate(rows):
    done = [row for row in rows if row["outcome"] != Verdict.BUDGET_EXCEEDED.value]
    hits = sum(row["outcome"] == Verdict.UNIVERSAL.value for row in done)
    low, high = wilson_interval(hits, len(done))
    return {"completed": len(done), "universal": hits,
            "budget_exceeded": len(rows) - len(done),
            "rate": hits / len(done) if done else None, "low": low, "high": high}


def aggregate_universality(trials, params):
    return {**_rate(trials), "failure_bound": universality_failure_bound(params["n"], params["k"])}


def run_universality(n, k, trials, budget=None, seed=0, jobs=1):
    """Empirical k-vm-universality rate of G(n, 1/2)."""

    started = time.perf_counter()
    budget = config.MINOR_BUDGET if budget is None else budget
    args = [(n, k, budget, derive_seed(seed, i), i) for i in range(trials)]
    rows = _map(_universality_trial, args, jobs)
    logger.info("universality n=%d k=%d: %s", n, k, _rate(rows))
    params = {"n": n, "k": k, "trials": trials, "budget": budget}
    return _record("universality", params, seed, rows, started)


def aggregate_universality_trend(trials, params):
    by_n = {n: _rate([row for row in trials if row["n"] == n]) for n in params["ns"]}
    rates = [by_n[n]["rate"] for n in params["ns"]]
    if None in rates:
        trend = "inconclusive"
    elif all(a < b for a, b in zip(rates, rates[1:])):
        trend = "increasing"
    elif all(a < b or by_n[m]["high"] >= by_n[n]["low"]
             for (m, a), (n, b) in zip(zip(params["ns"], rates), zip(params["ns"][1:], rates[1:]))):
        trend = "inconclusive"
    else:
        trend = "not_increasing"
    return {"by_n": {str(n): rate for n, rate in by_n.items()}, "trend": trend}


def run_universality_trend(ns, k, trials, budget=None, seed=0, jobs=1):
    """Universality rates across n; overlapping intervals read as inconclusive."""

    started = time.perf_counter()
    budget = config.MINOR_BUDGET if budget is None else budget
    args = [(n, k, budget, derive_seed(seed, i * len(ns) + t), i)
            for t, n in enumerate(ns) for i in range(trials)]
    rows = _map(_universality_trial, args, jobs)
    params = {"ns": list(ns), "k": k, "trials": trials, "budget": budget}
    return _record("universality_trend", params, seed, rows, started)


##############################################################################
# Second moment of X = #{J : G_J[U] = H}


def walsh_hadamard(values):
    """Unnormalised fast Walsh-Hadamard transform of a length-2^m vector."""

    a = np.array(values, dtype=np.float64)
    h = 1
    while h < a.size:
        a = a.reshape(-1, 2 * h)
        left, right = a[:, :h].copy(), a[:, h:].copy()
        a[:, :h] = left + right
        a[:, h:] = left - right
        a = a.reshape(-1)
        h *= 2
    return a


def _popcounts(m):
    return np.array([bin(x).count("1") for x in range(1 << m)])


def pair_agreement_by_distance(codes, m):
    """P[code(J) == code(J')] over uniform pairs at each |J xor J'| = d.

    ``codes[J]`` is the restricted graph of G_J; pairs are counted through
    the XOR autocorrelation of each class indicator.
    """

    size = 1 << m
    spectrum = np.zeros(size)
    for code in np.unique(codes):
        spectrum += walsh_hadamard(codes == code) ** 2
    agree = walsh_hadamard(spectrum) / size
    weights = _popcounts(m)
    return [float(agree[weights == d].sum() / (size * comb(m, d))) for d in range(m + 1)]


def _restricted_mask(rows, order):
    mask, bit = 0, 0
    for j in range(len(order)):
        for i in range(j):
            if (rows[order[i]] >> order[j]) & 1:
                mask |= 1 << bit
            bit += 1
    return mask


def gj_codes(G, base, U):
    """codes[J] = edge mask of G_J[U] for every J, sharing prefixes."""

    codes = np.zeros(1 << len(base), dtype=np.int64)

    def visit(g, i, J):
        if i == len(base):
            codes[J] = _restricted_mask(g.rows, U)
            return
        visit(g, i + 1, J)
        visit(local_complement(g, base[i]), i + 1, J | (1 << i))

    visit(G, 0, 0)
    return codes


def gj_codes_bipartite(B, base, U1, U2):
    """Attempted-pivot analogue; codes are U1 x U2 edge masks."""

    codes = np.zeros(1 << len(base), dtype=np.int64)

    def read(b):
        mask, bit = 0, 0
        for u2 in U2:
            for u1 in U1:
                if b.graph.has_edge(u1, u2):
                    mask |= 1 << bit
                bit += 1
        return mask

    def visit(b, i, J):
        if i == len(base):
            codes[J] = read(b)
            return
        visit(b, i + 1, J)
        visit(attempted_pivot(b, *base[i]), i + 1, J | (1 << i))

    visit(B, 0, 0)
    return codes


def _second_moment_trial(args):
    n, k, target, seed, index = args
    rng = generator(seed)
    G = random_graph(n + k, rng)
    codes = gj_codes(G, list(range(n)), list(range(n, n + k)))
    row = {"trial": index, "seed": seed, "X": int((codes == target).sum())}
    for d, p in enumerate(pair_agreement_by_distance(codes, n)):
        row[f"p_d{d}"] = p
    return row


def _bipartite_second_moment_trial(args):
    m, k1, k2, target, seed, index = args
    rng = generator(seed)
    B = random_bipartite(m + k1, m + k2, rng)
    left = m + k1
    base = [(i, left + i) for i in range(m)]
    codes = gj_codes_bipartite(B, base, list(range(m, left)), list(range(left + m, left + m + k2)))
    row = {"trial": index, "seed": seed, "X": int((codes == target).sum())}
    for d, p in enumerate(pair_agreement_by_distance(codes, m)):
        row[f"p_d{d}"] = p
    return row


def _moment_summary(trials, m, expected_x, chance, bound_at, mixed_from):
    xs = np.array([row["X"] for row in trials], dtype=np.float64)
    count = len(xs)
    mean = float(xs.mean()) if count else 0.0
    var = float(xs.var(ddof=1)) if count > 1 else 0.0
    sigma = math.sqrt(var / count) if count else 0.0
    bins = []
    ok = True
    for d in range(m + 1):
        ps = np.array([row[f"p_d{d}"] for row in trials], dtype=np.float64)
        p = float(ps.mean()) if count else 0.0
        p_sigma = float(ps.std(ddof=1) / math.sqrt(count)) if count > 1 else 0.0
        bound = bound_at(d)
        within = abs(p - chance) <= bound + 3 * p_sigma
        if d >= mixed_from:
            ok = ok and within
        bins.append({"d": d, "p": p, "sigma": p_sigma, "bound": bound, "within": within})
    return {
        "mean_X": mean, "var_X": var, "sigma_mean": sigma, "expected_X": expected_x,
        "mean_within_3_sigma": abs(mean - expected_x) <= 3 * sigma,
        "chance": chance, "bins": bins, "mixed_bins_within": ok,
    }


def aggregate_second_moment(trials, params):
    n, k = params["n"], params["k"]
    edges = comb(k, 2)
    return _moment_summary(trials, n, 2.0 ** (n - edges), 2.0 ** -edges,
                           lambda d: 2.0 ** (2 * k - edges - d), 2 * k + 1)


def run_second_moment(n, k, trials, seed=0, target=0, jobs=1):
    """X over all 2^n subsets J for sampled G(n + k, 1/2) with U the last k labels."""

    if n > 18:
        raise ConfigError(f"2^{n} subsets per graph is beyond the second-moment budget")
    started = time.perf_counter()
    args = [(n, k, target, derive_seed(seed, i), i) for i in range(trials)]
    rows = _map(_second_moment_trial, args, jobs)
    params = {"n": n, "k": k, "trials": trials, "target": target}
    return _record("second_moment", params, seed, rows, started)


def aggregate_bipartite_second_moment(trials, params):
    m, k1, k2 = params["m"], params["k1"], params["k2"]
    cells = k1 * k2
    return _moment_summary(trials, m, 2.0 ** (m - cells), 2.0 ** -cells,
                           lambda d: 0.75 ** d, 1)


def run_bipartite_second_moment(m, k1, k2, trials, seed=0, target=0, jobs=1):
    """Attempted-pivot G_J statistics on G(m + k1, m + k2, 1/2)."""

    if m > 18:
        raise ConfigError(f"2^{m} subsets per graph is beyond the second-moment budget")
    started = time.perf_counter()
    args = [(m, k1, k2, target, derive_seed(seed, i), i) for i in range(trials)]
    rows = _map(_bipartite_second_moment_trial, args, jobs)
    params = {"m": m, "k1": k1, "k2": k2, "trials": trials, "target": target}
    return _record("bipartite_second_moment", params, seed, rows, started)


def _independence_trial(args):
    n, k, seed, index = args
    G = random_graph(n + k, generator(seed))
    base, U = list(range(n)), list(range(n, n + k))
    first = build_gj(G, base, range(n // 2))
    second = build_gj(G, base, range(n // 2, n))
    a = _restricted_mask(first.rows, U)
    b = a ^ _restricted_mask(second.rows, U)
    return {"trial": index, "seed": seed, "restricted": a, "difference": b}


def aggregate_symdiff_independence(trials, params):
    size = 1 << comb(params["k"], 2)
    table = np.zeros((size, size))
    for row in trials:
        table[row["restricted"], row["difference"]] += 1
    table = table[table.sum(axis=1) > 0][:, table.sum(axis=0) > 0]
    if min(table.shape) < 2:
        return {"p_value": None, "independent": None}
    chi2, p_value, _, _ = stats.chi2_contingency(table)
    return {"chi2": float(chi2), "p_value": float(p_value), "independent": bool(p_value > 0.01)}


def run_symdiff_independence(n, k, trials, seed=0, jobs=1):
    """Joint law of G_J[U] and (G_J xor G_J')[U] for J, J' the two halves of [n]."""

    started = time.perf_counter()
    args = [(n, k, derive_seed(seed, i), i) for i in range(trials)]
    rows = _map(_independence_trial, args, jobs)
    params = {"n": n, "k": k, "trials": trials}
    return _record("symdiff_independence", params, seed, rows, started)


##############################################################################
# Matroids


def _bases_trial(args):
    r, n, seed, index = args
    M = random_matroid(r, n, generator(seed))
    return {"kind": "bases", "trial": index, "seed": seed, "value": count_bases(M)}


def _rank_trial(args):
    n, seed, index = args
    return {"kind": "rank", "trial": index, "seed": seed,
            "value": sample_matroid_any_rank(n, seed).rank}


def _pooled_chisquare(observed, expected, minimum=5.0):
    """Chi-square after merging adjacent cells until each expects >= minimum."""

    obs_groups, exp_groups = [], []
    obs_acc = exp_acc = 0.0
    for o, e in zip(observed, expected):
        obs_acc += o
        exp_acc += e
        if exp_acc >= minimum:
            obs_groups.append(obs_acc)
            exp_groups.append(exp_acc)
            obs_acc = exp_acc = 0.0
    if exp_acc and exp_groups:
        obs_groups[-1] += obs_acc
        exp_groups[-1] += exp_acc
    if len(obs_groups) < 2:
        return None
    return float(stats.chisquare(obs_groups, exp_groups).pvalue)


def normalization_check(n, r):
    total = sum(count_bases(M) for M in enumerate_matroids(r, n))
    return {"n": n, "r": r, "sum_bases": total, "expected": bases_normalizer(r, n),
            "exact": total == bases_normalizer(r, n)}


def aggregate_matroid(trials, params):
    out = {"normalization": [normalization_check(n, r) for n, r in params["normalization"]],
           "constant": C_MATROID}

    r, n = params["basis_r"], params["basis_n"]
    values = np.array([row["value"] for row in trials if row["kind"] == "bases"], dtype=np.float64)
    if values.size > 1:
        batches = np.array_split(values, min(20, values.size))
        ratios = [b.var(ddof=1) / b.mean() ** 2 for b in batches if b.size > 1]
        ratio = float(values.var(ddof=1) / values.mean() ** 2)
        sigma = float(np.std(ratios, ddof=1) / math.sqrt(len(ratios))) if len(ratios) > 1 else 0.0
        bound = float(basis_variance_bound(r, n))
        out["basis"] = {"mean": float(values.mean()), "exact_mean": float(exact_mean_bases(r, n)),
                        "ratio": ratio, "sigma": sigma, "bound": bound,
                        "within": ratio <= bound + 3 * sigma}

    rank_n = params["rank_n"]
    ranks = [row["value"] for row in trials if row["kind"] == "rank"]
    if ranks:
        weights = rank_distribution_uniform_matroid(rank_n)
        observed = [ranks.count(x) for x in range(rank_n + 1)]
        expected = [float(weights[x]) * len(ranks) for x in range(rank_n + 1)]
        p_value = _pooled_chisquare(observed, expected)
        out["rank"] = {"observed": observed, "p_value": p_value,
                       "consistent": p_value is None or p_value > 0.01}
    return out


MATROID_DEFAULTS = {"normalization": [[3, 1], [3, 2], [4, 2]], "basis_r": 5, "basis_n": 10,
                    "basis_samples": 10 ** 4, "rank_n": 12, "rank_samples": 2000}


def run_matroid_experiments(params=None, seed=0, jobs=1):
    """Normalization, basis-count concentration and rank distribution."""

    started = time.perf_counter()
    params = {**MATROID_DEFAULTS, **(params or {})}
    r, n = params["basis_r"], params["basis_n"]
    rows = _map(_bases_trial, [(r, n, derive_seed(seed, i), i)
                               for i in range(params["basis_samples"])], jobs)
    offset = params["basis_samples"]
    rows += _map(_rank_trial, [(params["rank_n"], derive_seed(seed, offset + i), i)
                               for i in range(params["rank_samples"])], jobs)
    return _record("matroid", params, seed, rows, started)


def _bridge_row(args):
    """Pivot invariance, deletion/contraction commutation and minor agreement."""

    M, minor_size = args
    G = fundamental_graph(M, next(iter(M.bases())))
    pivots_ok = all(matroid_from_fundamental(pivot(G, l, r)) == M for l, r in G.edges())
    deletion_ok = True
    for v in M.ground:
        kind = DELETE if v in G.L else CONTRACT
        deletion_ok &= matroid_from_fundamental(delete_vertex(G, v)) == matroid_minor_op(M, v, kind)
    minors_ok, pairs = True, 0
    for N in _small_matroids_inside(M.ground, minor_size):
        H = fundamental_graph(N, next(iter(N.bases())))
        minors_ok &= is_minor(M, N) == (is_pivot_minor_ordered(G, H) is not None)
        pairs += 1
    return {"n": M.n, "matroid": M.to_json(), "pivots": pivots_ok,
            "deletions": deletion_ok, "minors": minors_ok, "pairs": pairs}


def _small_matroids_inside(ground, max_size=None):
    """Every binary matroid on a proper subset of ``ground``, up to ``max_size`` elements."""

    top = len(ground) - 1 if max_size is None else min(max_size, len(ground) - 1)
    for size in range(1, top + 1):
        for subset in combinations(ground, size):
            for r in range(size + 1):
                yield from enumerate_matroids(r, size, subset)


def aggregate_matroid_bridge(trials, params):
    bad = [row for row in trials if not (row["pivots"] and row["deletions"] and row["minors"])]
    return {"matroids": len(trials), "disagreements": len(bad),
            "pairs": sum(row["pairs"] for row in trials)}


def run_matroid_bridge(max_n=6, minor_size=None, jobs=1):
    """Check the matroid/fundamental-graph bridge on every matroid up to max_n elements.

    Minor agreement is tested against every N on a proper subset of the ground
    set, or only those with at most ``minor_size`` elements when it is given.
    """

    started = time.perf_counter()
    args = [(M, minor_size) for n in range(1, max_n + 1) for M in all_matroids(n)]
    rows = _map(_bridge_row, args, jobs)
    return _record("matroid_bridge", {"max_n": max_n, "minor_size": minor_size}, 0, rows, started)


##############################################################################
# Minor engine against the orbit oracle


def orbit_vertex_minors(G, U):
    """Edge masks of G'[U] over the whole local-equivalence orbit of G."""

    return {induced_subgraph(g, U).edge_mask() for g in local_equivalence_orbit(G)}


def _oracle_rows(k):
    rows = []
    for G in all_graphs(k):
        disagreements = 0
        for size in range(k + 1):
            for U in combinations(range(k), size):
                recursion = {H.edge_mask() for H in vertex_minors_on(G, U)}
                disagreements += recursion != orbit_vertex_minors(G, U)
        rows.append({"n": k, "graph": G.edge_mask(), "disagreements": disagreements})
    return rows


def aggregate_minor_oracle(trials, params):
    return {"graphs": len(trials),
            "disagreements": sum(row["disagreements"] for row in trials)}


def run_minor_oracle(max_n=5, jobs=1):
    """Vertex-minor recursion against orbit brute force on every graph up to max_n."""

    started = time.perf_counter()
    rows = [row for chunk in _map(_oracle_rows, list(range(1, max_n + 1)), jobs) for row in chunk]
    return _record("minor_oracle", {"max_n": max_n}, 0, rows, started)


##############################################################################
# Alignment and reordering


def _align_trial(args):
    m, y1, extra, seed, index = args
    rng = generator(seed)
    B = random_bipartite(m + extra, m + y1 + extra, rng)
    v1s = list(range(m))
    v2s = list(range(m + extra, 2 * m + extra))
    targets = list(range(2 * m + extra, 2 * m + extra + y1))
    out = align_partition(B, v1s, v2s, targets, [], seed=seed)
    return {"trial": index, "seed": seed, "failed": out is None,
            "edges": -1 if out is None else out.edge_mask()}


def aggregate_align_partition(trials, params):
    m, y1, extra = params["m"], params["y1"], params["extra"]
    total = len(trials)
    failures = sum(row["failed"] for row in trials)
    # every V1* vertex tried is a fair coin; failure means fewer than y1 heads in m
    expected = sum(comb(m, i) for i in range(y1)) / 2 ** m
    sigma = math.sqrt(expected * (1 - expected) / total) if total else 0.0
    rate = failures / total if total else 0.0
    cells = 1 << ((extra + y1) * extra)
    observed = np.zeros(cells)
    for row in trials:
        if not row["failed"]:
            observed[row["edges"]] += 1
    p_value = None
    if observed.sum() and cells > 1:
        p_value = float(stats.chisquare(observed).pvalue)
    return {"failure_rate": rate, "expected": expected, "sigma": sigma,
            "within_3_sigma": abs(rate - expected) <= 3 * sigma + 1e-12,
            "uniformity_p_value": p_value,
            "uniform": p_value is None or p_value > 0.01}


def run_align_partition(m, y1, trials, seed=0, extra=2, jobs=1):
    """Failure rate and output law of align_partition with Y2 empty.

    ``extra`` vertices on each side are never touched and carry the output
    edges tested for uniformity.
    """

    started = time.perf_counter()
    args = [(m, y1, extra, derive_seed(seed, i), i) for i in range(trials)]
    rows = _map(_align_trial, args, jobs)
    params = {"m": m, "y1": y1, "extra": extra, "trials": trials}
    return _record("align_partition", params, seed, rows, started)


def _reorder_trial(args):
    max_n, max_vhat, max_len, seed, index = args
    rng = generator(seed)
    n = int(rng.integers(1, max_n + 1))
    h = int(rng.integers(1, min(max_vhat, n) + 1))
    G = random_graph(n, rng)
    vhat = sorted(int(v) for v in rng.choice(n, size=h, replace=False))
    seq = [vhat[int(i)] for i in rng.integers(0, h, size=int(rng.integers(0, max_len + 1)))]
    row = {"trial": index, "seed": seed, "n": n, "vhat": h, "length": len(seq),
           "replay": False, "disjoint": False, "covers_once": False, "gadget": None}
    try:
        row.update(check_reordering(G, vhat, seq, reorder_sequence(G, vhat, seq)))
    except ReorderError:
        logger.warning("trial %d: no reordering for %s on %s", index, seq, vhat)
    if h <= 2:
        ops = reorder_via_gadget(induced_subgraph(G, vhat), seq)
        row["gadget"] = all(check_reordering(G, vhat, seq, ops).values())
    return row


def aggregate_reorder(trials, params):
    failed = [row["trial"] for row in trials
              if not (row["replay"] and row["disjoint"] and row["covers_once"])]
    gadget = [row for row in trials if row["gadget"] is not None]
    return {"instances": len(trials), "failures": failed,
            "gadget_instances": len(gadget),
            "gadget_failures": [row["trial"] for row in gadget if not row["gadget"]]}


def run_reorder(trials, seed=0, max_n=12, max_vhat=4, max_len=6, jobs=1):
    """Randomized reordering instances checked by exact replay."""

    started = time.perf_counter()
    args = [(max_n, max_vhat, max_len, derive_seed(seed, i), i) for i in range(trials)]
    rows = _map(_reorder_trial, args, jobs)
    params = {"trials": trials, "max_n": max_n, "max_vhat": max_vhat, "max_len": max_len}
    return _record("reorder", params, seed, rows, started)


##############################################################################
# Walks and Ramsey


def aggregate_walk_mix(trials, params):
    within = [row["within"] for row in trials if row["within"] is not None]
    return {"steps": len(trials), "all_within_bound": all(within), "checked": len(within)}


def run_walk_mix(shape, steps):
    """Exact L-infinity distance after each step next to the matching bound."""

    started = time.perf_counter()
    shape = tuple(shape)
    mu = point_mass(shape)
    rows = []
    m1 = m2 = 0
    for i, dist in enumerate(run_recipe(mu, steps)[1:], start=1):
        kind = steps[i - 1]
        m1 += kind == COM
        m2 += kind == PIV
        linf = linf_distance_to_uniform(dist)
        if kind == BPIV:
            bound = bipartite_mixing_bound(i)
        elif m1 + 2 * m2 > 2 * shape[0]:
            bound = mixing_bound(shape[0], m1, m2)
        else:
            bound = None
        rows.append({"step": i, "kind": kind, "linf": str(linf), "linf_float": float(linf),
                     "bound": None if bound is None else str(bound),
                     "within": None if bound is None else linf <= bound})
    params = {"shape": list(shape), "steps": list(steps)}
    return _record("walk_mix", params, 0, rows, started)


def aggregate_ramsey(trials, params):
    scans = [row for row in trials if row["kind"] == "scan"]
    clean = [row["n"] for row in scans if row["failures"] == 0]
    return {"value": min(clean) if clean else None,
            "certificates": [row["graph6"] for row in trials if row["kind"] == "certificate"]}


def run_ramsey(k):
    """R_vm(k) by exhaustive scan, with the extremal graphs one size below."""

    started = time.perf_counter()
    result = vm_ramsey_search(k)
    rows = [{"kind": "scan", "n": n, "failures": count, "graph6": ""}
            for n, count in sorted(result.failures_by_n.items())]
    rows += [{"kind": "certificate", "n": result.value - 1, "failures": 0, "graph6": to_graph6(g)}
             for g in result.certificates]
    return _record("ramsey", {"k": k}, 0, rows, started)


##############################################################################
# Dispatch


def experiment_from_config(cfg, jobs=None):
    jobs = config.JOBS if jobs is None else jobs
    p = cfg.params
    try:
        if cfg.experiment == "universality":
            return run_universality(p["n"], p["k"], p["trials"], p.get("budget"), cfg.seed, jobs)
        if cfg.experiment == "universality_trend":
            return run_universality_trend(p["ns"], p["k"], p["trials"], p.get("budget"), cfg.seed, jobs)
        if cfg.experiment == "second_moment":
            return run_second_moment(p["n"], p["k"], p["trials"], cfg.seed, p.get("target", 0), jobs)
        if cfg.experiment == "bipartite_second_moment":
            return run_bipartite_second_moment(p["m"], p["k1"], p["k2"], p["trials"], cfg.seed,
                                               p.get("target", 0), jobs)
        if cfg.experiment == "symdiff_independence":
            return run_symdiff_independence(p["n"], p["k"], p["trials"], cfg.seed, jobs)
        if cfg.experiment == "matroid":
            return run_matroid_experiments(p, cfg.seed, jobs)
        if cfg.experiment == "matroid_bridge":
            return run_matroid_bridge(p.get("max_n", 6), p.get("minor_size"), jobs)
        if cfg.experiment == "minor_oracle":
            return run_minor_oracle(p.get("max_n", 5), jobs)
        if cfg.experiment == "align_partition":
            return run_align_partition(p["m"], p.get("y1", 1), p["trials"], cfg.seed,
                                       p.get("extra", 2), jobs)
        if cfg.experiment == "reorder":
            return run_reorder(p["trials"], cfg.seed, p.get("max_n", 12), p.get("max_vhat", 4),
                               p.get("max_len", 6), jobs)
        if cfg.experiment == "walk_mix":
            return run_walk_mix(p["shape"], p["steps"])
        if cfg.experiment == "ramsey":
            return run_ramsey(p["k"])
    except KeyError as exc:
        raise ConfigError(f"{cfg.experiment} needs parameter {exc}") from None
    raise ConfigError(f"unknown experiment {cfg.experiment!r}")


AGGREGATORS = {
    "universality": aggregate_universality,
    "universality_trend": aggregate_universality_trend,
    "second_moment": aggregate_second_moment,
    "bipartite_second_moment": aggregate_bipartite_second_moment,
    "symdiff_independence": aggregate_symdiff_independence,
    "matroid": aggregate_matroid,
    "matroid_bridge": aggregate_matroid_bridge,
    "minor_oracle": aggregate_minor_oracle,
    "align_partition": aggregate_align_partition,
    "reorder": aggregate_reorder,
    "walk_mix": aggregate_walk_mix,
    "ramsey": aggregate_ramsey,
}

RUNNERS = frozenset(AGGREGATORS)
