"""Experiment runner and result record tests."""

# run these tests like:
#
#    python -m unittest test_experiments.py


import json
import os
import tempfile
from unittest import TestCase

import numpy as np

from errors import ConfigError
from experiments import (ExperimentConfig, experiment_from_config, gj_codes,
                         gj_codes_bipartite, minor_failure_bound,
                         pair_agreement_by_distance, run_align_partition,
                         run_matroid_bridge, run_matroid_experiments,
                         run_minor_oracle, run_ramsey, run_reorder,
                         run_second_moment, run_symdiff_independence,
                         run_universality, run_universality_trend,
                         run_walk_mix, universal_size, walsh_hadamard,
                         wilson_interval)
from graphs import build_gj, generator, induced_subgraph, random_bipartite, random_graph
from records import csv_headers, load_record, load_trials, record_paths, save_record
from walks import BPIV, COM, PIV


class ExperimentConfigTestCase(TestCase):
    """Test config validation."""

    def test_unknown_experiment(self):
        with self.assertRaises(ConfigError):
            ExperimentConfig("teleport")

    def test_seed_range(self):
        with self.assertRaises(ConfigError):
            ExperimentConfig("ramsey", {"k": 2}, 2 ** 64)
        self.assertEqual(ExperimentConfig("ramsey", {"k": 2}, 2 ** 64 - 1).seed, 2 ** 64 - 1)

    def test_from_dict(self):
        cfg = ExperimentConfig.from_dict({"experiment": "ramsey", "params": {"k": 2}, "seed": "5"})
        self.assertEqual(cfg.seed, 5)
        self.assertIsNone(cfg.output)
        self.assertEqual(ExperimentConfig.from_dict(cfg.to_dict()), cfg)

        with self.assertRaises(ConfigError):
            ExperimentConfig.from_dict({"params": {}})

    def test_missing_parameter(self):
        with self.assertRaises(ConfigError):
            experiment_from_config(ExperimentConfig("universality", {"n": 5}), jobs=1)

    def test_bundled_configs_parse(self):
        directory = os.path.join(os.path.dirname(os.path.abspath(__file__)), "configs")
        for name in sorted(os.listdir(directory)):
            cfg = ExperimentConfig.from_json(os.path.join(directory, name))
            self.assertEqual(cfg.experiment, os.path.splitext(name)[0])


class UniversalityTestCase(TestCase):
    """Test the universality campaigns."""

    def test_bounds(self):
        self.assertLess(universal_size(3, 0.1), universal_size(3, 0.01))
        self.assertLess(universal_size(3, 0.1), universal_size(4, 0.1))
        self.assertLess(minor_failure_bound(200, 3), minor_failure_bound(100, 3))

    def test_wilson_interval(self):
        self.assertEqual(wilson_interval(0, 0), (0.0, 1.0))
        low, high = wilson_interval(5, 10)
        self.assertLess(low, 0.5)
        self.assertGreater(high, 0.5)

    def test_run(self):
        record = run_universality(6, 2, 8, seed=1)
        self.assertEqual(len(record.trials), 8)
        self.assertEqual([row["trial"] for row in record.trials], list(range(8)))
        totals = record.aggregates["completed"] + record.aggregates["budget_exceeded"]
        self.assertEqual(totals, 8)
        self.assertEqual(record.recompute(), record.aggregates)

    def test_replay_and_workers(self):
        """Ensure a seed replays the same rows with any worker count"""

        serial = run_universality(5, 2, 6, seed=9)
        again = run_universality(5, 2, 6, seed=9)
        pooled = run_universality(5, 2, 6, seed=9, jobs=2)
        self.assertEqual(serial.trials, again.trials)
        self.assertEqual(serial.trials, pooled.trials)

    def test_budget_rows(self):
        record = run_universality(8, 3, 3, budget=1, seed=2)
        self.assertEqual(record.aggregates["budget_exceeded"], 3)
        self.assertIsNone(record.aggregates["rate"])

    def test_trend(self):
        record = run_universality_trend([3, 4], 2, 5, seed=3)
        self.assertEqual(set(record.aggregates["by_n"]), {"3", "4"})
        self.assertIn(record.aggregates["trend"], ("increasing", "inconclusive", "not_increasing"))


class SecondMomentTestCase(TestCase):
    """Test G_J codes and pair statistics."""

    def test_walsh_hadamard(self):
        delta = np.zeros(8)
        delta[0] = 1
        self.assertTrue(np.array_equal(walsh_hadamard(delta), np.ones(8)))
        values = np.arange(16, dtype=np.float64)
        self.assertTrue(np.allclose(walsh_hadamard(walsh_hadamard(values)), 16 * values))

    def test_pair_agreement(self):
        self.assertEqual(pair_agreement_by_distance(np.zeros(16, dtype=np.int64), 4), [1.0] * 5)
        distinct = pair_agreement_by_distance(np.arange(16), 4)
        self.assertAlmostEqual(distinct[0], 1.0)
        for p in distinct[1:]:
            self.assertAlmostEqual(p, 0.0)

    def test_codes_match_direct_construction(self):
        G = random_graph(7, generator(8))
        base, U = [0, 1, 2, 3], [4, 5, 6]
        codes = gj_codes(G, base, U)
        for J in range(16):
            GJ = build_gj(G, base, [i for i in range(4) if (J >> i) & 1])
            self.assertEqual(codes[J], induced_subgraph(GJ, U).edge_mask())

    def test_bipartite_codes_match_direct_construction(self):
        B = random_bipartite(4, 4, generator(12))
        base = [(0, 4), (1, 5), (2, 6)]
        U1, U2 = [3], [7]
        codes = gj_codes_bipartite(B, base, U1, U2)
        for J in range(8):
            BJ = build_gj(B, base, [i for i in range(3) if (J >> i) & 1],
                          mode="bipartite_attempted")
            self.assertEqual(codes[J], int(BJ.graph.has_edge(3, 7)))

    def test_run(self):
        record = run_second_moment(6, 2, 4, seed=7)
        for row in record.trials:
            self.assertEqual(row["p_d0"], 1.0)
            self.assertTrue(0 <= row["X"] <= 64)
        self.assertEqual(len(record.aggregates["bins"]), 7)
        self.assertEqual(record.aggregates["expected_X"], 32.0)
        self.assertEqual(record.recompute(), record.aggregates)

    def test_size_limit(self):
        with self.assertRaises(ConfigError):
            run_second_moment(19, 2, 1)

    def test_symdiff_rows(self):
        record = run_symdiff_independence(4, 2, 30, seed=1)
        for row in record.trials:
            self.assertIn(row["restricted"], (0, 1))
            self.assertIn(row["difference"], (0, 1))
        self.assertIn("p_value", record.aggregates)


class MatroidExperimentTestCase(TestCase):
    """Test the matroid campaigns."""

    def test_small_campaign(self):
        params = {"basis_r": 2, "basis_n": 5, "basis_samples": 40, "rank_n": 6, "rank_samples": 40}
        record = run_matroid_experiments(params, seed=3)
        self.assertTrue(all(check["exact"] for check in record.aggregates["normalization"]))
        self.assertEqual(sum(record.aggregates["rank"]["observed"]), 40)
        self.assertIn("ratio", record.aggregates["basis"])
        self.assertEqual(record.recompute(), record.aggregates)

    def test_bridge(self):
        """Ensure minors on every proper subset agree, up to four elements"""

        record = run_matroid_bridge(max_n=4)
        self.assertEqual(record.aggregates["disagreements"], 0)
        self.assertEqual(record.aggregates["matroids"], 2 + 5 + 16 + 67)
        # N on 1, 2 and 3 of the 4 elements: 4*2 + 6*5 + 4*16 per matroid
        self.assertEqual(record.aggregates["pairs"], 5 * 4 + 16 * 21 + 67 * 102)

    def test_bridge_minor_size(self):
        record = run_matroid_bridge(max_n=3, minor_size=1)
        self.assertEqual(record.aggregates["disagreements"], 0)
        self.assertEqual(record.aggregates["pairs"], 5 * 4 + 16 * 6)


class OracleAndReorderTestCase(TestCase):
    """Test the brute-force and replay campaigns."""

    def test_minor_oracle(self):
        record = run_minor_oracle(max_n=4)
        self.assertEqual(record.aggregates, {"graphs": 1 + 2 + 8 + 64, "disagreements": 0})

    def test_align_partition(self):
        record = run_align_partition(2, 1, 200, seed=4)
        self.assertLess(abs(record.aggregates["failure_rate"] - 0.25), 0.12)
        self.assertEqual(record.aggregates["expected"], 0.25)
        for row in record.trials:
            self.assertEqual(row["edges"] == -1, row["failed"])

    def test_align_partition_two_targets(self):
        """Ensure two targets fail at P[Bin(m, 1/2) < 2]"""

        record = run_align_partition(6, 2, 1000, seed=3)
        self.assertEqual(record.aggregates["expected"], 7 / 64)
        self.assertLess(abs(record.aggregates["failure_rate"] - 7 / 64), 0.05)

    def test_reorder(self):
        record = run_reorder(20, seed=2, max_n=7, max_vhat=3, max_len=5)
        self.assertEqual(record.aggregates["failures"], [])
        self.assertEqual(record.aggregates["gadget_failures"], [])


class WalkAndRamseyTestCase(TestCase):
    """Test the exact walk and Ramsey campaigns."""

    def test_walk_mix(self):
        record = run_walk_mix((3,), [COM] * 4 + [PIV] * 4)
        self.assertEqual(record.aggregates["checked"], 3)
        self.assertTrue(record.aggregates["all_within_bound"])

        record = run_walk_mix((2, 2), [BPIV] * 3)
        self.assertEqual(record.aggregates["checked"], 3)
        self.assertTrue(record.aggregates["all_within_bound"])

    def test_ramsey(self):
        record = run_ramsey(2)
        self.assertEqual(record.aggregates["value"], 3)
        self.assertEqual(len(record.aggregates["certificates"]), 1)


class RecordTestCase(TestCase):
    """Test JSON and CSV persistence."""

    def setUp(self):
        """Scratch directory for output files."""

        self.scratch = tempfile.TemporaryDirectory()

    def tearDown(self):
        """Remove the scratch directory."""

        self.scratch.cleanup()

    def test_paths(self):
        self.assertEqual(record_paths("results/run1"), ("results/run1.json", "results/run1.csv"))
        self.assertEqual(record_paths("out.json"), ("out.json", "out.csv"))

    def test_round_trip(self):
        """Ensure a saved record reloads and recomputes its aggregates"""

        record = run_universality(5, 2, 4, seed=6)
        stem = os.path.join(self.scratch.name, "nested", "run")
        json_path, csv_path = save_record(record, stem)

        loaded = load_record(json_path)
        self.assertEqual(loaded.trials, record.trials)
        self.assertEqual(loaded.recompute(), record.aggregates)
        self.assertEqual(load_trials(csv_path), record.trials)

    def test_reorder_csv_keeps_empty_gadget_cells(self):
        record = run_reorder(6, seed=1, max_n=6, max_vhat=4, max_len=4)
        _, csv_path = save_record(record, os.path.join(self.scratch.name, "reorder"))
        self.assertEqual(load_trials(csv_path), record.trials)

    def test_dynamic_headers(self):
        record = run_second_moment(3, 2, 1, seed=1)
        self.assertEqual(csv_headers(record), ["trial", "seed", "X", "p_d0", "p_d1", "p_d2", "p_d3"])

    def test_not_a_record(self):
        path = os.path.join(self.scratch.name, "bad.json")
        with open(path, "w") as bad:
            json.dump({"config": {}}, bad)
        with self.assertRaises(ConfigError):
            load_record(path)
