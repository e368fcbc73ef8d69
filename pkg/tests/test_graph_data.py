import logging
import os
import tempfile
import unittest

import numpy as np

from umgnet.errors import (IngestionError,
                           NoTrainingDataError,
                           ParameterError)
from umgnet.data import (BipartiteGraph,
                         build_adjacency,
                         degrees,
                         load_dataset,
                         normalize_features,
                         split_folds,
                         write_dataset)

from fixtures import (make_dataset,
                      synthetic)

logging.basicConfig(level=logging.INFO)


def write_table(directory, name, lines):
    path = os.path.join(directory, name)
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")
    return path


class TestGraph(unittest.TestCase):
    def test_adjacency_nonzeros(self):
        graph, _ = BipartiteGraph.from_edges(2, 1, [(0, 0), (1, 0)])
        adj = build_adjacency(graph)
        self.assertEqual(adj.nonzeros(), {(0, 2), (2, 0), (1, 2), (2, 1)})
        self.assertTrue(adj.is_symmetric())

    def test_zero_edges(self):
        graph, _ = BipartiteGraph.from_edges(3, 2, [])
        np.testing.assert_array_equal(build_adjacency(graph).to_dense(),
                                      np.zeros((5, 5)))
        np.testing.assert_array_equal(degrees(graph), np.zeros(3))

    def test_duplicates_dropped(self):
        graph, dropped = BipartiteGraph.from_edges(
            2, 2, [(0, 1), (1, 0), (0, 1)])
        self.assertEqual(dropped, 1)
        self.assertEqual(graph.num_edges, 2)
        self.assertEqual(graph.edges(), [(0, 1), (1, 0)])

    def test_duplicate_edges_rejected_in_constructor(self):
        with self.assertRaises(IngestionError):
            BipartiteGraph(n=1, m=1, users=[0, 0], items=[0, 0])

    def test_index_out_of_range(self):
        with self.assertRaises(IngestionError):
            BipartiteGraph.from_edges(2, 1, [(2, 0)])
        with self.assertRaises(IngestionError):
            BipartiteGraph.from_edges(2, 1, [(0, 1)])

    def test_degrees(self):
        graph, _ = BipartiteGraph.from_edges(
            3, 4, [(1, 0), (1, 2), (1, 3), (2, 2)])
        deg = degrees(graph)
        np.testing.assert_array_equal(deg, [0, 3, 1])
        self.assertEqual(deg.sum(), graph.num_edges)

    def test_adjacency_cached(self):
        graph, _ = BipartiteGraph.from_edges(2, 2, [(0, 0), (1, 1)])
        self.assertIs(graph.adjacency("mean"), graph.adjacency("mean"))


class TestNormalize(unittest.TestCase):
    def test_standardizes(self):
        out = normalize_features(np.array([[1.], [2.], [3.]]))
        self.assertAlmostEqual(out.mean(), 0.0)
        self.assertAlmostEqual(out.std(), 1.0)

    def test_constant_column(self):
        out = normalize_features(np.array([[5., 1.], [5., 2.], [5., 4.]]))
        np.testing.assert_array_equal(out[:, 0], [0., 0., 0.])

    def test_idempotent(self):
        x = np.random.default_rng(0).normal(3.0, 7.0, size=(50, 4))
        once = normalize_features(x)
        np.testing.assert_allclose(normalize_features(once), once,
                                   atol=1e-6)


class TestDataset(unittest.TestCase):
    def test_mask_for(self):
        data = make_dataset(3, 1, [(0, 0)], np.zeros((3, 1)),
                            mask=[1, 0, 1])
        np.testing.assert_array_equal(data.mask_for([0, 1]), [1, 0, 0])
        with self.assertRaises(NoTrainingDataError):
            data.mask_for([1])

    def test_rejects_non_binary_treatment(self):
        with self.assertRaises(IngestionError):
            make_dataset(2, 1, [], np.zeros((2, 1)), treatment=[0, 2])


class TestIngest(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.dir = self._tmp.name

    def tearDown(self):
        self._tmp.cleanup()

    def tables(self, edges=None, users=None, labels=None):
        edges = edges or ["user_id,item_id", "a,p", "b,p"]
        users = users or ["user_id,f0,f1", "a,1.5,2", "b,-0.25,0"]
        labels = labels or ["user_id,treatment,outcome", "a,1,3.5",
                            "b,0,1"]
        return (write_table(self.dir, "edges.csv", edges),
                write_table(self.dir, "users.csv", users),
                write_table(self.dir, "labels.csv", labels))

    def test_smallest_graph(self):
        data = load_dataset(*self.tables())
        self.assertEqual((data.n, data.m), (2, 1))
        np.testing.assert_array_equal(data.label_mask, [1, 1])
        np.testing.assert_array_equal(data.treatment, [1, 0])
        np.testing.assert_array_equal(data.outcome, [3.5, 1.0])
        np.testing.assert_array_equal(data.user_features,
                                      [[1.5, 2.0], [-0.25, 0.0]])
        # one-hot products without an items table
        np.testing.assert_array_equal(data.item_features, [[1.0]])

    def test_unknown_label_user(self):
        paths = self.tables(labels=["user_id,treatment,outcome", "zzz,1,1"])
        with self.assertRaises(IngestionError):
            load_dataset(*paths)

    def test_unknown_edge_user(self):
        paths = self.tables(edges=["user_id,item_id", "a,p", "c,p"])
        with self.assertRaises(IngestionError):
            load_dataset(*paths)

    def test_duplicate_edge_rows(self):
        paths = self.tables(edges=["user_id,item_id", "a,p", "b,p", "a,p"])
        with self.assertLogs("umgnet", level="WARNING") as logs:
            self.assertEqual(load_dataset(*paths).graph.num_edges, 2)
        warnings = [line for line in logs.output if "duplicate" in line]
        self.assertEqual(len(warnings), 1)
        self.assertIn("1 duplicate edge rows", warnings[0])

    def test_non_numeric_feature(self):
        paths = self.tables(users=["user_id,f0,f1", "a,1,x", "b,0,0"])
        with self.assertRaises(IngestionError):
            load_dataset(*paths)

    def test_unknown_column(self):
        paths = self.tables(labels=["user_id,treatment,outcome,extra",
                                    "a,1,3,0"])
        with self.assertRaises(IngestionError):
            load_dataset(*paths)

    def test_treatment_not_binary(self):
        paths = self.tables(labels=["user_id,treatment,outcome", "a,2,3"])
        with self.assertRaises(IngestionError):
            load_dataset(*paths)

    def test_missing_file(self):
        edges, users, _ = self.tables()
        missing = os.path.join(self.dir, "nope.csv")
        with self.assertRaisesRegex(IngestionError, "nope.csv"):
            load_dataset(edges, users, missing)

    def test_partial_labels(self):
        paths = self.tables(labels=["user_id,treatment,outcome", "b,1,2"])
        data = load_dataset(*paths)
        np.testing.assert_array_equal(data.label_mask, [0, 1])
        np.testing.assert_array_equal(data.labeled_indices(), [1])

    def test_row_order_does_not_matter(self):
        first = load_dataset(*self.tables())
        second = load_dataset(*self.tables(
            edges=["user_id,item_id", "b,p", "a,p"],
            users=["user_id,f0,f1", "b,-0.25,0", "a,1.5,2"],
            labels=["user_id,treatment,outcome", "b,0,1", "a,1,3.5"]))
        self.assertEqual(first.user_ids, second.user_ids)
        np.testing.assert_array_equal(first.user_features,
                                      second.user_features)
        np.testing.assert_array_equal(first.outcome, second.outcome)
        self.assertEqual(first.graph.edges(), second.graph.edges())

    def test_write_load_round_trip(self):
        data, _ = synthetic(n=10, m=5, d=3, density=0.5)
        paths = write_dataset(data, os.path.join(self.dir, "out"))
        loaded = load_dataset(paths["edges"], paths["users"],
                              paths["labels"], items=paths["items"])
        self.assertEqual(loaded.user_ids, data.user_ids)
        self.assertEqual(loaded.item_ids, data.item_ids)
        self.assertEqual(loaded.graph.edges(), data.graph.edges())
        np.testing.assert_array_equal(loaded.user_features,
                                      data.user_features)
        np.testing.assert_array_equal(loaded.item_features,
                                      data.item_features)
        np.testing.assert_array_equal(loaded.treatment, data.treatment)
        np.testing.assert_array_equal(loaded.outcome, data.outcome)
        np.testing.assert_array_equal(loaded.label_mask, data.label_mask)


class TestSynthetic(unittest.TestCase):
    def test_zero_treatment_effect(self):
        _, truth = synthetic(w_t=0.0)
        np.testing.assert_array_equal(truth.effect, np.zeros(60))

    def test_effects_non_negative(self):
        _, truth = synthetic(w_t=5.0)
        self.assertTrue(np.all(truth.effect >= 0))

    def test_linear_region_ate(self):
        data, truth = synthetic(n=400, m=10, w_t=12.0, noise_mean=1000.0,
                                noise_std=5.0)
        np.testing.assert_allclose(truth.effect, 12.0)
        # the sample difference of means estimates w_t
        treated = data.treatment > 0
        y = data.outcome
        diff = y[treated].mean() - y[~treated].mean()
        stderr = np.sqrt(y[treated].var(ddof=1) / treated.sum() +
                         y[~treated].var(ddof=1) / (~treated).sum())
        self.assertLess(abs(diff - 12.0), 3 * stderr)

    def test_deterministic(self):
        a, _ = synthetic(seed=5)
        b, _ = synthetic(seed=5)
        self.assertEqual(a.graph.edges(), b.graph.edges())
        for name in ("user_features", "item_features", "treatment",
                     "outcome"):
            np.testing.assert_array_equal(getattr(a, name),
                                          getattr(b, name))
        c, _ = synthetic(seed=6)
        self.assertFalse(np.array_equal(a.outcome, c.outcome))

    def test_balanced_treatment(self):
        data, _ = synthetic(n=61)
        self.assertEqual(int(data.treatment.sum()), 30)
        np.testing.assert_array_equal(data.label_mask, np.ones(61))

    def test_simulations_share_graph(self):
        a, _ = synthetic(simulations=2, simulation=0)
        b, _ = synthetic(simulations=2, simulation=1)
        self.assertEqual(a.graph.edges(), b.graph.edges())
        np.testing.assert_array_equal(a.user_features, b.user_features)
        self.assertNotEqual(a.metadata["w_t"], b.metadata["w_t"])

    def test_full_density(self):
        data, _ = synthetic(n=4, m=3, density=1.0)
        self.assertEqual(data.graph.num_edges, 12)


class TestFolds(unittest.TestCase):
    def test_twenty_folds(self):
        plan = split_folds(500, 20, seed=0)
        for i in range(20):
            train, evaluate = plan.split(i)
            self.assertLessEqual(abs(len(train) - 25), 1)
            self.assertEqual(len(train) + len(evaluate), 500)
            self.assertEqual(len(np.intersect1d(train, evaluate)), 0)

    def test_two_folds_four_users(self):
        plan = split_folds(4, 2, seed=1)
        a, b = plan.folds
        self.assertEqual(len(a), 2)
        self.assertEqual(len(b), 2)
        np.testing.assert_array_equal(np.sort(np.concatenate([a, b])),
                                      np.arange(4))

    def test_too_many_folds(self):
        with self.assertRaises(ParameterError):
            split_folds(3, 4, seed=0)
        with self.assertRaises(ParameterError):
            split_folds(3, 1, seed=0)

    def test_fingerprint(self):
        self.assertEqual(split_folds(50, 5, 3).fingerprint(),
                         split_folds(50, 5, 3).fingerprint())
        self.assertNotEqual(split_folds(50, 5, 3).fingerprint(),
                            split_folds(50, 5, 4).fingerprint())
