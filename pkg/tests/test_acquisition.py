import itertools
import logging
import unittest

import numpy as np
from scipy.spatial.distance import cdist

from umgnet.config import AcquisitionConfig
from umgnet.errors import (ParameterError,
                           ShapeError)
from umgnet.acquisition import (active_learning_run,
                                audit_selection,
                                batch_sizes,
                                cluster_caps,
                                compute_scores,
                                greedy_select,
                                kmeans,
                                minmax,
                                treated_cap)

from fixtures import (small_config,
                      synthetic)

logging.basicConfig(level=logging.INFO)


class TestKMeans(unittest.TestCase):
    def test_one_cluster_per_point(self):
        x = np.random.default_rng(0).standard_normal((7, 3))
        clusters = kmeans(x, 7, seed=0)
        self.assertEqual(len(np.unique(clusters.assignments)), 7)
        np.testing.assert_allclose(clusters.distances, 0, atol=1e-12)

    def test_identical_points(self):
        x = np.tile([[1.5, -2.0]], (5, 1))
        clusters = kmeans(x, 1, seed=0)
        np.testing.assert_allclose(clusters.centroids, [[1.5, -2.0]])
        self.assertEqual(clusters.distortion[-1], 0.0)

    def test_two_blobs(self):
        rng = np.random.default_rng(1)
        a = rng.normal(0.0, 0.1, size=(20, 2))
        b = rng.normal(0.0, 0.1, size=(20, 2)) + [100.0, 0.0]
        clusters = kmeans(np.vstack([a, b]), 2, seed=3)
        first, second = clusters.assignments[:20], clusters.assignments[20:]
        self.assertEqual(len(np.unique(first)), 1)
        self.assertEqual(len(np.unique(second)), 1)
        self.assertNotEqual(first[0], second[0])
        self.assertTrue(clusters.converged)

    def test_distortion_non_increasing(self):
        x = np.random.default_rng(2).standard_normal((200, 4))
        distortion = kmeans(x, 8, seed=0).distortion
        self.assertTrue(np.all(np.diff(distortion) <= 1e-9))

    def test_iteration_cap_matches_centroids(self):
        x = np.random.default_rng(5).standard_normal((200, 3))
        model = kmeans(x, 6, seed=1, max_iterations=1)
        self.assertFalse(model.converged)
        sq_dist = cdist(x, model.centroids, "sqeuclidean")
        np.testing.assert_array_equal(model.assignments,
                                      np.argmin(sq_dist, axis=1))
        np.testing.assert_allclose(model.distances,
                                   np.sqrt(sq_dist.min(axis=1)))

    def test_seeded(self):
        x = np.random.default_rng(2).standard_normal((50, 2))
        np.testing.assert_array_equal(kmeans(x, 5, seed=4).assignments,
                                      kmeans(x, 5, seed=4).assignments)

    def test_too_many_clusters(self):
        with self.assertRaises(ParameterError):
            kmeans(np.zeros((3, 2)), 4, seed=0)

    def test_caps(self):
        caps = cluster_caps([0, 0, 0, 0, 1, 1, 1, 2, 2, 2], 3, 5)
        np.testing.assert_array_equal(caps, [2, 1, 1])
        self.assertLessEqual(caps.sum(), 5)
        self.assertLessEqual(5, caps.sum() + 3)


class TestScores(unittest.TestCase):
    def test_hand_example(self):
        scores = compute_scores([0, 1], [1, 0], [0, 0], (0.2, 0.1, 0.7))
        np.testing.assert_allclose(scores.combined, [0.1, 0.2])

    def test_distance_only(self):
        m = np.array([0.3, 2.0, 1.1, 0.0])
        scores = compute_scores(np.random.default_rng(0).random(4),
                                [5, 1, 2, 7], m, (0, 0, 1))
        np.testing.assert_array_equal(np.argsort(-scores.combined),
                                      np.argsort(-m))

    def test_constant_uncertainty(self):
        scores = compute_scores([3, 3, 3], [0, 1, 2], [2, 1, 0])
        np.testing.assert_array_equal(scores.uncertainty, 0)

    def test_minimized_distance(self):
        scores = compute_scores([0, 0, 0], [0, 0, 0], [1, 2, 3], (0, 0, 1),
                                maximize_distance=False)
        np.testing.assert_allclose(scores.combined, [1.0, 0.5, 0.0])

    def test_candidates_set_the_range(self):
        np.testing.assert_allclose(minmax([0, 5, 10], candidates=[1, 2]),
                                   [0.0, 0.0, 1.0])

    def test_errors(self):
        with self.assertRaises(ShapeError):
            compute_scores([0, 1], [0], [0, 1])
        with self.assertRaises(ParameterError):
            compute_scores([0], [0], [0], (-0.1, 0.5, 0.6))

    def test_more_uncertainty_never_lowers_rank(self):
        def rank(combined, pool, clusters, u):
            mates = pool[clusters[pool] == clusters[u]]
            return int(np.sum(combined[mates] > combined[u] + 1e-12))

        for i in range(300):
            rng = np.random.default_rng(i)
            n = int(rng.integers(3, 30))
            clusters = rng.integers(0, 3, n)
            q, d, m = rng.random(n), rng.integers(0, 8, n), rng.random(n)
            weights = rng.random(3)
            pool = np.sort(rng.choice(n, int(rng.integers(2, n + 1)),
                                      replace=False))
            u = int(rng.choice(pool))
            raised = q.copy()
            raised[u] += rng.exponential()
            maximize = bool(i % 2)
            before = compute_scores(q, d, m, weights, candidates=pool,
                                    maximize_distance=maximize).combined
            after = compute_scores(raised, d, m, weights, candidates=pool,
                                   maximize_distance=maximize).combined
            self.assertLessEqual(rank(after, pool, clusters, u),
                                 rank(before, pool, clusters, u),
                                 msg="instance %d" % i)


def brute_force(scores, treatment, clusters, caps, b, labeled=()):
    pool = [u for u in range(len(scores)) if u not in set(labeled)]
    best = 0.0
    for size in range(1, b + 1):
        for subset in itertools.combinations(pool, size):
            if sum(treatment[u] for u in subset) > treated_cap(b):
                continue
            counts = np.bincount([clusters[u] for u in subset],
                                 minlength=len(caps))
            if np.any(counts > caps):
                continue
            best = max(best, sum(scores[u] for u in subset))
    return best


class TestSelection(unittest.TestCase):
    def test_empty_budget(self):
        result = greedy_select([1., 2., 3.], [0, 1, 0], [0, 0, 0], 0)
        self.assertEqual(len(result), 0)
        self.assertEqual(result.objective, 0.0)

    def test_treated_cap_binds(self):
        result = greedy_select(np.arange(10.0), np.ones(10), np.zeros(10), 4)
        self.assertLessEqual(len(result), 2)
        np.testing.assert_array_equal(result.selected, [8, 9])

    def test_negative_budget(self):
        with self.assertRaises(ParameterError):
            greedy_select([1.], [0], [0], -1)

    def test_interacting_constraints(self):
        # taking the best user first (treated, 10) blocks the best pair
        scores = np.array([10., 9., 8.])
        treatment = np.array([1, 0, 1])
        clusters = np.array([0, 0, 1])
        result = greedy_select(scores, treatment, clusters, 2, caps=[1, 1],
                               redistribute=False)
        np.testing.assert_array_equal(result.selected, [1, 2])
        self.assertEqual(result.objective, 17.0)

    def test_labeled_users_excluded(self):
        result = greedy_select([5., 4., 3., 2.], [0, 1, 0, 1], [0] * 4, 2,
                               labeled=[0])
        np.testing.assert_array_equal(result.selected, [1, 2])

    def test_ties_prefer_lower_index(self):
        result = greedy_select(np.ones(6), [0, 1] * 3, [0] * 6, 2)
        np.testing.assert_array_equal(result.selected, [0, 1])

    def test_remainder_redistribution(self):
        clusters = np.array([0, 0, 0, 0, 1, 1, 1, 2, 2, 2])
        scores = np.linspace(1.0, 0.1, 10)
        result = greedy_select(scores, np.arange(10) % 2, clusters, 2)
        self.assertEqual(len(result), 2)
        self.assertLessEqual(result.caps.sum(), 2)
        self.assertEqual(audit_selection(result.selected, np.arange(10) % 2,
                                         clusters, result.caps, 2), [])

    def test_weight_scaling_invariance(self):
        rng = np.random.default_rng(5)
        q, d, m = rng.random(30), rng.integers(0, 9, 30), rng.random(30)
        treatment = rng.integers(0, 2, 30)
        clusters = rng.integers(0, 3, 30)
        selected = []
        for factor in (1.0, 3.5):
            weights = tuple(factor * w for w in (0.2, 0.1, 0.7))
            scores = compute_scores(q, d, m, weights).combined
            selected.append(greedy_select(scores, treatment, clusters,
                                          5).selected)
        np.testing.assert_array_equal(selected[0], selected[1])

    def test_matches_enumeration(self):
        for trial in range(200):
            rng = np.random.default_rng(trial)
            n = int(rng.integers(1, 17))
            b = int(rng.integers(0, 6))
            k = int(rng.integers(1, 5))
            scores = rng.random(n)
            treatment = rng.integers(0, 2, n)
            clusters = rng.integers(0, k, n)
            labeled = np.flatnonzero(rng.random(n) < 0.2)

            # given caps
            caps = rng.integers(0, b + 1, k)
            result = greedy_select(scores, treatment, clusters, b,
                                   labeled=labeled, caps=caps, k=k,
                                   redistribute=False)
            self.assertEqual(audit_selection(result.selected, treatment,
                                             clusters, caps, b, labeled), [])
            self.assertAlmostEqual(
                result.objective,
                brute_force(scores, treatment, clusters, caps, b, labeled),
                places=6, msg="trial %d" % trial)

            # caps from cluster sizes with remainder redistribution
            result = greedy_select(scores, treatment, clusters, b,
                                   labeled=labeled, k=k)
            self.assertLessEqual(result.caps.sum(), b)
            self.assertEqual(audit_selection(result.selected, treatment,
                                             clusters, result.caps, b,
                                             labeled), [])
            self.assertAlmostEqual(
                result.objective,
                brute_force(scores, treatment, clusters, result.caps, b,
                            labeled),
                places=6, msg="trial %d" % trial)


class TestActiveLearning(unittest.TestCase):
    def test_batch_sizes(self):
        self.assertEqual(batch_sizes(500, 0.04, 0.2, 5), (20, 16, 100))
        self.assertEqual(batch_sizes(500, 0.2, 0.2, 5)[2], 100)

    def test_batch_size_errors(self):
        with self.assertRaises(ParameterError):
            batch_sizes(100, 0.1, 1.5, 3)
        with self.assertRaises(ParameterError):
            batch_sizes(100, 0.3, 0.2, 3)

    def setUp(self):
        data, _ = synthetic(n=60, m=20, seed=1)
        self.data = data.normalized()
        self.model_config = small_config(epochs=5, dropout=0.3)

    def acquisition(self, **kwargs):
        values = dict(clusters=4, mc_passes=5, rounds=2, frac_initial=0.1,
                      frac_target=0.3)
        values.update(kwargs)
        return AcquisitionConfig(**values)

    def audit(self, result):
        labeled = np.zeros(0, dtype=np.int64)
        for entry in result.history:
            self.assertEqual(audit_selection(
                entry["batch"], self.data.treatment,
                result.clusters.assignments, entry["caps"],
                entry["budget"], labeled), [])
            labeled = np.union1d(labeled, entry["batch"])
            self.assertEqual(entry["labeled"], len(labeled))
        np.testing.assert_array_equal(labeled, result.labeled)

    def test_policies_share_batch_sizes(self):
        runs = {}
        for policy in ("greedy", "random", "eg"):
            result = active_learning_run(self.data, self.model_config,
                                         self.acquisition(policy=policy),
                                         seed=0)
            self.audit(result)
            runs[policy] = result
        sizes = {policy: [e["batch_size"] for e in result.history]
                 for policy, result in runs.items()}
        self.assertEqual(sizes["greedy"], [6, 6, 6])
        self.assertEqual(sizes["greedy"], sizes["random"])
        self.assertEqual(sizes["greedy"], sizes["eg"])
        self.assertEqual(len(runs["greedy"].labeled), 18)
        self.assertEqual(runs["greedy"].history[0]["policy"], "seed")
        self.assertEqual(runs["random"].history[1]["policy"], "random")
        self.assertEqual(runs["greedy"].prediction.uplift.shape, (60,))

    def test_zero_rounds(self):
        result = active_learning_run(
            self.data, self.model_config,
            self.acquisition(frac_initial=0.2, frac_target=0.2), seed=0)
        self.assertEqual(len(result.history), 1)
        self.assertEqual(len(result.labeled), 12)

    def test_deterministic(self):
        a = active_learning_run(self.data, self.model_config,
                                self.acquisition(), seed=3)
        b = active_learning_run(self.data, self.model_config,
                                self.acquisition(), seed=3)
        self.assertEqual(a.history, b.history)
        np.testing.assert_array_equal(a.prediction.uplift,
                                      b.prediction.uplift)
