"""Clustering backends: dbscan in cosine distance and seeded Lloyd k-means."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import random_unit_rows
from topolysemy import (
    NOISE,
    Clustering,
    dbscan,
    farthest_first_centers,
    kmeans,
    lloyd_iterations,
    save_clustering_csv,
)


def unit_circle(degrees):
    """Unit rows in the plane at the given angles."""
    rad = np.deg2rad(np.asarray(degrees, dtype=float))
    return np.column_stack([np.cos(rad), np.sin(rad)])


def partition_of(clustering, order=None):
    """Frozensets of member positions (mapped through `order` if given)."""
    remap = order if order is not None else np.arange(len(clustering))
    groups = {
        frozenset(remap[i] for i in clustering.members(c).tolist())
        for c in range(clustering.n_clusters)
    }
    noise = frozenset(remap[i] for i in clustering.members(NOISE).tolist())
    return groups, noise


class TestDbscan:
    def test_chain_merges_into_one_cluster(self):
        step = math.degrees(math.acos(0.95))
        points = unit_circle([0.0, step, 2.0 * step])
        result = dbscan(points, eps=0.051, min_pts=2)
        assert result.n_clusters == 1
        assert result.labels.tolist() == [0, 0, 0]

    def test_isolated_point_is_noise(self):
        points = unit_circle([0.0, 1.0, 90.0])
        result = dbscan(points, eps=0.01, min_pts=2)
        assert result.labels.tolist() == [0, 0, NOISE]

    def test_min_pts_counts_the_point_itself(self):
        points = unit_circle([0.0, 0.0])
        assert dbscan(points, eps=0.001, min_pts=2).n_clusters == 1
        result = dbscan(points, eps=0.001, min_pts=3)
        assert result.n_clusters == 0
        assert result.labels.tolist() == [NOISE, NOISE]

    def test_single_point_with_min_pts_one(self):
        result = dbscan(unit_circle([17.0]), eps=0.01, min_pts=1)
        assert result.labels.tolist() == [0]

    def test_ids_ordered_by_smallest_core_index(self):
        # Two interleaved pairs: indices {0, 2} sit at 90-91 degrees and
        # {1, 3} at 0-1.  The cluster containing index 0 must get id 0.
        points = unit_circle([90.0, 0.0, 91.0, 1.0])
        result = dbscan(points, eps=0.001, min_pts=2)
        assert result.labels.tolist() == [0, 1, 0, 1]

    def test_border_point_joins_lowest_index_core(self):
        # Two four-point cores at 40-43 and 0-3 degrees; a non-core point at
        # 21.5 degrees reaches exactly one core in each (indices 0 and 7).
        points = unit_circle([40.0, 41.0, 42.0, 43.0, 0.0, 1.0, 2.0, 3.0, 21.5])
        result = dbscan(points, eps=0.055, min_pts=4)
        assert result.n_clusters == 2
        assert result.labels.tolist()[:8] == [0, 0, 0, 0, 1, 1, 1, 1]
        assert result.labels[8] == 0

    def test_partition_is_permutation_invariant(self, rng):
        points = random_unit_rows(rng, 40, 5)
        base = dbscan(points, eps=0.3, min_pts=3)
        order = rng.permutation(40)
        moved = dbscan(points[order], eps=0.3, min_pts=3)
        assert partition_of(base) == partition_of(moved, order=order)

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError, match="at least one point"):
            dbscan(np.empty((0, 3)))

    @pytest.mark.parametrize("eps", [0.0, -0.1])
    def test_nonpositive_eps_rejected(self, eps):
        with pytest.raises(ValueError, match="eps"):
            dbscan(unit_circle([0.0]), eps=eps)

    def test_min_pts_below_one_rejected(self):
        with pytest.raises(ValueError, match="min_pts"):
            dbscan(unit_circle([0.0]), min_pts=0)

    def test_non_unit_rows_rejected(self):
        with pytest.raises(ValueError, match="unit-norm"):
            dbscan(np.array([[1.0, 1.0]]))


class TestKmeans:
    def test_k_one_uses_the_mean(self, rng):
        points = rng.standard_normal((12, 3))
        result = kmeans(points, 1)
        assert result.clustering.labels.tolist() == [0] * 12
        np.testing.assert_allclose(result.centers[0], points.mean(axis=0), atol=1e-12)
        expected = float(((points - points.mean(axis=0)) ** 2).sum())
        assert result.objective == pytest.approx(expected, abs=1e-9)

    def test_k_equals_n_gives_singletons(self, rng):
        points = rng.standard_normal((6, 2))
        result = kmeans(points, 6)
        assert sorted(result.clustering.labels.tolist()) == list(range(6))
        assert result.objective == pytest.approx(0.0, abs=1e-12)

    def test_separated_pairs_split_cleanly(self):
        points = np.array([[0.0, 0.0], [0.1, 0.0], [10.0, 0.0], [10.1, 0.0]])
        result = kmeans(points, 2)
        labels = result.clustering.labels
        assert labels[0] == labels[1]
        assert labels[2] == labels[3]
        assert labels[0] != labels[2]

    @pytest.mark.parametrize("k", [0, 7])
    def test_k_out_of_range(self, rng, k):
        with pytest.raises(ValueError, match="k must be"):
            kmeans(rng.standard_normal((6, 2)), k)

    def test_fixed_seed_is_deterministic(self, rng):
        points = rng.standard_normal((30, 4))
        first = kmeans(points, 4, seed=7)
        second = kmeans(points, 4, seed=7)
        assert np.array_equal(first.clustering.labels, second.clustering.labels)
        assert first.objective == second.objective

    @given(seed=st.integers(min_value=0, max_value=10_000))
    def test_separated_data_partition_is_seed_independent(self, seed):
        points = np.array(
            [[0.0, 0.0], [0.2, 0.0], [50.0, 0.0], [50.2, 0.0], [0.0, 50.0], [0.2, 50.0]]
        )
        labels = kmeans(points, 3, seed=seed).clustering.labels
        groups = {frozenset(np.flatnonzero(labels == c).tolist()) for c in range(3)}
        assert groups == {frozenset({0, 1}), frozenset({2, 3}), frozenset({4, 5})}

    def test_objective_never_increases(self, rng):
        points = rng.standard_normal((50, 3))
        centers = farthest_first_centers(points, 5, np.random.default_rng(0))
        objectives = [obj for _, _, obj in lloyd_iterations(points, centers)]
        for before, after in zip(objectives, objectives[1:]):
            assert after <= before + 1e-9

    def test_empty_cluster_is_repaired(self):
        points = np.array([[0.0, 0.0], [1.0, 0.0], [5.0, 0.0], [6.0, 0.0]])
        centers = np.array([[0.0, 0.0], [0.0, 0.0], [5.5, 0.0]])
        final_labels = None
        for labels, _, _ in lloyd_iterations(points, centers):
            final_labels = labels
        assert set(final_labels.tolist()) == {0, 1, 2}

    def test_converged_flag_and_iteration_count(self, rng):
        points = rng.standard_normal((20, 2))
        result = kmeans(points, 3)
        assert result.converged
        assert 1 <= result.n_iter <= 100


class TestFarthestFirst:
    def test_deterministic_for_fixed_generator(self, rng):
        points = rng.standard_normal((15, 3))
        a = farthest_first_centers(points, 4, np.random.default_rng(3))
        b = farthest_first_centers(points, 4, np.random.default_rng(3))
        assert np.array_equal(a, b)

    def test_spreads_over_separated_groups(self):
        points = np.array([[0.0, 0.0], [0.1, 0.1], [9.0, 0.0], [9.1, 0.1], [0.0, 9.0]])
        centers = farthest_first_centers(points, 3, np.random.default_rng(0))
        gaps = [
            np.linalg.norm(centers[i] - centers[j])
            for i in range(3)
            for j in range(i + 1, 3)
        ]
        assert min(gaps) > 5.0

    def test_returns_copies(self, rng):
        points = rng.standard_normal((5, 2))
        centers = farthest_first_centers(points, 2, np.random.default_rng(0))
        centers[0, 0] += 1.0
        assert not np.shares_memory(centers, points)


class TestClusteringValidation:
    def test_missing_id_rejected(self):
        with pytest.raises(ValueError, match="no members"):
            Clustering(labels=np.array([0, 2, 2]), n_clusters=3)

    def test_out_of_range_label_rejected(self):
        with pytest.raises(ValueError, match="labels must lie"):
            Clustering(labels=np.array([0, 5]), n_clusters=2)

    def test_label_below_noise_rejected(self):
        with pytest.raises(ValueError, match="labels must lie"):
            Clustering(labels=np.array([-2, 0]), n_clusters=1)

    def test_empty_needs_zero_clusters(self):
        with pytest.raises(ValueError, match="n_clusters must be 0"):
            Clustering(labels=np.empty(0, dtype=np.int64), n_clusters=1)
        empty = Clustering(labels=np.empty(0, dtype=np.int64), n_clusters=0)
        assert len(empty) == 0

    def test_members_and_sizes(self):
        clustering = Clustering(labels=np.array([0, NOISE, 1, 0]), n_clusters=2)
        assert clustering.members(0).tolist() == [0, 3]
        assert clustering.members(NOISE).tolist() == [1]
        assert clustering.sizes == (2, 1)

    def test_labels_are_read_only(self):
        clustering = Clustering(labels=np.array([0, 0]), n_clusters=1)
        with pytest.raises(ValueError):
            clustering.labels[0] = 1


def test_save_clustering_csv(tmp_path):
    clustering = Clustering(labels=np.array([0, NOISE, 1]), n_clusters=2)
    path = tmp_path / "c.csv"
    save_clustering_csv(clustering, ["ant", "bee", "cat"], path)
    assert path.read_text() == "word,cluster_id\nant,0\nbee,-1\ncat,1\n"


def test_save_clustering_csv_length_mismatch(tmp_path):
    clustering = Clustering(labels=np.array([0]), n_clusters=1)
    with pytest.raises(ValueError, match="words but"):
        save_clustering_csv(clustering, ["a", "b"], tmp_path / "c.csv")
