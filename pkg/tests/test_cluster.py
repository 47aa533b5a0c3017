import itertools
import random

import pytest

from crs import cluster
from crs.vectorspace import cosine_similarity, normalized


def random_vectors(rng, n, dims=6):
    terms = [f"t{i}" for i in range(dims)]
    out = {}
    for i in range(n):
        size = rng.randint(1, dims)
        vec = {t: rng.uniform(0.1, 5.0) for t in rng.sample(terms, size)}
        out[f"v{i:02d}"] = vec
    return out


def partition_inertia(vectors, groups):
    total = 0.0
    for members in groups:
        unit = [normalized(vectors[m]) for m in members]
        centroid = {}
        for v in unit:
            for t, w in v.items():
                centroid[t] = centroid.get(t, 0.0) + w / len(unit)
        centroid = normalized(centroid)
        total += sum(1.0 - cosine_similarity(v, centroid) for v in unit)
    return total


def best_two_partition(vectors):
    """Exhaustive search over all 2-partitions (oracle)."""
    ids = sorted(vectors)
    best = None
    best_cost = float("inf")
    for size in range(1, len(ids)):
        for left in itertools.combinations(ids, size):
            right = [i for i in ids if i not in left]
            cost = partition_inertia(vectors, [list(left), right])
            if cost < best_cost:
                best_cost = cost
                best = frozenset({frozenset(left), frozenset(right)})
    return best, best_cost


TWO_BLOBS = {
    "a1": {"x": 1.0, "y": 0.05},
    "a2": {"x": 0.9, "y": 0.1},
    "b1": {"z": 1.0, "w": 0.05},
    "b2": {"z": 0.8, "w": 0.1},
}


class TestKmeansFit:
    def test_k1_single_cluster(self):
        model = cluster.kmeans_fit(TWO_BLOBS, k=1, seed=0)
        assert model.k == 1
        assert set(model.assignments.values()) == {0}

    def test_k_equals_n(self):
        model = cluster.kmeans_fit(TWO_BLOBS, k=4, seed=1)
        assert sorted(model.assignments.values()) == [0, 1, 2, 3]
        assert model.inertia == pytest.approx(0.0, abs=1e-9)

    def test_two_blob_fixture_recovers_optimal_partition(self):
        model = cluster.kmeans_fit(TWO_BLOBS, k=2, seed=0)
        groups = {}
        for vid, idx in model.assignments.items():
            groups.setdefault(idx, set()).add(vid)
        got = frozenset(frozenset(g) for g in groups.values())
        expected, _ = best_two_partition(TWO_BLOBS)
        assert got == expected

    @pytest.mark.parametrize("bad_k", [0, 5])
    def test_invalid_k(self, bad_k):
        with pytest.raises(cluster.ClusteringError):
            cluster.kmeans_fit(TWO_BLOBS, k=bad_k, seed=0)

    def test_zero_vector_rejected(self):
        with pytest.raises(cluster.ClusteringError):
            cluster.kmeans_fit({"a": {"x": 1.0}, "b": {}}, k=1, seed=0)

    def test_axioms_on_random_datasets(self):
        rng = random.Random(42)
        for trial in range(50):
            n = rng.randint(2, 30)
            k = rng.randint(1, min(5, n))
            vectors = random_vectors(rng, n)
            model = cluster.kmeans_fit(vectors, k=k, seed=trial)
            # exactly k clusters, none empty
            assert len(model.centroids) == k
            assert set(model.assignments.values()) == set(range(k))
            # assignments partition the input
            assert sorted(model.assignments) == sorted(vectors)
            # objective non-increasing
            history = model.inertia_history
            for earlier, later in zip(history, history[1:]):
                assert later <= earlier + 1e-9

    def test_deterministic_for_fixed_seed(self):
        rng = random.Random(5)
        vectors = random_vectors(rng, 12)
        first = cluster.kmeans_fit(vectors, k=3, seed=9)
        second = cluster.kmeans_fit(vectors, k=3, seed=9)
        assert first == second


class TestKmeansAssign:
    def test_centroid_maps_to_itself(self):
        model = cluster.kmeans_fit(TWO_BLOBS, k=2, seed=0)
        for idx, centroid in enumerate(model.centroids):
            assert cluster.kmeans_assign(dict(centroid), model) == idx

    def test_tie_breaks_to_lowest_index(self):
        model = cluster.ClusterModel(
            k=2,
            centroids=({"x": 1.0}, {"y": 1.0}),
            assignments={"a": 0, "b": 1},
            inertia=0.0,
            inertia_history=(0.0,),
        )
        assert cluster.kmeans_assign({"x": 1.0, "y": 1.0}, model) == 0

    def test_hand_computed_assignment(self):
        model = cluster.ClusterModel(
            k=3,
            centroids=({"x": 1.0}, {"x": 1.0, "y": 1.0}, {"y": 1.0}),
            assignments={},
            inertia=0.0,
            inertia_history=(),
        )
        # cos with c0 = 0.316, c1 = 0.894, c2 = 0.949
        assert cluster.kmeans_assign({"x": 1.0, "y": 3.0}, model) == 2

    def test_zero_vector_rejected(self):
        model = cluster.kmeans_fit(TWO_BLOBS, k=1, seed=0)
        with pytest.raises(cluster.ClusteringError):
            cluster.kmeans_assign({}, model)
