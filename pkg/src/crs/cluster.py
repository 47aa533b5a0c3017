"""Spherical k-means clustering of job-posting vectors into career areas."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .extract import WeightedTermVector
from .vectorspace import cosine_similarity, normalized


class ClusteringError(ValueError):
    pass


@dataclass(frozen=True)
class ClusterModel:
    k: int
    centroids: tuple[WeightedTermVector, ...]
    assignments: dict[str, int]
    inertia: float
    inertia_history: tuple[float, ...]


def _mean_centroid(members: list[WeightedTermVector]) -> WeightedTermVector:
    acc: WeightedTermVector = {}
    for vector in members:
        for term, weight in vector.items():
            acc[term] = acc.get(term, 0.0) + weight
    return normalized({t: w / len(members) for t, w in acc.items()})


def _plus_plus_init(
    ids: list[str], vectors: dict[str, WeightedTermVector], k: int, rng: random.Random
) -> list[WeightedTermVector]:
    centroids = [dict(vectors[rng.choice(ids)])]
    while len(centroids) < k:
        distances = []
        for job_id in ids:
            d = min(1.0 - cosine_similarity(vectors[job_id], c) for c in centroids)
            distances.append(max(d, 0.0))
        total = sum(distances)
        if total == 0.0:
            centroids.append(dict(vectors[rng.choice(ids)]))
            continue
        pick = rng.random() * total
        acc = 0.0
        chosen = ids[-1]
        for job_id, d in zip(ids, distances):
            acc += d
            if acc >= pick:
                chosen = job_id
                break
        centroids.append(dict(vectors[chosen]))
    return centroids


def kmeans_fit(
    vectors: dict[str, WeightedTermVector],
    k: int,
    seed: int = 0,
    max_iter: int = 50,
) -> ClusterModel:
    """Fit spherical k-means (distance = 1 - cosine) with seeded k-means++
    initialization and Lloyd iterations.

    The fitted model always has exactly k non-empty clusters and every
    input assigned to exactly one cluster.
    """
    ids = sorted(vectors)
    n = len(ids)
    if k < 1:
        raise ClusteringError("k must be at least 1")
    if k > n:
        raise ClusteringError(f"k={k} exceeds number of vectors ({n})")
    for job_id in ids:
        if not vectors[job_id]:
            raise ClusteringError(f"zero vector for {job_id!r}")

    unit = {job_id: normalized(vectors[job_id]) for job_id in ids}
    rng = random.Random(seed)
    centroids = _plus_plus_init(ids, unit, k, rng)

    assignments: dict[str, int] = {}
    inertia_history: list[float] = []
    inertia = 0.0
    for _ in range(max_iter):
        new_assignments: dict[str, int] = {}
        for job_id in ids:
            sims = [cosine_similarity(unit[job_id], c) for c in centroids]
            best = max(range(k), key=lambda idx: (sims[idx], -idx))
            new_assignments[job_id] = best

        # Repair empty clusters: steal the point farthest from its centroid.
        members: dict[int, list[str]] = {idx: [] for idx in range(k)}
        for job_id in ids:
            members[new_assignments[job_id]].append(job_id)
        for idx in range(k):
            if members[idx]:
                continue
            donors = [
                job_id
                for job_id, assigned in new_assignments.items()
                if len(members[assigned]) > 1
            ]
            farthest = max(
                donors,
                key=lambda job_id: (
                    1.0 - cosine_similarity(unit[job_id], centroids[new_assignments[job_id]]),
                    job_id,
                ),
            )
            members[new_assignments[farthest]].remove(farthest)
            new_assignments[farthest] = idx
            members[idx] = [farthest]

        centroids = [_mean_centroid([unit[j] for j in members[idx]]) for idx in range(k)]
        inertia = sum(
            1.0 - cosine_similarity(unit[job_id], centroids[new_assignments[job_id]])
            for job_id in ids
        )
        inertia_history.append(inertia)
        if new_assignments == assignments:
            break
        assignments = new_assignments

    return ClusterModel(
        k=k,
        centroids=tuple(centroids),
        assignments=assignments,
        inertia=inertia,
        inertia_history=tuple(inertia_history),
    )


def kmeans_assign(v: WeightedTermVector, model: ClusterModel) -> int:
    """Index of the centroid most cosine-similar to v; ties to lowest index."""
    if not v:
        raise ClusteringError("cannot assign a zero vector")
    sims = [cosine_similarity(v, c) for c in model.centroids]
    return max(range(model.k), key=lambda idx: (sims[idx], -idx))
