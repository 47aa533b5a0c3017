"""Offline evaluation: precision/recall/F1 over held-out interactions and
request latency measurement."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .recommend import InteractionMatrix


@dataclass(frozen=True)
class EvalSplit:
    """Training matrix plus per-user held-out relevant course sets."""

    training: InteractionMatrix
    held_out: dict[str, set[str]]


@dataclass(frozen=True)
class LatencyStats:
    p50_ms: float
    p95_ms: float
    max_ms: float
    repetitions: int


@dataclass(frozen=True)
class MetricsReport:
    precision: float
    recall: float
    f1: float
    per_user: dict[str, tuple[float, float, float]] = field(default_factory=dict)
    skipped_users: int = 0
    latency: LatencyStats | None = None

    def summary_table(self) -> str:
        lines = [
            "metric     value",
            f"precision  {self.precision:.4f}",
            f"recall     {self.recall:.4f}",
            f"f1         {self.f1:.4f}",
            f"users      {len(self.per_user)} evaluated, {self.skipped_users} skipped",
        ]
        if self.latency is not None:
            lines.append(f"latency    p50 {self.latency.p50_ms:.2f} ms, p95 {self.latency.p95_ms:.2f} ms")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        doc = {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "per_user": {u: {"precision": p, "recall": r, "f1": f} for u, (p, r, f) in self.per_user.items()},
            "skipped_users": self.skipped_users,
        }
        if self.latency is not None:
            doc["latency"] = {
                "p50_ms": self.latency.p50_ms,
                "p95_ms": self.latency.p95_ms,
                "max_ms": self.latency.max_ms,
                "repetitions": self.latency.repetitions,
            }
        return doc


def precision_recall_f1(
    recommended: Iterable[str], relevant: set[str]
) -> tuple[float, float, float]:
    """Precision, recall, and F1 of a recommendation list against a
    relevant set. Empty inputs yield 0 for the affected metric."""
    rec = list(dict.fromkeys(recommended))
    hits = len([c for c in rec if c in relevant])
    p = hits / len(rec) if rec else 0.0
    r = hits / len(relevant) if relevant else 0.0
    f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return p, r, f1


def leave_last_out_split(m: InteractionMatrix) -> EvalSplit:
    """Hold out each user's last interaction (by course id order) for testing."""
    training = InteractionMatrix()
    held_out: dict[str, set[str]] = {}
    for user_id in sorted(m.values):
        row = m.values[user_id]
        if len(row) < 2:
            for course_id, value in row.items():
                training.add(user_id, course_id, value)
            held_out[user_id] = set()
            continue
        last = sorted(row)[-1]
        held_out[user_id] = {last}
        for course_id, value in row.items():
            if course_id != last:
                training.add(user_id, course_id, value)
    return EvalSplit(training=training, held_out=held_out)


def evaluate_recommender(
    split: EvalSplit,
    recommend_fn: Callable[[str, InteractionMatrix], list[str]],
    top_n: int = 10,
) -> MetricsReport:
    """Macro-averaged precision/recall/F1 of top-n lists per user.

    recommend_fn(user_id, training_matrix) returns a ranked course-id list.
    Users with empty held-out sets are skipped and counted.
    """
    per_user: dict[str, tuple[float, float, float]] = {}
    skipped = 0
    for user_id in sorted(split.held_out):
        relevant = split.held_out[user_id]
        if not relevant:
            skipped += 1
            continue
        recommended = recommend_fn(user_id, split.training)[:top_n]
        per_user[user_id] = precision_recall_f1(recommended, relevant)
    if per_user:
        n = len(per_user)
        precision = sum(v[0] for v in per_user.values()) / n
        recall = sum(v[1] for v in per_user.values()) / n
        f1 = sum(v[2] for v in per_user.values()) / n
    else:
        precision = recall = f1 = 0.0
    return MetricsReport(
        precision=precision, recall=recall, f1=f1, per_user=per_user, skipped_users=skipped
    )


def _percentile(sorted_values: list[float], q: float) -> float:
    if len(sorted_values) == 1:
        return sorted_values[0]
    pos = q * (len(sorted_values) - 1)
    lower = int(pos)
    upper = min(lower + 1, len(sorted_values) - 1)
    frac = pos - lower
    return sorted_values[lower] * (1 - frac) + sorted_values[upper] * frac


def measure_latency(thunk: Callable[[], object], repetitions: int = 100) -> LatencyStats:
    """Wall-clock latency of repeated calls, excluding one warm-up call."""
    if repetitions < 1:
        raise ValueError("repetitions must be at least 1")
    thunk()  # warm-up, untimed
    samples = []
    for _ in range(repetitions):
        start = time.perf_counter()
        thunk()
        samples.append((time.perf_counter() - start) * 1000.0)
    samples.sort()
    return LatencyStats(
        p50_ms=_percentile(samples, 0.50),
        p95_ms=_percentile(samples, 0.95),
        max_ms=samples[-1],
        repetitions=repetitions,
    )
