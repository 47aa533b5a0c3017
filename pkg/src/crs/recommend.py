"""Hybrid recommendation: content cosine ranking, item-based KNN
collaborative filtering, their blend, and skill-gap driven ranking."""

from __future__ import annotations

from dataclasses import dataclass, field

from .extract import SkillSet, WeightedTermVector, extract_skills
from .ingest import JobRecord, SkillTaxonomy
from .textpipe import preprocess
from .vectorspace import ItemProfile, UserProfile, cosine_similarity

DEFAULT_ALPHA = 0.5
DEFAULT_KNN_K = 10
DEFAULT_MAX_MARK = 100.0


class ColdStartError(LookupError):
    """User has no row in the interaction matrix."""


@dataclass
class InteractionMatrix:
    """Sparse student-by-course interaction values in [0, 1].

    A value of 1.0 records a completion with no grade; grades are
    normalized by the configured maximum mark.
    """

    values: dict[str, dict[str, float]] = field(default_factory=dict)
    _courses: set[str] = field(default_factory=set)

    @property
    def course_ids(self) -> list[str]:
        """Column order: course ids sorted lexicographically."""
        return sorted(self._courses)

    def add(self, user_id: str, course_id: str, value: float) -> None:
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"interaction value {value} outside [0, 1]")
        self.values.setdefault(user_id, {})[course_id] = value
        self._courses.add(course_id)

    def user_row(self, user_id: str) -> dict[str, float]:
        if user_id not in self.values:
            raise ColdStartError(user_id)
        return self.values[user_id]

    def column(self, course_id: str) -> dict[str, float]:
        return {
            user_id: row[course_id]
            for user_id, row in self.values.items()
            if course_id in row
        }

    @staticmethod
    def from_records(
        records: list[dict], max_mark: float = DEFAULT_MAX_MARK
    ) -> "InteractionMatrix":
        """Build from interaction records {user_id, course_id, grade|null}."""
        matrix = InteractionMatrix()
        for record in records:
            grade = record.get("grade")
            value = 1.0 if grade is None else min(max(grade / max_mark, 0.0), 1.0)
            matrix.add(record["user_id"], record["course_id"], value)
        return matrix


@dataclass(frozen=True)
class SkillGap:
    required: SkillSet
    owned: SkillSet
    missing: frozenset[str]


@dataclass(frozen=True)
class Recommendation:
    course_id: str
    final_score: float
    content_score: float
    collab_score: float
    gap_coverage: tuple[str, ...] = ()


def content_scores(user: UserProfile, items: list[ItemProfile]) -> dict[str, float]:
    """Cosine of the user vector against every non-completed item vector."""
    return {
        item.course_id: cosine_similarity(user.vector, item.vector)
        for item in items
        if item.course_id not in user.completed_courses
    }


def item_similarity_knn(
    m: InteractionMatrix, k: int = DEFAULT_KNN_K
) -> dict[str, list[tuple[str, float]]]:
    """Top-k most similar courses per course, by cosine over interaction
    columns. Courses with all-zero columns get empty neighbor lists."""
    if k < 1:
        raise ValueError("k must be at least 1")
    columns = {cid: m.column(cid) for cid in m.course_ids}
    neighbors: dict[str, list[tuple[str, float]]] = {}
    for cid in m.course_ids:
        col = columns[cid]
        if not col:
            neighbors[cid] = []
            continue
        sims = []
        for other in m.course_ids:
            if other == cid or not columns[other]:
                continue
            sim = cosine_similarity(col, columns[other])
            if sim > 0.0:
                sims.append((other, sim))
        sims.sort(key=lambda pair: (-pair[1], pair[0]))
        neighbors[cid] = sims[:k]
    return neighbors


def collaborative_scores(
    user_id: str,
    m: InteractionMatrix,
    knn: dict[str, list[tuple[str, float]]],
    exclude: frozenset[str] = frozenset(),
) -> dict[str, float]:
    """Similarity-weighted average of the user's interactions over each
    course's neighbors; 0 when the user touched none of them."""
    row = m.user_row(user_id)
    scores: dict[str, float] = {}
    for cid, neighbor_list in knn.items():
        if cid in exclude:
            continue
        numerator = sum(sim * row.get(other, 0.0) for other, sim in neighbor_list)
        denominator = sum(sim for _, sim in neighbor_list)
        scores[cid] = numerator / denominator if denominator > 0.0 else 0.0
    return scores


def _min_max(scores: dict[str, float]) -> dict[str, float]:
    if not scores:
        return {}
    low, high = min(scores.values()), max(scores.values())
    if high == low:
        return {cid: 0.0 for cid in scores}
    return {cid: (s - low) / (high - low) for cid, s in scores.items()}


def hybrid_recommend(
    user: UserProfile,
    items: list[ItemProfile],
    m: InteractionMatrix | None,
    alpha: float = DEFAULT_ALPHA,
    limit: int = 10,
    knn_k: int = DEFAULT_KNN_K,
    knn: dict[str, list[tuple[str, float]]] | None = None,
) -> list[Recommendation]:
    """Blend min-max-normalized content and collaborative scores with
    weight alpha; cold-start users fall back to pure content ranking.

    A precomputed neighbor map may be passed to avoid rebuilding the
    item-item KNN on every request.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha {alpha} outside [0, 1]")
    content = content_scores(user, items)
    collab: dict[str, float] = {}
    if m is not None:
        try:
            if knn is None:
                knn = item_similarity_knn(m, knn_k)
            collab = collaborative_scores(
                user.user_id, m, knn, exclude=user.completed_courses
            )
        except ColdStartError:
            collab = {}
    candidates = sorted(content)
    norm_content = _min_max(content)
    norm_collab = _min_max({cid: collab.get(cid, 0.0) for cid in candidates}) if collab else {}
    recs = []
    for cid in candidates:
        c = norm_content.get(cid, 0.0)
        v = norm_collab.get(cid, 0.0)
        recs.append(
            Recommendation(
                course_id=cid,
                final_score=alpha * c + (1.0 - alpha) * v,
                content_score=c,
                collab_score=v,
            )
        )
    recs.sort(key=lambda r: (-r.final_score, r.course_id))
    return recs[:limit]


def compute_skill_gap(
    owned: SkillSet, job: JobRecord, tax: SkillTaxonomy
) -> SkillGap:
    """Skills the target job requires that the user does not own."""
    doc = preprocess(job.job_id, job.description)
    required = extract_skills(doc, tax)
    return SkillGap(
        required=required,
        owned=owned,
        missing=frozenset(required.skills - owned.skills),
    )


def recommend_for_gap(
    gap: SkillGap,
    items: list[ItemProfile],
    job_vector: WeightedTermVector,
    limit: int = 10,
    exclude: frozenset[str] = frozenset(),
) -> list[Recommendation]:
    """Rank courses by the fraction of missing skills they cover, then by
    similarity to the job vector. Courses covering nothing are omitted."""
    if not gap.missing:
        return []
    recs = []
    for item in items:
        if item.course_id in exclude:
            continue
        covered = sorted(item.skills.skills & gap.missing)
        if not covered:
            continue
        coverage = len(covered) / len(gap.missing)
        similarity = cosine_similarity(item.vector, job_vector)
        recs.append(
            Recommendation(
                course_id=item.course_id,
                final_score=coverage,
                content_score=similarity,
                collab_score=0.0,
                gap_coverage=tuple(covered),
            )
        )
    recs.sort(key=lambda r: (-r.final_score, -r.content_score, r.course_id))
    return recs[:limit]
