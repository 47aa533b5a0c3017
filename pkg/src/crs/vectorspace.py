"""Item/user profile vectors over a shared vocabulary and cosine similarity."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .extract import CorpusStats, SkillSet, WeightedTermVector, extract_skills, tfidf_vector
from .ingest import CourseRecord, ResumeDoc, SkillTaxonomy
from .textpipe import DEFAULT_STOPWORDS, TokenizedDoc, preprocess


class EmptyCorpusError(ValueError):
    pass


@dataclass(frozen=True)
class Vocabulary:
    """Sorted distinct non-stopword terms with index lookup."""

    terms: tuple[str, ...]
    index: dict[str, int] = field(default_factory=dict, repr=False)

    @staticmethod
    def build(terms: set[str]) -> "Vocabulary":
        ordered = tuple(sorted(terms))
        return Vocabulary(terms=ordered, index={t: i for i, t in enumerate(ordered)})


@dataclass(frozen=True)
class ItemProfile:
    course_id: str
    vector: WeightedTermVector
    skills: SkillSet

    @property
    def degenerate(self) -> bool:
        """True when the course text produced no weighted terms."""
        return not self.vector


@dataclass(frozen=True)
class UserProfile:
    user_id: str
    vector: WeightedTermVector
    owned_skills: SkillSet
    completed_courses: frozenset[str] = frozenset()


def build_vocabulary(
    docs: list[TokenizedDoc], stops: frozenset[str] = DEFAULT_STOPWORDS
) -> Vocabulary:
    """Union of all non-stopword terms, sorted; order-invariant in docs."""
    if not docs:
        raise EmptyCorpusError("no documents")
    terms = {t for doc in docs for t in doc.tokens if t not in stops}
    if not terms:
        raise EmptyCorpusError("corpus contains only stopwords")
    return Vocabulary.build(terms)


def norm(v: WeightedTermVector) -> float:
    return math.sqrt(sum(w * w for w in v.values()))


def normalized(v: WeightedTermVector) -> WeightedTermVector:
    """Scale v to unit L2 norm; zero vectors stay empty."""
    n = norm(v)
    if n == 0.0:
        return {}
    return {t: w / n for t, w in v.items()}


def cosine_similarity(a: WeightedTermVector, b: WeightedTermVector) -> float:
    """Dot product over the product of norms; 0 for zero-norm inputs."""
    if not a or not b:
        return 0.0
    if len(b) < len(a):
        a, b = b, a
    dot = sum(w * b[t] for t, w in a.items() if t in b)
    if dot == 0.0:
        return 0.0
    denominator = norm(a) * norm(b)
    if denominator == 0.0:
        return 0.0
    return dot / denominator


def build_item_profiles(
    courses: list[CourseRecord],
    stats: CorpusStats,
    tax: SkillTaxonomy,
    stops: frozenset[str] = DEFAULT_STOPWORDS,
) -> list[ItemProfile]:
    """One profile per course: TF-IDF vector plus extracted skills over
    description + learning outcomes."""
    profiles = []
    for course in courses:
        doc = preprocess(course.course_id, course.text)
        vector = tfidf_vector(doc, stats, stops) if doc.tokens else {}
        profiles.append(
            ItemProfile(
                course_id=course.course_id,
                vector=vector,
                skills=extract_skills(doc, tax),
            )
        )
    return profiles


def build_user_profile(
    user_id: str,
    completed: list[CourseRecord],
    resume: ResumeDoc | None,
    profiles: list[ItemProfile],
    stats: CorpusStats,
    tax: SkillTaxonomy,
    stops: frozenset[str] = DEFAULT_STOPWORDS,
) -> UserProfile:
    """Combine completed-course vectors and the resume vector into one profile.

    History vector is the normalized mean of completed item vectors; the
    resume contributes a normalized TF-IDF vector merged term-wise by max.
    The final merged vector is re-normalized.
    """
    if not completed and resume is None:
        raise ValueError("user profile needs completed courses or a resume")
    by_id = {p.course_id: p for p in profiles}
    owned = SkillSet()
    history: WeightedTermVector = {}
    if completed:
        for course in completed:
            profile = by_id.get(course.course_id)
            if profile is None:
                continue
            for term, weight in profile.vector.items():
                history[term] = history.get(term, 0.0) + weight
            owned = owned | profile.skills
        history = normalized({t: w / len(completed) for t, w in history.items()})
    resume_vector: WeightedTermVector = {}
    if resume is not None:
        doc = preprocess(resume.resume_id, resume.raw_text)
        if doc.tokens:
            resume_vector = normalized(tfidf_vector(doc, stats, stops))
        owned = owned | extract_skills(doc, tax)
    merged = dict(history)
    for term, weight in resume_vector.items():
        merged[term] = max(merged.get(term, 0.0), weight)
    return UserProfile(
        user_id=user_id,
        vector=normalized(merged),
        owned_skills=owned,
        completed_courses=frozenset(c.course_id for c in completed),
    )
