"""Session state and the five-step request flow (input, preprocess,
skill extraction, recommendation, output) on top of an index snapshot."""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field, replace

from .extract import SkillSet, extract_skills
from .ingest import EmptyResumeError, ResumeDoc, ingest_resume_text
from .recommend import (
    Recommendation,
    SkillGap,
    compute_skill_gap,
    hybrid_recommend,
    item_similarity_knn,
    recommend_for_gap,
)
from .snapshot import IndexSnapshot
from .textpipe import preprocess
from .vectorspace import UserProfile, build_user_profile


class GatewayError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


class NotFoundError(GatewayError):
    def __init__(self, message: str):
        super().__init__("not_found", message)


class PreconditionError(GatewayError):
    def __init__(self, message: str):
        super().__init__("precondition_failed", message)


@dataclass(frozen=True)
class SessionState:
    session_id: str
    display_name: str
    owned_skills: SkillSet = field(default_factory=SkillSet)
    completed_courses: frozenset[str] = frozenset()
    resume: ResumeDoc | None = None
    target_job_id: str | None = None
    created_at: float = field(default_factory=time.time)


class Engine:
    """Shared read-only index plus a mutable session store.

    Session mutations are serialized under one lock; reads serve the
    latest consistent state.
    """

    def __init__(self, snapshot: IndexSnapshot):
        self.snapshot = snapshot
        self._sessions: dict[str, SessionState] = {}
        self._lock = threading.Lock()
        self._knn: dict[str, list[tuple[str, float]]] | None = None

    def _neighbor_map(self) -> dict[str, list[tuple[str, float]]]:
        # snapshot is immutable, so the KNN is computed once and reused
        if self._knn is None:
            with self._lock:
                if self._knn is None:
                    self._knn = item_similarity_knn(
                        self.snapshot.interactions, int(self.snapshot.config["knn_k"])
                    )
        return self._knn

    # -- sessions ----------------------------------------------------------

    def create_session(self, display_name: str) -> SessionState:
        state = SessionState(session_id=secrets.token_hex(16), display_name=display_name)
        with self._lock:
            self._sessions[state.session_id] = state
        return state

    def get_session(self, session_id: str) -> SessionState:
        state = self._sessions.get(session_id)
        if state is None:
            raise NotFoundError(f"unknown session {session_id!r}")
        return state

    def _recompute_owned(self, state: SessionState) -> SessionState:
        owned = SkillSet()
        for item in self.snapshot.item_profiles:
            if item.course_id in state.completed_courses:
                owned = owned | item.skills
        if state.resume is not None:
            doc = preprocess(state.resume.resume_id, state.resume.raw_text)
            owned = owned | extract_skills(doc, self.snapshot.taxonomy)
        return replace(state, owned_skills=owned)

    def submit_resume(self, session_id: str, text: str) -> SkillSet:
        """Store (or replace) the session resume and return detected skills."""
        with self._lock:
            state = self.get_session(session_id)
            try:
                resume = ingest_resume_text(text)
            except EmptyResumeError as exc:
                raise PreconditionError(str(exc)) from exc
            state = self._recompute_owned(replace(state, resume=resume))
            self._sessions[session_id] = state
        doc = preprocess(resume.resume_id, resume.raw_text)
        return extract_skills(doc, self.snapshot.taxonomy)

    def set_completed_courses(self, session_id: str, course_ids: list[str]) -> SkillSet:
        with self._lock:
            state = self.get_session(session_id)
            for course_id in course_ids:
                if self.snapshot.course(course_id) is None:
                    raise NotFoundError(f"unknown course {course_id!r}")
            state = self._recompute_owned(
                replace(state, completed_courses=frozenset(course_ids))
            )
            self._sessions[session_id] = state
        return state.owned_skills

    def set_target_job(self, session_id: str, job_id: str) -> SkillGap:
        with self._lock:
            state = self.get_session(session_id)
            if self.snapshot.job(job_id) is None:
                raise NotFoundError(f"unknown job {job_id!r}")
            state = replace(state, target_job_id=job_id)
            self._sessions[session_id] = state
        return self.skill_gap(session_id)

    # -- recommendation flow -----------------------------------------------

    def _user_profile(self, state: SessionState) -> UserProfile:
        completed = [
            self.snapshot.course(cid)
            for cid in sorted(state.completed_courses)
            if self.snapshot.course(cid) is not None
        ]
        if not completed and state.resume is None:
            return UserProfile(
                user_id=state.session_id,
                vector={},
                owned_skills=state.owned_skills,
                completed_courses=frozenset(),
            )
        return build_user_profile(
            state.session_id,
            completed,
            state.resume,
            list(self.snapshot.item_profiles),
            self.snapshot.stats,
            self.snapshot.taxonomy,
        )

    def skill_gap(self, session_id: str) -> SkillGap:
        state = self.get_session(session_id)
        if state.target_job_id is None:
            raise PreconditionError("no target job set for this session")
        job = self.snapshot.job(state.target_job_id)
        return compute_skill_gap(state.owned_skills, job, self.snapshot.taxonomy)

    def recommendations(
        self, session_id: str, mode: str = "hybrid", limit: int = 10
    ) -> list[Recommendation]:
        state = self.get_session(session_id)
        if mode == "hybrid":
            user = self._user_profile(state)
            return hybrid_recommend(
                user,
                list(self.snapshot.item_profiles),
                self.snapshot.interactions,
                alpha=float(self.snapshot.config["alpha"]),
                limit=limit,
                knn_k=int(self.snapshot.config["knn_k"]),
                knn=self._neighbor_map(),
            )
        if mode == "gap":
            gap = self.skill_gap(session_id)
            profile = self.snapshot.job_profile(state.target_job_id)
            return recommend_for_gap(
                gap,
                list(self.snapshot.item_profiles),
                profile.vector if profile else {},
                limit=limit,
                exclude=state.completed_courses,
            )
        raise PreconditionError(f"unknown recommendation mode {mode!r}")

    def jobs_by_cluster(self, cluster: int | None = None, query: str = "") -> dict[int, list]:
        """Job postings grouped by cluster label, optionally filtered."""
        needle = query.strip().lower()
        groups: dict[int, list] = {}
        for profile in self.snapshot.job_profiles:
            if cluster is not None and profile.cluster != cluster:
                continue
            job = self.snapshot.job(profile.job_id)
            if needle and needle not in job.title.lower() and needle not in job.description.lower():
                continue
            groups.setdefault(profile.cluster, []).append(job)
        return dict(sorted(groups.items()))
