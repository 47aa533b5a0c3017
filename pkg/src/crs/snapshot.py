"""Index lifecycle: build the full engine state from the corpora and
persist it as a deterministic, checksummed snapshot file."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .cluster import ClusterModel, kmeans_fit
from .extract import CorpusStats, SkillSet, WeightedTermVector, extract_skills, tfidf_vector
from .ingest import CourseRecord, JobRecord, SkillEntry, SkillTaxonomy
from .recommend import InteractionMatrix
from .textpipe import preprocess
from .vectorspace import ItemProfile, Vocabulary, build_item_profiles, build_vocabulary

SNAPSHOT_VERSION = 1
SNAPSHOT_FILENAME = "snapshot.json"

DEFAULT_CONFIG = {
    "alpha": 0.5,
    "knn_k": 10,
    "kmeans_k": 8,
    "kmeans_seed": 0,
    "kmeans_max_iter": 50,
    "max_mark": 100.0,
    "textrank_damping": 0.85,
}


class SnapshotError(Exception):
    pass


class SnapshotVersionError(SnapshotError):
    pass


class SnapshotChecksumError(SnapshotError):
    pass


@dataclass(frozen=True)
class JobProfile:
    job_id: str
    vector: WeightedTermVector
    skills: SkillSet
    cluster: int


@dataclass(frozen=True)
class IndexSnapshot:
    """Immutable bundle of everything the service queries."""

    config: dict
    courses: tuple[CourseRecord, ...]
    jobs: tuple[JobRecord, ...]
    taxonomy: SkillTaxonomy
    vocabulary: Vocabulary
    stats: CorpusStats
    item_profiles: tuple[ItemProfile, ...]
    job_profiles: tuple[JobProfile, ...]
    cluster_model: ClusterModel | None
    interactions: InteractionMatrix
    _course_index: dict[str, CourseRecord] = field(default_factory=dict, repr=False)
    _job_index: dict[str, JobRecord] = field(default_factory=dict, repr=False)

    @property
    def config_fingerprint(self) -> str:
        return hashlib.sha256(_canonical(self.config).encode()).hexdigest()

    def course(self, course_id: str) -> CourseRecord | None:
        return self._course_index.get(course_id)

    def job(self, job_id: str) -> JobRecord | None:
        return self._job_index.get(job_id)

    def job_profile(self, job_id: str) -> JobProfile | None:
        for profile in self.job_profiles:
            if profile.job_id == job_id:
                return profile
        return None


def _canonical(obj: object) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def build_index(
    courses: list[CourseRecord],
    jobs: list[JobRecord],
    taxonomy: SkillTaxonomy,
    interactions: InteractionMatrix | None = None,
    config: dict | None = None,
) -> IndexSnapshot:
    """Run the full pipeline (preprocess, extract, profiles, clustering)
    over the corpora. Deterministic for fixed inputs and seed."""
    if not courses:
        raise SnapshotError("course catalog is empty")
    cfg = dict(DEFAULT_CONFIG)
    if config:
        cfg.update(config)

    course_docs = [preprocess(c.course_id, c.text) for c in courses]
    stats = CorpusStats.from_docs(course_docs)
    vocabulary = build_vocabulary(course_docs)
    item_profiles = build_item_profiles(courses, stats, taxonomy)

    job_vectors: dict[str, WeightedTermVector] = {}
    job_skills: dict[str, SkillSet] = {}
    for job in jobs:
        doc = preprocess(job.job_id, job.description)
        job_vectors[job.job_id] = tfidf_vector(doc, stats) if doc.tokens else {}
        job_skills[job.job_id] = extract_skills(doc, taxonomy)

    cluster_model = None
    clusterable = {jid: v for jid, v in job_vectors.items() if v}
    if clusterable:
        k = min(int(cfg["kmeans_k"]), len(clusterable))
        cluster_model = kmeans_fit(
            clusterable,
            k=k,
            seed=int(cfg["kmeans_seed"]),
            max_iter=int(cfg["kmeans_max_iter"]),
        )

    job_profiles = []
    for job in jobs:
        cluster = -1
        if cluster_model is not None and job.job_id in cluster_model.assignments:
            cluster = cluster_model.assignments[job.job_id]
        job_profiles.append(
            JobProfile(
                job_id=job.job_id,
                vector=job_vectors[job.job_id],
                skills=job_skills[job.job_id],
                cluster=cluster,
            )
        )

    return IndexSnapshot(
        config=cfg,
        courses=tuple(courses),
        jobs=tuple(jobs),
        taxonomy=taxonomy,
        vocabulary=vocabulary,
        stats=stats,
        item_profiles=tuple(item_profiles),
        job_profiles=tuple(job_profiles),
        cluster_model=cluster_model,
        interactions=interactions or InteractionMatrix(),
        _course_index={c.course_id: c for c in courses},
        _job_index={j.job_id: j for j in jobs},
    )


def _skillset_to_dict(s: SkillSet) -> dict:
    return {
        "skills": sorted(s.skills),
        "evidence": {k: list(v) for k, v in sorted(s.evidence.items())},
    }


def _skillset_from_dict(doc: dict) -> SkillSet:
    return SkillSet(
        skills=frozenset(doc["skills"]),
        evidence={k: tuple(v) for k, v in doc["evidence"].items()},
    )


def snapshot_to_dict(s: IndexSnapshot) -> dict:
    return {
        "config": s.config,
        "config_fingerprint": s.config_fingerprint,
        "courses": [
            {
                "course_id": c.course_id,
                "name": c.name,
                "description": c.description,
                "learning_outcomes": c.learning_outcomes,
                "level": c.level,
            }
            for c in s.courses
        ],
        "jobs": [
            {"job_id": j.job_id, "title": j.title, "source": j.source, "description": j.description}
            for j in s.jobs
        ],
        "taxonomy": [
            {"skill_id": e.skill_id, "display_name": e.display_name, "aliases": list(e.aliases)}
            for e in s.taxonomy.entries
        ],
        "vocabulary": list(s.vocabulary.terms),
        "corpus_stats": {"n_docs": s.stats.n_docs, "doc_freq": s.stats.doc_freq},
        "item_profiles": [
            {
                "course_id": p.course_id,
                "vector": p.vector,
                "skills": _skillset_to_dict(p.skills),
            }
            for p in s.item_profiles
        ],
        "job_profiles": [
            {
                "job_id": p.job_id,
                "vector": p.vector,
                "skills": _skillset_to_dict(p.skills),
                "cluster": p.cluster,
            }
            for p in s.job_profiles
        ],
        "cluster_model": None
        if s.cluster_model is None
        else {
            "k": s.cluster_model.k,
            "centroids": list(s.cluster_model.centroids),
            "assignments": s.cluster_model.assignments,
            "inertia": s.cluster_model.inertia,
            "inertia_history": list(s.cluster_model.inertia_history),
        },
        "interactions": [
            {"user_id": uid, "course_id": cid, "value": value}
            for uid in sorted(s.interactions.values)
            for cid, value in sorted(s.interactions.values[uid].items())
        ],
    }


def snapshot_from_dict(doc: dict) -> IndexSnapshot:
    courses = tuple(CourseRecord(**c) for c in doc["courses"])
    jobs = tuple(JobRecord(**j) for j in doc["jobs"])
    taxonomy = SkillTaxonomy.build(
        [
            SkillEntry(e["skill_id"], e["display_name"], tuple(e["aliases"]))
            for e in doc["taxonomy"]
        ]
    )
    cm = doc["cluster_model"]
    cluster_model = None
    if cm is not None:
        cluster_model = ClusterModel(
            k=cm["k"],
            centroids=tuple(cm["centroids"]),
            assignments=cm["assignments"],
            inertia=cm["inertia"],
            inertia_history=tuple(cm["inertia_history"]),
        )
    interactions = InteractionMatrix()
    for rec in doc["interactions"]:
        interactions.add(rec["user_id"], rec["course_id"], rec["value"])
    return IndexSnapshot(
        config=doc["config"],
        courses=courses,
        jobs=jobs,
        taxonomy=taxonomy,
        vocabulary=Vocabulary.build(set(doc["vocabulary"])),
        stats=CorpusStats(
            n_docs=doc["corpus_stats"]["n_docs"], doc_freq=doc["corpus_stats"]["doc_freq"]
        ),
        item_profiles=tuple(
            ItemProfile(
                course_id=p["course_id"],
                vector=p["vector"],
                skills=_skillset_from_dict(p["skills"]),
            )
            for p in doc["item_profiles"]
        ),
        job_profiles=tuple(
            JobProfile(
                job_id=p["job_id"],
                vector=p["vector"],
                skills=_skillset_from_dict(p["skills"]),
                cluster=p["cluster"],
            )
            for p in doc["job_profiles"]
        ),
        cluster_model=cluster_model,
        interactions=interactions,
        _course_index={c.course_id: c for c in courses},
        _job_index={j.job_id: j for j in jobs},
    )


def save_snapshot(s: IndexSnapshot, path: str | Path) -> Path:
    """Write the snapshot to DIR/snapshot.json (or the given file path)
    with a version tag and payload checksum."""
    target = Path(path)
    if target.is_dir() or target.suffix == "":
        target.mkdir(parents=True, exist_ok=True)
        target = target / SNAPSHOT_FILENAME
    payload = _canonical(snapshot_to_dict(s))
    envelope = {
        "version": SNAPSHOT_VERSION,
        "checksum": hashlib.sha256(payload.encode("utf-8")).hexdigest(),
        "payload": json.loads(payload),
    }
    target.write_text(_canonical(envelope) + "\n", encoding="utf-8")
    return target


def load_snapshot(path: str | Path) -> IndexSnapshot:
    """Read and verify a snapshot file; inverse of save_snapshot."""
    target = Path(path)
    if target.is_dir():
        target = target / SNAPSHOT_FILENAME
    if not target.is_file():
        raise SnapshotError(f"no snapshot at {target}")
    try:
        envelope = json.loads(target.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SnapshotChecksumError(f"snapshot {target} is corrupt: {exc.msg}") from exc
    version = envelope.get("version")
    if version != SNAPSHOT_VERSION:
        raise SnapshotVersionError(
            f"snapshot version {version!r} unsupported (expected {SNAPSHOT_VERSION})"
        )
    payload = _canonical(envelope["payload"])
    checksum = hashlib.sha256(payload.encode("utf-8")).hexdigest()
    if checksum != envelope.get("checksum"):
        raise SnapshotChecksumError(f"snapshot {target} failed checksum verification")
    return snapshot_from_dict(envelope["payload"])
