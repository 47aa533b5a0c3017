"""Corpus loading: courses, job postings, resumes, and the skill taxonomy.

All corpus files are line-delimited JSON (one record per line, UTF-8,
BOM tolerated).
"""

from __future__ import annotations

import json
import uuid
from dataclasses import dataclass, field
from pathlib import Path

COURSE_LEVELS = ("undergraduate", "postgraduate")
JOB_SOURCES = ("linkedin", "seek", "indeed", "other")

RESUME_SIZE_CAP = 5 * 1024 * 1024  # bytes of UTF-8 text


class IngestError(Exception):
    """Raised when a corpus file or record cannot be loaded."""


class MalformedRecordError(IngestError):
    def __init__(self, path: str, line_no: int, reason: str):
        super().__init__(f"{path}:{line_no}: {reason}")
        self.path = path
        self.line_no = line_no
        self.reason = reason


class DuplicateIdError(IngestError):
    def __init__(self, kind: str, record_id: str):
        super().__init__(f"duplicate {kind} id {record_id!r}")
        self.record_id = record_id


class AliasCollisionError(IngestError):
    def __init__(self, alias: str, skill_ids: list[str]):
        super().__init__(f"alias {alias!r} claimed by skills {sorted(skill_ids)}")
        self.alias = alias
        self.skill_ids = sorted(skill_ids)


class EmptyResumeError(IngestError):
    pass


@dataclass(frozen=True)
class CourseRecord:
    course_id: str
    name: str
    description: str
    learning_outcomes: str
    level: str  # "undergraduate" | "postgraduate"

    @property
    def text(self) -> str:
        """Profile text: description concatenated with learning outcomes."""
        return f"{self.description} {self.learning_outcomes}".strip()


@dataclass(frozen=True)
class JobRecord:
    job_id: str
    title: str
    source: str  # "linkedin" | "seek" | "indeed" | "other"
    description: str  # may contain HTML; cleaned downstream


@dataclass(frozen=True)
class ResumeDoc:
    resume_id: str
    raw_text: str


@dataclass(frozen=True)
class SkillEntry:
    skill_id: str
    display_name: str
    aliases: tuple[str, ...] = ()


@dataclass(frozen=True)
class SkillTaxonomy:
    """Canonical skill catalog with a case-insensitive alias index."""

    entries: tuple[SkillEntry, ...]
    _alias_index: dict[str, str] = field(default_factory=dict, repr=False)

    @staticmethod
    def build(entries: list[SkillEntry]) -> "SkillTaxonomy":
        index: dict[str, str] = {}
        seen_ids: set[str] = set()
        for entry in entries:
            if entry.skill_id in seen_ids:
                raise DuplicateIdError("skill", entry.skill_id)
            seen_ids.add(entry.skill_id)
            for surface in (entry.display_name, *entry.aliases):
                key = surface.strip().lower()
                if not key:
                    continue
                owner = index.get(key)
                if owner is not None and owner != entry.skill_id:
                    raise AliasCollisionError(surface, [owner, entry.skill_id])
                index[key] = entry.skill_id
        return SkillTaxonomy(entries=tuple(entries), _alias_index=index)

    def lookup(self, alias: str) -> str | None:
        """Resolve an alias (case-insensitive) to a skill_id, or None on miss."""
        return self._alias_index.get(alias.strip().lower())

    def surfaces(self) -> dict[str, str]:
        """All known surface forms (lowercased) mapped to skill_ids."""
        return dict(self._alias_index)

    def skill_ids(self) -> set[str]:
        return {e.skill_id for e in self.entries}


def _read_jsonl(path: str | Path) -> list[tuple[int, dict]]:
    p = Path(path)
    if not p.is_file():
        raise IngestError(f"no such file: {p}")
    records = []
    with open(p, encoding="utf-8-sig") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedRecordError(str(p), line_no, f"invalid JSON: {exc.msg}") from exc
            if not isinstance(obj, dict):
                raise MalformedRecordError(str(p), line_no, "record is not a JSON object")
            records.append((line_no, obj))
    return records


def _require_str(obj: dict, key: str, path: str, line_no: int) -> str:
    value = obj.get(key)
    if not isinstance(value, str):
        raise MalformedRecordError(path, line_no, f"missing or non-string field {key!r}")
    return value


def load_courses(path: str | Path) -> list[CourseRecord]:
    """Load the course catalog from a JSONL file, preserving file order."""
    courses: list[CourseRecord] = []
    seen: set[str] = set()
    for line_no, obj in _read_jsonl(path):
        course_id = _require_str(obj, "course_id", str(path), line_no)
        if not course_id:
            raise MalformedRecordError(str(path), line_no, "empty course_id")
        if course_id in seen:
            raise DuplicateIdError("course", course_id)
        seen.add(course_id)
        record = CourseRecord(
            course_id=course_id,
            name=_require_str(obj, "name", str(path), line_no),
            description=_require_str(obj, "description", str(path), line_no),
            learning_outcomes=_require_str(obj, "learning_outcomes", str(path), line_no),
            level=obj.get("level", "undergraduate"),
        )
        if record.level not in COURSE_LEVELS:
            raise MalformedRecordError(str(path), line_no, f"unknown level {record.level!r}")
        if not record.text:
            raise MalformedRecordError(str(path), line_no, "description and learning_outcomes both empty")
        courses.append(record)
    return courses


def load_jobs(path: str | Path) -> list[JobRecord]:
    """Load job postings from a JSONL file. Unknown sources map to "other"."""
    jobs: list[JobRecord] = []
    seen: set[str] = set()
    for line_no, obj in _read_jsonl(path):
        job_id = _require_str(obj, "job_id", str(path), line_no)
        if not job_id:
            raise MalformedRecordError(str(path), line_no, "empty job_id")
        if job_id in seen:
            raise DuplicateIdError("job", job_id)
        seen.add(job_id)
        description = _require_str(obj, "description", str(path), line_no)
        if not description:
            raise MalformedRecordError(str(path), line_no, "empty description")
        source = obj.get("source", "other")
        if source not in JOB_SOURCES:
            source = "other"
        jobs.append(
            JobRecord(
                job_id=job_id,
                title=_require_str(obj, "title", str(path), line_no),
                source=source,
                description=description,
            )
        )
    return jobs


def load_taxonomy(path: str | Path) -> SkillTaxonomy:
    """Load the skill taxonomy from a JSONL file and build the alias index."""
    entries: list[SkillEntry] = []
    for line_no, obj in _read_jsonl(path):
        skill_id = _require_str(obj, "skill_id", str(path), line_no)
        if not skill_id:
            raise MalformedRecordError(str(path), line_no, "empty skill_id")
        aliases = obj.get("aliases", [])
        if not isinstance(aliases, list) or not all(isinstance(a, str) for a in aliases):
            raise MalformedRecordError(str(path), line_no, "aliases must be a list of strings")
        entries.append(
            SkillEntry(
                skill_id=skill_id,
                display_name=_require_str(obj, "display_name", str(path), line_no),
                aliases=tuple(aliases),
            )
        )
    return SkillTaxonomy.build(entries)


def ingest_resume_text(raw: str) -> ResumeDoc:
    """Wrap pre-extracted resume text in a ResumeDoc with a fresh id."""
    if not raw.strip():
        raise EmptyResumeError("resume text is empty")
    if len(raw.encode("utf-8")) > RESUME_SIZE_CAP:
        raise IngestError(f"resume exceeds {RESUME_SIZE_CAP} byte cap")
    return ResumeDoc(resume_id=uuid.uuid4().hex, raw_text=raw)


def serialize_courses(courses: list[CourseRecord]) -> str:
    """Inverse of load_courses for well-formed input (round-trip check)."""
    lines = [
        json.dumps(
            {
                "course_id": c.course_id,
                "name": c.name,
                "description": c.description,
                "learning_outcomes": c.learning_outcomes,
                "level": c.level,
            },
            ensure_ascii=False,
        )
        for c in courses
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def serialize_jobs(jobs: list[JobRecord]) -> str:
    lines = [
        json.dumps(
            {"job_id": j.job_id, "title": j.title, "source": j.source, "description": j.description},
            ensure_ascii=False,
        )
        for j in jobs
    ]
    return "\n".join(lines) + ("\n" if lines else "")
