import json

import pytest

from crs import ingest


def write_jsonl(path, records):
    path.write_text("\n".join(json.dumps(r) for r in records) + "\n", encoding="utf-8")


COURSE = {
    "course_id": "COMP9900",
    "name": "Capstone",
    "description": "Team software project.",
    "learning_outcomes": "Deliver working software.",
    "level": "postgraduate",
}


class TestLoadCourses:
    def test_round_trip_single_record(self, tmp_path):
        path = tmp_path / "courses.jsonl"
        write_jsonl(path, [COURSE])
        records = ingest.load_courses(path)
        assert len(records) == 1
        assert records[0].course_id == "COMP9900"
        assert records[0].level == "postgraduate"
        assert ingest.serialize_courses(records) == path.read_text(encoding="utf-8")

    def test_empty_file(self, tmp_path):
        path = tmp_path / "courses.jsonl"
        path.write_text("", encoding="utf-8")
        assert ingest.load_courses(path) == []

    def test_duplicate_id(self, tmp_path):
        path = tmp_path / "courses.jsonl"
        write_jsonl(path, [COURSE, COURSE])
        with pytest.raises(ingest.DuplicateIdError) as excinfo:
            ingest.load_courses(path)
        assert "COMP9900" in str(excinfo.value)

    def test_malformed_line_reports_line_number(self, tmp_path):
        path = tmp_path / "courses.jsonl"
        path.write_text(json.dumps(COURSE) + "\nnot json\n", encoding="utf-8")
        with pytest.raises(ingest.MalformedRecordError) as excinfo:
            ingest.load_courses(path)
        assert excinfo.value.line_no == 2

    def test_missing_file(self, tmp_path):
        with pytest.raises(ingest.IngestError):
            ingest.load_courses(tmp_path / "nope.jsonl")

    def test_bom_tolerated(self, tmp_path):
        path = tmp_path / "courses.jsonl"
        path.write_bytes(b"\xef\xbb\xbf" + json.dumps(COURSE).encode() + b"\n")
        assert ingest.load_courses(path)[0].course_id == "COMP9900"

    def test_order_preserved(self, tmp_path):
        records = [dict(COURSE, course_id=f"C{i}") for i in range(5)]
        path = tmp_path / "courses.jsonl"
        write_jsonl(path, records)
        assert [c.course_id for c in ingest.load_courses(path)] == [f"C{i}" for i in range(5)]


class TestLoadJobs:
    def test_html_stored_verbatim(self, tmp_path):
        path = tmp_path / "jobs.jsonl"
        write_jsonl(path, [{"job_id": "J1", "title": "Dev", "source": "seek",
                            "description": "<p>SQL</p>"}])
        jobs = ingest.load_jobs(path)
        assert jobs[0].description == "<p>SQL</p>"

    def test_unknown_source_maps_to_other(self, tmp_path):
        path = tmp_path / "jobs.jsonl"
        write_jsonl(path, [{"job_id": "J1", "title": "Dev", "source": "glassdoor",
                            "description": "text"}])
        assert ingest.load_jobs(path)[0].source == "other"

    def test_missing_description_is_malformed(self, tmp_path):
        path = tmp_path / "jobs.jsonl"
        write_jsonl(path, [{"job_id": "J1", "title": "Dev", "source": "seek"}])
        with pytest.raises(ingest.MalformedRecordError):
            ingest.load_jobs(path)

    def test_serialize_round_trip(self, tmp_path):
        path = tmp_path / "jobs.jsonl"
        write_jsonl(path, [{"job_id": "J1", "title": "Dev", "source": "indeed",
                            "description": "Build APIs."}])
        jobs = ingest.load_jobs(path)
        assert ingest.serialize_jobs(jobs) == path.read_text(encoding="utf-8")


class TestTaxonomy:
    def test_alias_lookup_case_insensitive(self, tmp_path):
        path = tmp_path / "taxonomy.jsonl"
        write_jsonl(path, [{"skill_id": "sql", "display_name": "SQL",
                            "aliases": ["SQL", "Structured Query Language"]}])
        tax = ingest.load_taxonomy(path)
        assert tax.lookup("structured query language") == "sql"
        assert tax.lookup("SQL") == "sql"

    def test_empty_file_misses_everything(self, tmp_path):
        path = tmp_path / "taxonomy.jsonl"
        path.write_text("", encoding="utf-8")
        tax = ingest.load_taxonomy(path)
        assert tax.lookup("anything") is None

    def test_alias_collision(self, tmp_path):
        path = tmp_path / "taxonomy.jsonl"
        write_jsonl(path, [
            {"skill_id": "javascript", "display_name": "JavaScript", "aliases": ["js"]},
            {"skill_id": "java", "display_name": "Java", "aliases": ["js"]},
        ])
        with pytest.raises(ingest.AliasCollisionError) as excinfo:
            ingest.load_taxonomy(path)
        assert excinfo.value.skill_ids == ["java", "javascript"]

    def test_unknown_alias_is_a_miss_not_an_error(self, taxonomy):
        assert taxonomy.lookup("cobol") is None


class TestResume:
    def test_identity(self):
        doc = ingest.ingest_resume_text("Experienced in Python and SQL.")
        assert doc.raw_text == "Experienced in Python and SQL."
        assert doc.resume_id

    def test_whitespace_only_rejected(self):
        with pytest.raises(ingest.EmptyResumeError):
            ingest.ingest_resume_text("   ")

    def test_one_megabyte_accepted(self):
        doc = ingest.ingest_resume_text("x" * (1024 * 1024))
        assert len(doc.raw_text) == 1024 * 1024

    def test_over_cap_rejected(self):
        with pytest.raises(ingest.IngestError):
            ingest.ingest_resume_text("x" * (ingest.RESUME_SIZE_CAP + 1))
