"""Command-line interface for the course recommendation engine."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import evalkit
from .extract import rake_extract, textrank_sentences, tfidf_vector
from .gateway import Engine
from .ingest import load_courses, load_jobs, load_taxonomy
from .recommend import InteractionMatrix, hybrid_recommend
from .snapshot import build_index, load_snapshot, save_snapshot
from .textpipe import preprocess
from .vectorspace import build_user_profile


def _load_interactions(path: str | None, max_mark: float = 100.0) -> InteractionMatrix:
    matrix = InteractionMatrix()
    if path is None:
        return matrix
    with open(path, encoding="utf-8-sig") as fh:
        records = [json.loads(line) for line in fh if line.strip()]
    return InteractionMatrix.from_records(records, max_mark=max_mark)


@click.group()
def main():
    """Course recommendation engine: skill gaps and hybrid course ranking."""


@main.command("ingest")
@click.option("--courses", "courses_path", required=True, type=click.Path(exists=True))
@click.option("--jobs", "jobs_path", required=True, type=click.Path(exists=True))
@click.option("--taxonomy", "taxonomy_path", required=True, type=click.Path(exists=True))
@click.option("--interactions", "interactions_path", type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path(), envvar="CRS_INDEX_DIR")
@click.option("--kmeans-k", type=int, default=8, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def ingest_cmd(courses_path, jobs_path, taxonomy_path, interactions_path, out_dir, kmeans_k, seed):
    """Build an index snapshot from the corpus files."""
    courses = load_courses(courses_path)
    jobs = load_jobs(jobs_path)
    taxonomy = load_taxonomy(taxonomy_path)
    interactions = _load_interactions(interactions_path)
    snapshot = build_index(
        courses,
        jobs,
        taxonomy,
        interactions,
        config={"kmeans_k": kmeans_k, "kmeans_seed": seed},
    )
    target = save_snapshot(snapshot, out_dir)
    click.echo(f"wrote {target} ({len(courses)} courses, {len(jobs)} jobs)")


@main.command("recommend")
@click.option("--index", "index_dir", required=True, type=click.Path(exists=True), envvar="CRS_INDEX_DIR")
@click.option("--resume", "resume_path", type=click.Path(exists=True))
@click.option("--completed", default="", help="Comma-separated completed course ids.")
@click.option("--job", "job_id", help="Target job id (required for gap mode).")
@click.option("--mode", type=click.Choice(["hybrid", "gap"]), default="hybrid", show_default=True)
@click.option("--limit", type=int, default=10, show_default=True)
def recommend_cmd(index_dir, resume_path, completed, job_id, mode, limit):
    """Recommend courses for a resume and/or completed-course history."""
    snapshot = load_snapshot(index_dir)
    engine = Engine(snapshot)
    session = engine.create_session("cli")
    if resume_path:
        engine.submit_resume(session.session_id, Path(resume_path).read_text(encoding="utf-8"))
    course_ids = [c for c in completed.split(",") if c]
    if course_ids:
        engine.set_completed_courses(session.session_id, course_ids)
    if job_id:
        engine.set_target_job(session.session_id, job_id)
    elif mode == "gap":
        raise click.UsageError("--job is required for gap mode")
    recs = engine.recommendations(session.session_id, mode=mode, limit=limit)
    for rec in recs:
        line = f"{rec.course_id}  score={rec.final_score:.4f}"
        if rec.gap_coverage:
            line += f"  covers={','.join(rec.gap_coverage)}"
        click.echo(line)
    if not recs:
        click.echo("no recommendations", err=True)


@main.command("eval")
@click.option("--index", "index_dir", required=True, type=click.Path(exists=True), envvar="CRS_INDEX_DIR")
@click.option("--interactions", "interactions_path", required=True, type=click.Path(exists=True))
@click.option("--top-n", type=int, default=10, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Emit the full JSON report.")
def eval_cmd(index_dir, interactions_path, top_n, as_json):
    """Evaluate the hybrid recommender with a leave-last-out split."""
    snapshot = load_snapshot(index_dir)
    matrix = _load_interactions(interactions_path)
    split = evalkit.leave_last_out_split(matrix)
    courses_by_id = {c.course_id: c for c in snapshot.courses}

    def recommend_fn(user_id: str, training: InteractionMatrix) -> list[str]:
        completed_ids = sorted(training.values.get(user_id, {}))
        completed = [courses_by_id[c] for c in completed_ids if c in courses_by_id]
        if not completed:
            return []
        user = build_user_profile(
            user_id, completed, None, list(snapshot.item_profiles), snapshot.stats, snapshot.taxonomy
        )
        recs = hybrid_recommend(user, list(snapshot.item_profiles), training, limit=top_n)
        return [r.course_id for r in recs]

    report = evalkit.evaluate_recommender(split, recommend_fn, top_n=top_n)
    if as_json:
        click.echo(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        click.echo(report.summary_table())


@main.command("extract")
@click.option("--index", "index_dir", required=True, type=click.Path(exists=True), envvar="CRS_INDEX_DIR")
@click.option("--text", "text_path", required=True, type=click.Path(exists=True))
@click.option("--method", type=click.Choice(["tfidf", "rake", "textrank"]), default="tfidf", show_default=True)
@click.option("--top", type=int, default=10, show_default=True)
def extract_cmd(index_dir, text_path, method, top):
    """Extract keywords or key sentences from a text file."""
    snapshot = load_snapshot(index_dir)
    raw = Path(text_path).read_text(encoding="utf-8")
    doc = preprocess("cli-text", raw)
    if not doc.tokens:
        click.echo("no tokens after preprocessing", err=True)
        sys.exit(1)
    if method == "tfidf":
        vector = tfidf_vector(doc, snapshot.stats)
        for term, weight in sorted(vector.items(), key=lambda kv: (-kv[1], kv[0]))[:top]:
            click.echo(f"{term}\t{weight:.6f}")
    elif method == "rake":
        for phrase in rake_extract(doc)[:top]:
            click.echo(f"{' '.join(phrase.tokens)}\t{phrase.score:.4f}")
    else:
        sentences = textrank_sentences(doc)[:top]
        for index, score in sentences:
            start, end = doc.sentences[index]
            click.echo(f"[{index}] {score:.6f}\t{' '.join(doc.tokens[start:end])}")


@main.command("serve")
@click.option("--index", "index_dir", required=True, type=click.Path(exists=True), envvar="CRS_INDEX_DIR")
@click.option("--port", type=int, default=8000, show_default=True, envvar="CRS_PORT")
@click.option("--host", default="127.0.0.1", show_default=True)
def serve_cmd(index_dir, port, host):
    """Serve the HTTP API for the given index."""
    import uvicorn

    from .service import create_app

    app = create_app(load_snapshot(index_dir))
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
