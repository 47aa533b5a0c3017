"""FastAPI service exposing the recommendation engine."""

from __future__ import annotations

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse

from .gateway import Engine, GatewayError, NotFoundError
from .schemas import (
    CoursesRequest,
    CourseModel,
    CreateSessionRequest,
    CreateSessionResponse,
    GapModel,
    JobModel,
    JobsResponse,
    RecommendationModel,
    RecommendationsResponse,
    ResumeRequest,
    SkillsResponse,
    TargetRequest,
    TargetResponse,
)
from .snapshot import IndexSnapshot


def create_app(snapshot: IndexSnapshot) -> FastAPI:
    app = FastAPI(title="course-recommender", version="0.1.0")
    engine = Engine(snapshot)
    app.state.engine = engine

    @app.exception_handler(GatewayError)
    async def gateway_error(_: Request, exc: GatewayError) -> JSONResponse:
        status = 404 if isinstance(exc, NotFoundError) else 400
        return JSONResponse(
            status_code=status, content={"error": exc.code, "message": exc.message}
        )

    @app.post("/api/session", response_model=CreateSessionResponse)
    def create_session(body: CreateSessionRequest):
        state = engine.create_session(body.display_name)
        return CreateSessionResponse(session_id=state.session_id)

    @app.post("/api/session/{session_id}/resume", response_model=SkillsResponse)
    def submit_resume(session_id: str, body: ResumeRequest):
        skills = engine.submit_resume(session_id, body.text)
        return SkillsResponse(skills=sorted(skills.skills))

    @app.put("/api/session/{session_id}/courses", response_model=SkillsResponse)
    def set_courses(session_id: str, body: CoursesRequest):
        skills = engine.set_completed_courses(session_id, body.course_ids)
        return SkillsResponse(skills=sorted(skills.skills))

    @app.put("/api/session/{session_id}/target", response_model=TargetResponse)
    def set_target(session_id: str, body: TargetRequest):
        gap = engine.set_target_job(session_id, body.job_id)
        return TargetResponse(
            gap=GapModel(
                required=sorted(gap.required.skills),
                owned=sorted(gap.owned.skills),
                missing=sorted(gap.missing),
            )
        )

    @app.get("/api/courses", response_model=list[CourseModel])
    def list_courses():
        return [
            CourseModel(
                course_id=c.course_id,
                name=c.name,
                description=c.description,
                learning_outcomes=c.learning_outcomes,
                level=c.level,
            )
            for c in engine.snapshot.courses
        ]

    @app.get("/api/jobs", response_model=JobsResponse)
    def list_jobs(cluster: int | None = Query(default=None), q: str = Query(default="")):
        groups = engine.jobs_by_cluster(cluster=cluster, query=q)
        clusters = {
            label: [
                JobModel(
                    job_id=j.job_id,
                    title=j.title,
                    source=j.source,
                    description=j.description,
                    cluster=label,
                )
                for j in jobs
            ]
            for label, jobs in groups.items()
        }
        return JobsResponse(clusters=clusters)

    @app.get(
        "/api/session/{session_id}/recommendations",
        response_model=RecommendationsResponse,
    )
    def recommendations(
        session_id: str,
        mode: str = Query(default="hybrid", pattern="^(hybrid|gap)$"),
        limit: int = Query(default=10, ge=1, le=100),
    ):
        recs = engine.recommendations(session_id, mode=mode, limit=limit)
        models = []
        for rec in recs:
            course = engine.snapshot.course(rec.course_id)
            models.append(
                RecommendationModel(
                    course_id=rec.course_id,
                    name=course.name if course else rec.course_id,
                    final_score=rec.final_score,
                    content_score=rec.content_score,
                    collab_score=rec.collab_score,
                    gap_coverage=list(rec.gap_coverage),
                )
            )
        return RecommendationsResponse(mode=mode, recommendations=models)

    return app
