"""Pydantic request/response models for the HTTP API."""

from __future__ import annotations

from pydantic import BaseModel, Field


class CreateSessionRequest(BaseModel):
    display_name: str = Field(min_length=1)


class CreateSessionResponse(BaseModel):
    session_id: str


class ResumeRequest(BaseModel):
    text: str


class SkillsResponse(BaseModel):
    skills: list[str]


class CoursesRequest(BaseModel):
    course_ids: list[str]


class TargetRequest(BaseModel):
    job_id: str


class GapModel(BaseModel):
    required: list[str]
    owned: list[str]
    missing: list[str]


class TargetResponse(BaseModel):
    gap: GapModel


class CourseModel(BaseModel):
    course_id: str
    name: str
    description: str
    learning_outcomes: str
    level: str


class JobModel(BaseModel):
    job_id: str
    title: str
    source: str
    description: str
    cluster: int


class JobsResponse(BaseModel):
    clusters: dict[int, list[JobModel]]


class RecommendationModel(BaseModel):
    course_id: str
    name: str
    final_score: float
    content_score: float
    collab_score: float
    gap_coverage: list[str]


class RecommendationsResponse(BaseModel):
    mode: str
    recommendations: list[RecommendationModel]


class ErrorResponse(BaseModel):
    error: str
    message: str
