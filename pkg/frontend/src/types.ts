// Shapes mirrored from the HTTP API's response models.

export interface SessionResponse {
  session_id: string;
}

export interface SkillsResponse {
  skills: string[];
}

export interface Gap {
  required: string[];
  owned: string[];
  missing: string[];
}

export interface TargetResponse {
  gap: Gap;
}

export interface Course {
  course_id: string;
  name: string;
  description: string;
  learning_outcomes: string;
  level: string;
}

export interface Job {
  job_id: string;
  title: string;
  source: string;
  description: string;
  cluster: number;
}

export interface JobsResponse {
  clusters: Record<string, Job[]>;
}

export interface Recommendation {
  course_id: string;
  name: string;
  final_score: number;
  content_score: number;
  collab_score: number;
  gap_coverage: string[];
}

export interface RecommendationsResponse {
  mode: string;
  recommendations: Recommendation[];
}

export type RecommendationMode = "hybrid" | "gap";
