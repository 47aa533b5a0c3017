import type {
  Course,
  JobsResponse,
  RecommendationMode,
  RecommendationsResponse,
  SessionResponse,
  SkillsResponse,
  TargetResponse,
} from "./types";

/** Error raised for non-2xx API responses, carrying the service's error code. */
export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function request<T>(url: string, options?: RequestInit): Promise<T> {
  const res = await fetch(url, {
    headers: { "Content-Type": "application/json" },
    ...options,
  });
  if (!res.ok) {
    let code = "http_error";
    let message = `request failed with status ${res.status}`;
    try {
      const body = await res.json();
      if (typeof body.error === "string") code = body.error;
      if (typeof body.message === "string") message = body.message;
    } catch {
      // non-JSON error body; keep the defaults
    }
    throw new ApiError(res.status, code, message);
  }
  return res.json() as Promise<T>;
}

/** Thin client over the recommendation service's HTTP API. */
export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  createSession(displayName: string): Promise<SessionResponse> {
    return request(`${this.baseUrl}/api/session`, {
      method: "POST",
      body: JSON.stringify({ display_name: displayName }),
    });
  }

  submitResume(sessionId: string, text: string): Promise<SkillsResponse> {
    return request(`${this.baseUrl}/api/session/${sessionId}/resume`, {
      method: "POST",
      body: JSON.stringify({ text }),
    });
  }

  setCompletedCourses(sessionId: string, courseIds: string[]): Promise<SkillsResponse> {
    return request(`${this.baseUrl}/api/session/${sessionId}/courses`, {
      method: "PUT",
      body: JSON.stringify({ course_ids: courseIds }),
    });
  }

  setTargetJob(sessionId: string, jobId: string): Promise<TargetResponse> {
    return request(`${this.baseUrl}/api/session/${sessionId}/target`, {
      method: "PUT",
      body: JSON.stringify({ job_id: jobId }),
    });
  }

  listCourses(): Promise<Course[]> {
    return request(`${this.baseUrl}/api/courses`);
  }

  listJobs(query?: string, cluster?: number): Promise<JobsResponse> {
    const params = new URLSearchParams();
    if (query) params.set("q", query);
    if (cluster !== undefined) params.set("cluster", String(cluster));
    const suffix = params.size > 0 ? `?${params.toString()}` : "";
    return request(`${this.baseUrl}/api/jobs${suffix}`);
  }

  recommendations(
    sessionId: string,
    mode: RecommendationMode,
    limit = 10,
  ): Promise<RecommendationsResponse> {
    const params = new URLSearchParams({ mode, limit: String(limit) });
    return request(
      `${this.baseUrl}/api/session/${sessionId}/recommendations?${params.toString()}`,
    );
  }
}
