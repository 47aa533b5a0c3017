import { ApiClient, ApiError } from "./api";
import {
  formatScore,
  gapProgress,
  orderClusters,
  toggleCourse,
} from "./state";
import type { Course, Gap, RecommendationMode } from "./types";

interface AppState {
  sessionId: string | null;
  displayName: string;
  ownedSkills: string[];
  selectedCourses: string[];
  targetJobId: string | null;
  gap: Gap | null;
  mode: RecommendationMode;
}

const api = new ApiClient();

const state: AppState = {
  sessionId: null,
  displayName: "",
  ownedSkills: [],
  selectedCourses: [],
  targetJobId: null,
  gap: null,
  mode: "hybrid",
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function setStatus(message: string, isError = false): void {
  const status = el<HTMLParagraphElement>("status");
  status.textContent = message;
  status.className = isError ? "status error" : "status";
}

function reportError(err: unknown): void {
  if (err instanceof ApiError) {
    setStatus(`${err.code}: ${err.message}`, true);
  } else {
    setStatus(String(err), true);
  }
}

function renderChips(container: HTMLElement, skills: string[], emptyText: string): void {
  container.replaceChildren();
  if (skills.length === 0) {
    const span = document.createElement("span");
    span.className = "muted";
    span.textContent = emptyText;
    container.append(span);
    return;
  }
  for (const skill of skills) {
    const chip = document.createElement("span");
    chip.className = "chip";
    chip.textContent = skill;
    container.append(chip);
  }
}

function renderGap(): void {
  const panel = el<HTMLDivElement>("gap-panel");
  if (!state.gap) {
    panel.hidden = true;
    return;
  }
  panel.hidden = false;
  const progress = gapProgress(state.gap);
  el<HTMLSpanElement>("gap-summary").textContent =
    `${progress.covered} of ${progress.total} required skills covered (${progress.percent}%)`;
  renderChips(el("gap-missing"), state.gap.missing, "nothing missing");
}

async function startSession(): Promise<void> {
  const input = el<HTMLInputElement>("name-input");
  const name = input.value.trim();
  if (!name) {
    setStatus("enter a display name first", true);
    return;
  }
  const response = await api.createSession(name);
  state.sessionId = response.session_id;
  state.displayName = name;
  el<HTMLDivElement>("session-section").hidden = true;
  el<HTMLDivElement>("main-sections").hidden = false;
  setStatus(`session started for ${name}`);
  await Promise.all([loadCourses(), loadJobs()]);
}

async function uploadResume(): Promise<void> {
  if (!state.sessionId) return;
  const text = el<HTMLTextAreaElement>("resume-input").value;
  const response = await api.submitResume(state.sessionId, text);
  state.ownedSkills = response.skills;
  renderChips(el("resume-skills"), response.skills, "no skills detected");
  setStatus("resume analyzed");
  await refreshTarget();
}

async function loadCourses(): Promise<void> {
  const courses = await api.listCourses();
  const list = el<HTMLUListElement>("course-list");
  list.replaceChildren();
  for (const course of courses) {
    list.append(renderCourseItem(course));
  }
}

function renderCourseItem(course: Course): HTMLLIElement {
  const item = document.createElement("li");
  const label = document.createElement("label");
  const checkbox = document.createElement("input");
  checkbox.type = "checkbox";
  checkbox.value = course.course_id;
  checkbox.addEventListener("change", () => {
    state.selectedCourses = toggleCourse(state.selectedCourses, course.course_id);
    void saveCourses();
  });
  const title = document.createElement("strong");
  title.textContent = ` ${course.name} `;
  const meta = document.createElement("span");
  meta.className = "muted";
  meta.textContent = `(${course.course_id}, ${course.level})`;
  label.append(checkbox, title, meta);
  item.append(label);
  return item;
}

async function saveCourses(): Promise<void> {
  if (!state.sessionId) return;
  try {
    const response = await api.setCompletedCourses(state.sessionId, state.selectedCourses);
    state.ownedSkills = response.skills;
    renderChips(el("course-skills"), response.skills, "no skills yet");
    await refreshTarget();
  } catch (err) {
    reportError(err);
  }
}

async function loadJobs(): Promise<void> {
  const query = el<HTMLInputElement>("job-search").value.trim();
  const response = await api.listJobs(query || undefined);
  const container = el<HTMLDivElement>("job-groups");
  container.replaceChildren();
  for (const group of orderClusters(response)) {
    const heading = document.createElement("h3");
    heading.textContent = group.label;
    const list = document.createElement("ul");
    for (const job of group.jobs) {
      const item = document.createElement("li");
      const button = document.createElement("button");
      button.textContent = "set target";
      button.addEventListener("click", () => void chooseTarget(job.job_id));
      const title = document.createElement("strong");
      title.textContent = job.title;
      const source = document.createElement("span");
      source.className = "muted";
      source.textContent = ` via ${job.source} `;
      item.append(title, source, button);
      if (job.job_id === state.targetJobId) item.classList.add("selected");
      list.append(item);
    }
    container.append(heading, list);
  }
}

async function chooseTarget(jobId: string): Promise<void> {
  if (!state.sessionId) return;
  try {
    const response = await api.setTargetJob(state.sessionId, jobId);
    state.targetJobId = jobId;
    state.gap = response.gap;
    renderGap();
    setStatus(`target job set to ${jobId}`);
    await loadJobs();
  } catch (err) {
    reportError(err);
  }
}

async function refreshTarget(): Promise<void> {
  // Re-selecting the same target refreshes the gap after skills change.
  if (state.targetJobId) await chooseTarget(state.targetJobId);
}

async function loadRecommendations(): Promise<void> {
  if (!state.sessionId) return;
  const response = await api.recommendations(state.sessionId, state.mode);
  const list = el<HTMLOListElement>("recommendation-list");
  list.replaceChildren();
  if (response.recommendations.length === 0) {
    const item = document.createElement("li");
    item.className = "muted";
    item.textContent =
      state.mode === "gap"
        ? "no courses cover your remaining skill gap"
        : "nothing to recommend yet";
    list.append(item);
    return;
  }
  for (const rec of response.recommendations) {
    const item = document.createElement("li");
    const title = document.createElement("strong");
    title.textContent = rec.name;
    const score = document.createElement("span");
    score.className = "muted";
    score.textContent = ` score ${formatScore(rec.final_score)}`;
    item.append(title, score);
    if (rec.gap_coverage.length > 0) {
      const coverage = document.createElement("div");
      renderChips(coverage, rec.gap_coverage, "");
      item.append(coverage);
    }
    list.append(item);
  }
}

function wireEvents(): void {
  el<HTMLButtonElement>("start-button").addEventListener("click", () =>
    startSession().catch(reportError),
  );
  el<HTMLButtonElement>("resume-button").addEventListener("click", () =>
    uploadResume().catch(reportError),
  );
  el<HTMLButtonElement>("job-search-button").addEventListener("click", () =>
    loadJobs().catch(reportError),
  );
  el<HTMLButtonElement>("recommend-button").addEventListener("click", () =>
    loadRecommendations().catch(reportError),
  );
  el<HTMLSelectElement>("mode-select").addEventListener("change", (event) => {
    state.mode = (event.target as HTMLSelectElement).value as RecommendationMode;
  });
}

document.addEventListener("DOMContentLoaded", wireEvents);
