// Pure view-state helpers, kept free of DOM and network access so they
// can be unit-tested directly.

import type { Gap, Job, JobsResponse } from "./types";

/** Immutable toggle of a course id in the current selection. */
export function toggleCourse(selected: readonly string[], courseId: string): string[] {
  return selected.includes(courseId)
    ? selected.filter((id) => id !== courseId)
    : [...selected, courseId];
}

export interface GapProgress {
  covered: number;
  total: number;
  percent: number;
}

/** How much of the target job's skill set the user already owns. */
export function gapProgress(gap: Gap): GapProgress {
  const total = gap.required.length;
  const covered = total - gap.missing.length;
  return {
    covered,
    total,
    percent: total === 0 ? 100 : Math.round((covered / total) * 100),
  };
}

/** Human label for a cluster id; -1 marks jobs that could not be clustered. */
export function clusterLabel(cluster: number): string {
  return cluster === -1 ? "Uncategorized" : `Group ${cluster + 1}`;
}

export function formatScore(score: number): string {
  return score.toFixed(3);
}

export interface ClusterGroup {
  cluster: number;
  label: string;
  jobs: Job[];
}

/** Flatten the clusters payload into render order: labeled groups first. */
export function orderClusters(response: JobsResponse): ClusterGroup[] {
  return Object.entries(response.clusters)
    .map(([key, jobs]) => {
      const cluster = Number(key);
      return { cluster, label: clusterLabel(cluster), jobs };
    })
    .sort((a, b) => {
      if ((a.cluster === -1) !== (b.cluster === -1)) return a.cluster === -1 ? 1 : -1;
      return a.cluster - b.cluster;
    });
}
