/**
 * Supervisor dashboard view model: provisional aggregations with their
 * three-plus records, per-worker correctness (grammar flags) and
 * engagement (schemas per worker, mean response time), and the final
 * verdict actions.
 */

import { ApiError, WorkbenchClient } from "./apiClient.js";
import { LoginResponse, RecordView, ReviewsResponse } from "./types.js";

export const TUTORIAL_LINK = "/tutorial/inner-workings";

export interface WorkerMetrics {
  workerId: string;
  records: number;
  meanResponseSeconds: number;
  grammarFlagCount: number;
}

export interface ReviewCard {
  draftId: number;
  crowdVerdict: string;
  records: RecordView[];
  workerMetrics: WorkerMetrics[];
}

export interface SupervisorDashboard {
  session: LoginResponse;
  cards: ReviewCard[];
  exportedCount: number;
  tutorialLink: string;
  redirect: "workbench" | null;
}

export function workerMetrics(records: RecordView[]): WorkerMetrics[] {
  const byWorker = new Map<string, RecordView[]>();
  for (const record of records) {
    const bucket = byWorker.get(record.worker_id) ?? [];
    bucket.push(record);
    byWorker.set(record.worker_id, bucket);
  }
  return [...byWorker.entries()].map(([workerId, workerRecords]) => {
    const seconds = workerRecords
      .map((r) => r.submitted_at - r.started_at)
      .reduce((a, b) => a + b, 0) / workerRecords.length;
    const flags = workerRecords
      .map((r) => r.analysis?.grammar_flags.length ?? 0)
      .reduce((a, b) => a + b, 0);
    return {
      workerId,
      records: workerRecords.length,
      meanResponseSeconds: seconds,
      grammarFlagCount: flags,
    };
  });
}

function toCards(reviews: ReviewsResponse): ReviewCard[] {
  return reviews.pending.map((item) => ({
    draftId: item.draft_id,
    crowdVerdict: item.crowd_verdict,
    records: item.records,
    workerMetrics: workerMetrics(item.records),
  }));
}

/** Qualificators are redirected to the workbench instead of the queue. */
export async function loadDashboard(client: WorkbenchClient,
                                    session: LoginResponse):
    Promise<SupervisorDashboard> {
  const dashboard: SupervisorDashboard = {
    session,
    cards: [],
    exportedCount: 0,
    tutorialLink: TUTORIAL_LINK,
    redirect: null,
  };
  if (session.role !== "supervisor" && session.role !== "admin") {
    dashboard.redirect = "workbench";
    return dashboard;
  }
  try {
    dashboard.cards = toCards(await client.reviews());
  } catch (error) {
    if (error instanceof ApiError && error.status === 403) {
      dashboard.redirect = "workbench";
      return dashboard;
    }
    throw error;
  }
  return dashboard;
}

export async function applyVerdict(client: WorkbenchClient,
                                   dashboard: SupervisorDashboard,
                                   draftId: number,
                                   verdict: "valid_finished" | "valid_pending" | "rejected"):
    Promise<SupervisorDashboard> {
  const result = await client.review(draftId, verdict);
  dashboard.cards = dashboard.cards.filter((card) => card.draftId !== draftId);
  if (result.exported) {
    dashboard.exportedCount += 1;
  }
  return dashboard;
}
