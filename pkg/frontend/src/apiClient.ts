/**
 * Typed client over the documented endpoints.  The transport is injected
 * so tests can replay recorded fixtures; every response body is parsed
 * with the zod schema for its endpoint before it reaches the UI.
 */

import { z } from "zod";
import {
  AdaptivityResponse,
  AggregateResponse,
  BannersResponse,
  LoginResponse,
  QualificationBody,
  QueueResponse,
  ReviewResult,
  ReviewsResponse,
  StatsResponse,
  SubmissionResponse,
  TestAnswerResponse,
  TrainingAnswerResponse,
  TrainingView,
  Violation,
  adaptivityResponseSchema,
  aggregateResponseSchema,
  bannersResponseSchema,
  bonusResultSchema,
  commentViewSchema,
  corpusResultSchema,
  loginResponseSchema,
  queueResponseSchema,
  reviewResultSchema,
  reviewsResponseSchema,
  statsResponseSchema,
  submissionResponseSchema,
  testAnswerResponseSchema,
  trainingAnswerResponseSchema,
  trainingViewSchema,
  violationSchema,
  workerCreatedSchema,
} from "./types.js";

export interface TransportResponse {
  status: number;
  body: unknown;
}

export type Transport = (
  method: "GET" | "POST",
  path: string,
  body: unknown | null,
  token: string | null,
) => Promise<TransportResponse>;

const errorDetailSchema = z.object({
  detail: z.union([
    z.string(),
    z.object({ violations: z.array(violationSchema) }),
  ]),
});

export class ApiError extends Error {
  readonly status: number;
  readonly violations: Violation[];

  constructor(status: number, detail: string, violations: Violation[] = []) {
    super(detail);
    this.status = status;
    this.violations = violations;
  }
}

export function fetchTransport(baseUrl: string): Transport {
  return async (method, path, body, token) => {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (token) headers["Authorization"] = `Bearer ${token}`;
    const response = await fetch(baseUrl + path, {
      method,
      headers,
      body: body === null ? undefined : JSON.stringify(body),
    });
    return { status: response.status, body: await response.json() };
  };
}

export class WorkbenchClient {
  private readonly transport: Transport;
  token: string | null = null;

  constructor(transport: Transport) {
    this.transport = transport;
  }

  private async call<T>(
    method: "GET" | "POST",
    path: string,
    body: unknown | null,
    schema: z.ZodType<T>,
  ): Promise<T> {
    const response = await this.transport(method, path, body, this.token);
    if (response.status >= 400) {
      const parsed = errorDetailSchema.safeParse(response.body);
      if (parsed.success && typeof parsed.data.detail !== "string") {
        throw new ApiError(response.status, "submission failed validation",
          parsed.data.detail.violations);
      }
      const detail = parsed.success ? String(parsed.data.detail) : "request failed";
      throw new ApiError(response.status, detail);
    }
    return schema.parse(response.body);
  }

  async login(workerId: string, key: string): Promise<LoginResponse> {
    const session = await this.call("POST", "/login",
      { worker_id: workerId, key }, loginResponseSchema);
    this.token = session.token;
    return session;
  }

  queueNext(): Promise<QueueResponse> {
    return this.call("GET", "/queue/next", null, queueResponseSchema);
  }

  submitQualification(templateId: number, body: QualificationBody):
      Promise<SubmissionResponse> {
    return this.call("POST", `/drafts/${templateId}/qualification`, body,
      submissionResponseSchema);
  }

  answerTestQuestion(questionId: string, answer: string):
      Promise<TestAnswerResponse> {
    return this.call("POST", `/drafts/${questionId}/answer-test`, { answer },
      testAnswerResponseSchema);
  }

  reviews(): Promise<ReviewsResponse> {
    return this.call("GET", "/reviews", null, reviewsResponseSchema);
  }

  review(draftId: number, verdict: "valid_finished" | "valid_pending" | "rejected"):
      Promise<ReviewResult> {
    return this.call("POST", `/reviews/${draftId}`, { verdict },
      reviewResultSchema);
  }

  banners(): Promise<BannersResponse> {
    return this.call("GET", "/banners", null, bannersResponseSchema);
  }

  postComment(text: string) {
    return this.call("POST", "/comments", { text }, commentViewSchema);
  }

  stats(): Promise<StatsResponse> {
    return this.call("GET", "/workers/me/stats", null, statsResponseSchema);
  }

  trainingStart(): Promise<TrainingView> {
    return this.call("POST", "/training/start", {}, trainingViewSchema);
  }

  trainingAnswer(itemIndex: number, answer: string | string[]):
      Promise<TrainingAnswerResponse> {
    return this.call("POST", "/training/answer",
      { item_index: itemIndex, answer }, trainingAnswerResponseSchema);
  }

  adaptivity(): Promise<AdaptivityResponse> {
    return this.call("GET", "/admin/adaptivity", null, adaptivityResponseSchema);
  }

  aggregate(): Promise<AggregateResponse> {
    return this.call("POST", "/admin/aggregate", {}, aggregateResponseSchema);
  }

  grantBonus(workerId: string, amount: number) {
    return this.call("POST", "/admin/bonus",
      { worker_id: workerId, amount }, bonusResultSchema);
  }

  loadCorpus(text: string) {
    return this.call("POST", "/admin/corpus", { text }, corpusResultSchema);
  }

  provisionWorker(workerId: string, role: string, key: string, trained: boolean) {
    return this.call("POST", "/admin/workers",
      { worker_id: workerId, role, key, trained }, workerCreatedSchema);
  }
}
