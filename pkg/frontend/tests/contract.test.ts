/**
 * Contract tests: every client call is replayed against the recorded API
 * fixtures; the test fails if the client builds a different method, path,
 * or body than the recorded exchange, or if a recorded response no longer
 * satisfies the zod schema the UI relies on.
 */

import { describe, expect, it } from "vitest";

import { ApiError, WorkbenchClient } from "../src/apiClient.js";
import { QualificationBody } from "../src/types.js";
import { Fixture, fixtureByName, loadFixtures, scriptedTransport, wireEqual } from "./helpers.js";

type Invocation = (client: WorkbenchClient, fixture: Fixture) => Promise<unknown>;

function qualificationBody(fixture: Fixture): QualificationBody {
  return fixture.request_body as QualificationBody;
}

// How the UI invokes each recorded exchange.
const INVOCATIONS: Record<string, Invocation> = {
  login_admin: (c) => c.login("admin", "admin-key"),
  admin_corpus: (c, f) => c.loadCorpus((f.request_body as { text: string }).text),
  admin_workers: (c) => c.provisionWorker("extra", "qualificator", "extra-key", true),
  login_with_test_question: (c) => c.login("quali", "quali-key"),
  queue_blocked_by_question: (c) => c.queueNext(),
  answer_test: (c) => c.answerTestQuestion("q1", "A"),
  queue_next_full: (c) => c.queueNext(),
  queue_refused_open_draft: (c) => c.queueNext(),
  qualification_invalid: (c, f) => c.submitQualification(2, qualificationBody(f)),
  qualification_accept: (c, f) => c.submitQualification(2, qualificationBody(f)),
  login_overseer: (c) => c.login("overseer", "overseer-key"),
  admin_aggregate: (c) => c.aggregate(),
  reviews_pending: (c) => c.reviews(),
  reviews_forbidden_for_qualificator: (c) => c.reviews(),
  review_verdict: (c) => c.review(2, "valid_finished"),
  admin_bonus: (c) => c.grantBonus("quali", 25),
  post_comment: (c) => c.postComment("nice drafts this week"),
  banners: (c) => c.banners(),
  worker_stats: (c) => c.stats(),
  admin_adaptivity: (c) => c.adaptivity(),
  login_untrained: (c) => c.login("rookie", "rookie-key"),
  queue_untrained: (c) => c.queueNext(),
  training_start: (c) => c.trainingStart(),
  training_answer: (c, f) => {
    const body = f.request_body as { item_index: number; answer: string | string[] };
    return c.trainingAnswer(body.item_index, body.answer);
  },
  login_unknown_worker: (c) => c.login("ghost", "nope"),
  login_bad_key: (c) => c.login("quali", "wrong"),
  queue_next_half: (c) => c.queueNext(),
  qualification_reject_unfixable: (c, f) => c.submitQualification(1, qualificationBody(f)),
  queue_empty: (c) => c.queueNext(),
};

describe("recorded API contract", () => {
  it("covers every recorded exchange", () => {
    const names = loadFixtures().map((f) => f.name);
    expect(new Set(names)).toEqual(new Set(Object.keys(INVOCATIONS)));
  });

  for (const fixture of loadFixtures()) {
    it(`${fixture.name}: ${fixture.method} ${fixture.path} -> ${fixture.status}`, async () => {
      const { transport, calls } = scriptedTransport([fixture]);
      const client = new WorkbenchClient(transport);
      client.token = "test-token";
      const invoke = INVOCATIONS[fixture.name];
      expect(invoke, `no invocation mapped for ${fixture.name}`).toBeDefined();

      if (fixture.status >= 400) {
        await expect(invoke!(client, fixture)).rejects.toSatisfy((error: unknown) => {
          expect(error).toBeInstanceOf(ApiError);
          expect((error as ApiError).status).toBe(fixture.status);
          return true;
        });
      } else {
        // zod validation inside the client is the schema check
        await invoke!(client, fixture);
      }

      expect(calls).toHaveLength(1);
      const call = calls[0]!;
      expect(call.method).toBe(fixture.method);
      expect(call.path).toBe(fixture.path);
      if (fixture.method === "POST") {
        expect(wireEqual(call.body, fixture.request_body),
          `body mismatch for ${fixture.name}:\n` +
          `sent     ${JSON.stringify(call.body)}\n` +
          `recorded ${JSON.stringify(fixture.request_body)}`).toBe(true);
      }
    });
  }

  it("validation failure responses carry the full violation report", async () => {
    const fixture = fixtureByName("qualification_invalid");
    const { transport } = scriptedTransport([fixture]);
    const client = new WorkbenchClient(transport);
    client.token = "t";
    try {
      await client.submitQualification(2, qualificationBody(fixture));
      expect.unreachable("422 must raise");
    } catch (error) {
      const apiError = error as ApiError;
      expect(apiError.status).toBe(422);
      expect(apiError.violations.length).toBeGreaterThan(0);
      expect(apiError.violations[0]).toHaveProperty("code");
      expect(apiError.violations[0]).toHaveProperty("detail");
    }
  });
});
