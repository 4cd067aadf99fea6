import { describe, expect, it } from "vitest";

import { WorkbenchClient } from "../src/apiClient.js";
import { applyVerdict, loadDashboard, workerMetrics } from "../src/supervisor.js";
import { LoginResponse, ReviewsResponse } from "../src/types.js";
import { fixtureByName, scriptedTransport } from "./helpers.js";

const SUPERVISOR = fixtureByName("login_overseer").response as LoginResponse;
const QUALIFICATOR = fixtureByName("login_with_test_question").response as LoginResponse;

describe("supervisor_dashboard", () => {
  it("renders one review card per provisional aggregation with its records", async () => {
    const { transport } = scriptedTransport([fixtureByName("reviews_pending")]);
    const client = new WorkbenchClient(transport);
    client.token = SUPERVISOR.token;
    const dashboard = await loadDashboard(client, SUPERVISOR);
    expect(dashboard.redirect).toBeNull();
    expect(dashboard.cards).toHaveLength(1);
    const card = dashboard.cards[0]!;
    expect(card.records.length).toBeGreaterThanOrEqual(3);
    expect(card.crowdVerdict).toBe("provisional_valid");
    expect(card.workerMetrics.length).toBe(3);
    for (const metric of card.workerMetrics) {
      expect(metric.meanResponseSeconds).toBeGreaterThan(0);
      expect(Number.isFinite(metric.meanResponseSeconds)).toBe(true);
    }
    expect(dashboard.tutorialLink).toContain("tutorial");
  });

  it("redirects qualificators to the workbench without calling the queue", async () => {
    const { transport, calls } = scriptedTransport([]);
    const client = new WorkbenchClient(transport);
    const dashboard = await loadDashboard(client, QUALIFICATOR);
    expect(dashboard.redirect).toBe("workbench");
    expect(calls).toHaveLength(0);
  });

  it("a verdict removes the card and bumps the export counter", async () => {
    const { transport } = scriptedTransport([
      fixtureByName("reviews_pending"), fixtureByName("review_verdict")]);
    const client = new WorkbenchClient(transport);
    client.token = SUPERVISOR.token;
    const dashboard = await loadDashboard(client, SUPERVISOR);
    const updated = await applyVerdict(client, dashboard, 2, "valid_finished");
    expect(updated.cards).toHaveLength(0);
    expect(updated.exportedCount).toBe(1);
  });
});

describe("worker metrics", () => {
  it("aggregates per worker from record timestamps", () => {
    const reviews = fixtureByName("reviews_pending").response as ReviewsResponse;
    const metrics = workerMetrics(reviews.pending[0]!.records);
    const quali = metrics.find((m) => m.workerId === "quali")!;
    expect(quali.records).toBe(1);
    expect(quali.meanResponseSeconds).toBeCloseTo(28.0, 5);
  });
});
