import { describe, expect, it } from "vitest";

import {
  escapeHtml,
  renderDashboard,
  renderQualificationForm,
  renderViolations,
  renderWorkbench,
} from "../src/render.js";
import { initQualification, reduce } from "../src/stageMachine.js";
import { loadDashboard } from "../src/supervisor.js";
import { WorkbenchClient } from "../src/apiClient.js";
import { DraftView, LoginResponse } from "../src/types.js";
import { fixtureByName, scriptedTransport } from "./helpers.js";

const DRAFT = (fixtureByName("queue_next_full").response as { draft: DraftView }).draft;

describe("rendering", () => {
  it("escapes markup in user-controlled text", () => {
    expect(escapeHtml(`<b>"x" & 'y'</b>`))
      .toBe("&lt;b&gt;&quot;x&quot; &amp; &#39;y&#39;&lt;/b&gt;");
  });

  it("the form shows the draft's fields verbatim", () => {
    const html = renderQualificationForm(initQualification(DRAFT));
    expect(html).toContain(escapeHtml(DRAFT.first!.sentence));
    expect(html).toContain(escapeHtml(DRAFT.second!.question));
    expect(html).toContain(escapeHtml(DRAFT.first!.target_a));
    expect(html).toContain('data-stage="stage1"');
    expect(html).toContain("readonly");  // stage 1 fields are not editable
  });

  it("editing removes the readonly flag", () => {
    const state = reduce(initQualification(DRAFT), { kind: "stage1_modify_yes" }).state;
    const html = renderQualificationForm(state);
    expect(html).toContain('data-stage="editing"');
    expect(html.split("<input").some((chunk) =>
      chunk.includes('name="sentence"') && !chunk.includes("readonly"))).toBe(true);
  });

  it("violations render with code, half, and detail", () => {
    let state = initQualification(DRAFT);
    state = reduce(state, {
      kind: "submit_failed",
      violations: [{ code: "HALVES_NOT_PARITY", half: "second",
        detail: "halves differ outside the special-word span" }],
    }).state;
    const html = renderViolations(state);
    expect(html).toContain("HALVES_NOT_PARITY");
    expect(html).toContain("second half");
    expect(html).toContain("your edits are kept");
  });

  it("the dashboard lists verdict buttons per card", async () => {
    const session = fixtureByName("login_overseer").response as LoginResponse;
    const { transport } = scriptedTransport([fixtureByName("reviews_pending")]);
    const client = new WorkbenchClient(transport);
    client.token = session.token;
    const dashboard = await loadDashboard(client, session);
    const html = renderDashboard(dashboard);
    expect(html).toContain('data-verdict="valid_finished"');
    expect(html).toContain('data-verdict="valid_pending"');
    expect(html).toContain('data-verdict="rejected"');
    expect(html).toContain("grammar flags");
  });

  it("the empty queue renders the placeholder", () => {
    const session = {
      ...(fixtureByName("login_with_test_question").response as LoginResponse),
      test_question: null,
    };
    const html = renderWorkbench({
      session,
      stats: null,
      banners: null,
      testQuestionOverlay: null,
      trainingOverlay: null,
      qualification: null,
      queueEmpty: true,
      analytics: null,
      error: "",
    });
    expect(html).toContain("No drafts available");
  });
});
