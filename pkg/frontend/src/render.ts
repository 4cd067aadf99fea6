/**
 * HTML string renderers.  No client-side text generation: analysis nudges
 * and validation details render verbatim from the API payloads.
 */

import { QualificationState, stageQuestions } from "./stageMachine.js";
import { SupervisorDashboard } from "./supervisor.js";
import { HalfForm } from "./stageMachine.js";
import { WorkbenchViewState } from "./workbench.js";

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;")
    .replaceAll("'", "&#39;");
}

function input(name: string, value: string, editable: boolean): string {
  const readonly = editable ? "" : " readonly";
  return `<label class="field">${escapeHtml(name)}
  <input name="${escapeHtml(name)}" value="${escapeHtml(value)}"${readonly}>
</label>`;
}

function answerPicker(half: "first" | "second", form: HalfForm): string {
  const options = ["A", "B"].map((answer) => {
    const checked = form.selectedAnswer === answer ? " checked" : "";
    const target = answer === "A" ? form.targetA : form.targetB;
    return `<label><input type="radio" name="${half}-answer" ` +
      `value="${answer}"${checked}> ${answer}: ${escapeHtml(target)}</label>`;
  });
  return `<fieldset class="answers"><legend>correct answer (${half} half)</legend>` +
    options.join("\n") + `</fieldset>`;
}

export function renderHalfForm(title: string, half: "first" | "second",
                               form: HalfForm, editable: boolean): string {
  return `<section class="half" data-half="${half}">
<h3>${escapeHtml(title)}</h3>
${input("sentence", form.sentence, editable)}
${input("question", form.question, editable)}
${input("target_a", form.targetA, editable)}
${input("target_b", form.targetB, editable)}
${answerPicker(half, form)}
</section>`;
}

export function renderViolations(state: QualificationState): string {
  if (state.violations.length === 0) return "";
  const items = state.violations
    .map((v) => `<li><code>${escapeHtml(v.code)}</code>` +
      `${v.half ? ` (${escapeHtml(v.half)} half)` : ""}: ` +
      `${escapeHtml(v.detail)}</li>`)
    .join("\n");
  return `<div class="violations" role="alert"><p>The submission failed ` +
    `validation; your edits are kept.</p><ul>${items}</ul></div>`;
}

export function renderStagePanel(state: QualificationState): string {
  const questions = stageQuestions(state.stage)
    .map((q, i) => `<li data-question="${i}">${escapeHtml(q)} ` +
      `<button data-answer="yes">yes</button>` +
      `<button data-answer="no">no</button></li>`)
    .join("\n");
  const notice = state.notice
    ? `<p class="notice">${escapeHtml(state.notice)}</p>` : "";
  return `<div class="stage" data-stage="${state.stage}">` +
    `<ol>${questions}</ol>${notice}</div>`;
}

export function renderQualificationForm(state: QualificationState): string {
  const editable = state.stage === "editing";
  const second = state.draft.kind === "full_schema" || editable
    ? renderHalfForm("Second half", "second", state.second, editable)
    : "";
  return `<form class="qualification" data-template="${state.draft.template_id}">
${renderStagePanel(state)}
${renderViolations(state)}
${renderHalfForm("First half", "first", state.first, editable)}
${second}
<button type="submit">submit</button>
</form>`;
}

export function renderBanners(state: WorkbenchViewState): string {
  if (state.banners === null) return "";
  const bonus = state.banners.bonus;
  const comments = state.banners.comments
    .map((c) => `<li>${escapeHtml(c.worker_id)}: ${escapeHtml(c.text)}</li>`)
    .join("\n");
  return `<aside class="banners">
<section class="bonus-banner">bonuses awarded so far: ${bonus.total_awarded}</section>
<section class="comments-banner"><ul>${comments}</ul></section>
</aside>`;
}

export function renderAnalytics(state: WorkbenchViewState): string {
  const panel = state.analytics;
  if (panel === null) return "";
  const hardness = panel.hardness
    ? `<p>hardness: ${panel.hardness.label} (${panel.hardness.score.toFixed(2)})</p>`
    : "";
  const nudges = panel.analysis
    ? panel.analysis.nudges.map((n) => `<li>${escapeHtml(n)}</li>`).join("")
    : "";
  const edit = panel.analysis
    ? `<p>${panel.analysis.changed_token_count} tokens changed</p>`
    : "";
  return `<section class="analytics">${hardness}${edit}` +
    `<ul class="nudges">${nudges}</ul></section>`;
}

export function renderTestQuestionOverlay(state: WorkbenchViewState): string {
  const question = state.testQuestionOverlay;
  if (question === null) return "";
  const prompt = question.answer_kind === "resolve"
    ? `<button data-answer="A">A: ${escapeHtml(question.target_a)}</button>` +
      `<button data-answer="B">B: ${escapeHtml(question.target_b)}</button>`
    : `<button data-answer="approve">approve</button>` +
      `<button data-answer="disapprove">disapprove</button>`;
  return `<div class="overlay test-question" data-question="${escapeHtml(question.question_id)}">
<p>${escapeHtml(question.sentence)}</p>
<p>${escapeHtml(question.question)}</p>
${prompt}
</div>`;
}

export function renderWorkbench(state: WorkbenchViewState): string {
  const overlay = renderTestQuestionOverlay(state);
  const blocked = overlay !== "" || state.trainingOverlay !== null;
  const body = state.queueEmpty
    ? `<p class="placeholder">No drafts available right now; check back soon.</p>`
    : state.qualification !== null && !blocked
      ? renderQualificationForm(state.qualification)
      : "";
  const prompt = state.stats?.hardness_prompt
    ? `<p class="hardness-prompt">${escapeHtml(state.stats.hardness_prompt)}</p>`
    : "";
  return `<main class="workbench">${overlay}${prompt}${body}` +
    `${renderAnalytics(state)}${renderBanners(state)}</main>`;
}

export function renderDashboard(dashboard: SupervisorDashboard): string {
  const cards = dashboard.cards.map((card) => {
    const records = card.records
      .map((r) => `<li>${escapeHtml(r.worker_id)}: ${escapeHtml(r.answer)}</li>`)
      .join("\n");
    const metrics = card.workerMetrics
      .map((m) => `<li>${escapeHtml(m.workerId)}: ${m.records} schemas, ` +
        `${m.meanResponseSeconds.toFixed(1)}s mean, ` +
        `${m.grammarFlagCount} grammar flags</li>`)
      .join("\n");
    return `<article class="review-card" data-draft="${card.draftId}">
<ul class="records">${records}</ul>
<ul class="metrics">${metrics}</ul>
<button data-verdict="valid_finished">valid-finished</button>
<button data-verdict="valid_pending">valid-pending</button>
<button data-verdict="rejected">reject</button>
</article>`;
  }).join("\n");
  return `<main class="dashboard">
<a class="tutorial" href="${escapeHtml(dashboard.tutorialLink)}">how the generator works</a>
<p>exported this session: ${dashboard.exportedCount}</p>
${cards}
</main>`;
}
