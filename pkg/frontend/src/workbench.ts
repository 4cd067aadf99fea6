/**
 * Workbench view state: the qualificator's single-page surface.  The form
 * is pre-filled from the served draft, a pending login test question or
 * an unfinished training session overlays and blocks it, and submission
 * runs through the stage machine with server violations rendered inline.
 */

import { ApiError, WorkbenchClient } from "./apiClient.js";
import {
  Action,
  QualificationState,
  SubmitEffect,
  initQualification,
  reduce,
} from "./stageMachine.js";
import {
  AnalysisView,
  BannersResponse,
  HardnessView,
  LoginResponse,
  StatsResponse,
  TestQuestionView,
  TrainingView,
} from "./types.js";

export interface AnalyticsPanel {
  hardness: HardnessView | null;
  analysis: AnalysisView | null;
  scoreAfter: number;
}

export interface WorkbenchViewState {
  session: LoginResponse;
  stats: StatsResponse | null;
  banners: BannersResponse | null;
  testQuestionOverlay: TestQuestionView | null;
  trainingOverlay: TrainingView | null;
  qualification: QualificationState | null;
  queueEmpty: boolean;
  analytics: AnalyticsPanel | null;
  error: string;
}

export function formBlocked(state: WorkbenchViewState): boolean {
  return state.testQuestionOverlay !== null || state.trainingOverlay !== null;
}

async function fetchDraft(client: WorkbenchClient, state: WorkbenchViewState):
    Promise<void> {
  const queue = await client.queueNext();
  if (queue.empty || queue.draft === null) {
    state.queueEmpty = true;
    state.qualification = null;
    return;
  }
  state.queueEmpty = false;
  state.qualification = initQualification(queue.draft);
}

/**
 * Fetch everything the workbench shows.  A pending test question blocks
 * the form; an untrained worker gets the training overlay instead of a
 * draft.
 */
export async function loadWorkbench(client: WorkbenchClient,
                                    session: LoginResponse):
    Promise<WorkbenchViewState> {
  const state: WorkbenchViewState = {
    session,
    stats: null,
    banners: null,
    testQuestionOverlay: session.test_question,
    trainingOverlay: null,
    qualification: null,
    queueEmpty: false,
    analytics: null,
    error: "",
  };
  state.stats = await client.stats();
  state.banners = await client.banners();
  if (state.testQuestionOverlay !== null) {
    return state;  // the overlay must be answered before any draft is served
  }
  if (!session.trained) {
    state.trainingOverlay = await client.trainingStart();
    return state;
  }
  await fetchDraft(client, state);
  return state;
}

async function runEffect(client: WorkbenchClient, state: WorkbenchViewState,
                         effect: SubmitEffect): Promise<void> {
  if (state.qualification === null) return;
  try {
    const result = await client.submitQualification(effect.templateId, effect.body);
    state.qualification = reduce(state.qualification,
      { kind: "submit_ok", result }).state;
    state.analytics = {
      hardness: result.hardness ?? null,
      analysis: result.analysis ?? null,
      scoreAfter: result.score,
    };
    state.stats = await client.stats();
  } catch (error) {
    if (error instanceof ApiError && error.status === 422) {
      state.qualification = reduce(state.qualification,
        { kind: "submit_failed", violations: error.violations }).state;
      return;
    }
    throw error;
  }
}

/** Apply one user action; submission effects run through the client. */
export async function applyAction(client: WorkbenchClient,
                                  state: WorkbenchViewState,
                                  action: Action): Promise<WorkbenchViewState> {
  if (state.qualification === null || formBlocked(state)) {
    return state;
  }
  const step = reduce(state.qualification, action);
  state.qualification = step.state;
  if (step.effect !== null) {
    await runEffect(client, state, step.effect);
  }
  return state;
}

/** After a submitted draft, pull the next one (mandatory feedback given). */
export async function nextDraft(client: WorkbenchClient,
                                state: WorkbenchViewState):
    Promise<WorkbenchViewState> {
  if (state.qualification !== null && state.qualification.stage !== "submitted") {
    state.error = "feedback on the current draft is mandatory before selecting another";
    return state;
  }
  await fetchDraft(client, state);
  return state;
}

export async function answerTestQuestion(client: WorkbenchClient,
                                         state: WorkbenchViewState,
                                         answer: string):
    Promise<WorkbenchViewState> {
  const overlay = state.testQuestionOverlay;
  if (overlay === null) return state;
  await client.answerTestQuestion(overlay.question_id, answer);
  state.testQuestionOverlay = null;
  state.stats = await client.stats();
  if (!state.session.trained) {
    state.trainingOverlay = await client.trainingStart();
  } else {
    await fetchDraft(client, state);
  }
  return state;
}

export async function answerTrainingItem(client: WorkbenchClient,
                                         state: WorkbenchViewState,
                                         itemIndex: number,
                                         answer: string | string[]):
    Promise<WorkbenchViewState> {
  if (state.trainingOverlay === null) return state;
  const result = await client.trainingAnswer(itemIndex, answer);
  state.trainingOverlay = {
    ...state.trainingOverlay,
    completed_items: result.completed_items,
    passed: result.passed,
    failed: result.failed,
  };
  if (result.passed) {
    state.trainingOverlay = null;
    state.session = { ...state.session, trained: true };
    await fetchDraft(client, state);
  }
  return state;
}

export async function restartTraining(client: WorkbenchClient,
                                      state: WorkbenchViewState):
    Promise<WorkbenchViewState> {
  state.trainingOverlay = await client.trainingStart();
  return state;
}

export async function postComment(client: WorkbenchClient,
                                  state: WorkbenchViewState,
                                  text: string): Promise<WorkbenchViewState> {
  await client.postComment(text);
  state.banners = await client.banners();
  return state;
}
