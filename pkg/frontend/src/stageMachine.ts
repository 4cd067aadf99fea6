/**
 * Two-stage qualification flow as a pure state machine.
 *
 * Stage 1 offers the first yes/no pair ("valid as-is" / "I could modify
 * it"); discarding resets to stage 2's pair ("cannot modify" / "dislike
 * the subject").  Accept paths demand a selected correct answer for each
 * half before a submission effect is emitted; server-side validation
 * failures feed back as `submit_failed`, keeping the stage and edits.
 *
 * The reducer never performs I/O: a `submit` effect carries the request
 * body, and the caller reports the outcome with `submit_ok` /
 * `submit_failed`.
 */

import {
  AnswerKind,
  DraftView,
  HalfView,
  ModifiedHalfRecord,
  ModifiedSchemaRecord,
  QualificationBody,
  SubmissionResponse,
  Violation,
} from "./types.js";

export type Stage = "stage1" | "stage2" | "editing" | "submitted";

export interface HalfForm {
  sentence: string;
  question: string;
  targetA: string;
  targetB: string;
  pronoun: { start: number; end: number };
  specialWord: { start: number; end: number };
  selectedAnswer: "" | "A" | "B";
}

export interface QualificationState {
  stage: Stage;
  draft: DraftView;
  first: HalfForm;
  second: HalfForm;
  answer: AnswerKind | null;
  biasLabel: "" | "biased" | "unbiased";
  violations: Violation[];
  notice: string;
  edited: boolean;
  result: SubmissionResponse | null;
}

export type UserAction =
  | { kind: "stage1_valid_yes" }
  | { kind: "stage1_modify_yes" }
  | { kind: "discard" }
  | { kind: "stage2_unfixable_yes" }
  | { kind: "stage2_subject_yes" }
  | { kind: "select_answer"; half: "first" | "second"; answer: "A" | "B" }
  | { kind: "edit_field"; half: "first" | "second";
      field: "sentence" | "question" | "targetA" | "targetB"; value: string }
  | { kind: "set_bias"; label: "biased" | "unbiased" }
  | { kind: "back" }
  | { kind: "submit" };

export type InternalAction =
  | { kind: "submit_ok"; result: SubmissionResponse }
  | { kind: "submit_failed"; violations: Violation[] };

export type Action = UserAction | InternalAction;

export interface SubmitEffect {
  type: "submit";
  templateId: number;
  body: QualificationBody;
}

export interface Step {
  state: QualificationState;
  effect: SubmitEffect | null;
}

function halfForm(view: HalfView): HalfForm {
  return {
    sentence: view.sentence,
    question: view.question,
    targetA: view.target_a,
    targetB: view.target_b,
    pronoun: { ...view.pronoun },
    specialWord: { ...view.special_word },
    selectedAnswer: "",
  };
}

function emptyHalfForm(sentence: string): HalfForm {
  return {
    sentence,
    question: "",
    targetA: "",
    targetB: "",
    pronoun: { start: 0, end: 1 },
    specialWord: { start: 0, end: 1 },
    selectedAnswer: "",
  };
}

/** Form fields start exactly equal to the served draft's content. */
export function initQualification(draft: DraftView): QualificationState {
  let first: HalfForm;
  let second: HalfForm;
  if (draft.kind === "full_schema" && draft.first && draft.second) {
    first = halfForm(draft.first);
    second = halfForm(draft.second);
  } else if (draft.kind === "half_only" && draft.first) {
    first = halfForm(draft.first);
    second = halfForm(draft.first);
    second.question = "";
  } else {
    first = emptyHalfForm(draft.sentence ?? "");
    second = emptyHalfForm(draft.sentence ?? "");
  }
  return {
    stage: "stage1",
    draft,
    first,
    second,
    answer: null,
    biasLabel: "",
    violations: [],
    notice: "",
    edited: false,
    result: null,
  };
}

function answersComplete(state: QualificationState): boolean {
  return state.first.selectedAnswer !== ""
    && state.second.selectedAnswer !== ""
    && state.first.selectedAnswer !== state.second.selectedAnswer;
}

function halfRecord(form: HalfForm): ModifiedHalfRecord {
  return {
    sentence: form.sentence,
    pronoun: { ...form.pronoun },
    target_a: form.targetA,
    target_b: form.targetB,
    question: form.question,
    correct_answer: form.selectedAnswer === "B" ? "B" : "A",
    special_word: { ...form.specialWord },
  };
}

function modifiedRecord(state: QualificationState): ModifiedSchemaRecord {
  return {
    version: 1,
    first: halfRecord(state.first),
    second: halfRecord(state.second),
    subject_tag: state.draft.subject_tag,
    origin: "crowd_modified",
  };
}

/**
 * True when the state carries everything its chosen answer path needs;
 * the reducer only emits a submit effect (and only ever reaches
 * "submitted") behind this guard.
 */
export function isCompleteAnswerPath(state: QualificationState): boolean {
  switch (state.answer) {
    case "accepted_as_is":
      return state.draft.kind === "full_schema" && !state.edited
        && answersComplete(state);
    case "modified_accepted":
      return state.stage === "editing" && answersComplete(state)
        && state.first.sentence.trim() !== ""
        && state.second.sentence.trim() !== "";
    case "rejected_unfixable":
    case "rejected_subject":
      return state.stage === "stage2";
    default:
      return false;
  }
}

function buildBody(state: QualificationState): QualificationBody {
  const body: QualificationBody = { answer: state.answer as AnswerKind };
  if (state.answer === "accepted_as_is" || state.answer === "modified_accepted") {
    body.selected_answers = {
      first: state.first.selectedAnswer as "A" | "B",
      second: state.second.selectedAnswer as "A" | "B",
    };
  }
  if (state.answer === "modified_accepted") {
    body.modified = modifiedRecord(state);
  }
  if (state.biasLabel !== "") {
    body.bias_label = state.biasLabel;
  }
  return body;
}

export function reduce(state: QualificationState, action: Action): Step {
  const next: QualificationState = {
    ...state,
    first: { ...state.first },
    second: { ...state.second },
    violations: state.violations,
    notice: "",
  };

  if (state.stage === "submitted") {
    return { state, effect: null };  // terminal; feedback already given
  }

  switch (action.kind) {
    case "stage1_valid_yes":
      if (state.stage !== "stage1") break;
      if (state.draft.kind !== "full_schema") {
        next.notice = "Only a complete schema can be accepted without changes.";
        return { state: next, effect: null };
      }
      if (state.edited) {
        next.notice = "You edited the form; use the modify path instead.";
        return { state: next, effect: null };
      }
      next.answer = "accepted_as_is";
      return { state: next, effect: null };

    case "stage1_modify_yes":
      if (state.stage !== "stage1") break;
      next.stage = "editing";
      next.answer = "modified_accepted";
      return { state: next, effect: null };

    case "discard":
      if (state.stage !== "stage1" && state.stage !== "editing") break;
      next.stage = "stage2";
      next.answer = null;
      return { state: next, effect: null };

    case "stage2_unfixable_yes":
      if (state.stage !== "stage2") break;
      next.answer = "rejected_unfixable";
      return { state: next, effect: null };

    case "stage2_subject_yes":
      if (state.stage !== "stage2") break;
      next.answer = "rejected_subject";
      return { state: next, effect: null };

    case "select_answer":
      if (state.stage !== "stage1" && state.stage !== "editing") break;
      next[action.half] = { ...next[action.half], selectedAnswer: action.answer };
      return { state: next, effect: null };

    case "edit_field":
      if (state.stage !== "editing") break;
      next[action.half] = { ...next[action.half], [action.field]: action.value };
      next.edited = true;
      return { state: next, effect: null };

    case "set_bias":
      next.biasLabel = action.label;
      return { state: next, effect: null };

    case "back":
      if (state.stage === "stage2" || state.stage === "editing") {
        next.stage = "stage1";
        next.answer = null;
        return { state: next, effect: null };
      }
      break;

    case "submit": {
      if (!isCompleteAnswerPath(state)) {
        next.notice = state.answer === null
          ? "Answer one of the questions first."
          : "Select the correct answer for each half (they must differ).";
        return { state: next, effect: null };
      }
      return {
        state: next,
        effect: { type: "submit", templateId: state.draft.template_id,
                  body: buildBody(state) },
      };
    }

    case "submit_ok":
      next.stage = "submitted";
      next.result = action.result;
      next.violations = [];
      return { state: next, effect: null };

    case "submit_failed":
      // server-side report renders inline; the stage and all edits stay
      next.violations = action.violations;
      return { state: next, effect: null };
  }
  return { state: next, effect: null };
}

/** The two yes/no questions the current stage presents. */
export function stageQuestions(stage: Stage): string[] {
  if (stage === "stage1" || stage === "editing") {
    return [
      "This is a valid schema, and I do not need to make any changes.",
      "This was not a valid schema, but I could modify it to a valid one.",
    ];
  }
  if (stage === "stage2") {
    return [
      "This is not a valid schema, and I cannot modify it to a valid one.",
      "This is not a valid schema, and although I can modify it, I do not like its subject.",
    ];
  }
  return [];
}
