/**
 * Wire types for the collaboration service API, with zod schemas so every
 * network payload is validated against the documented contract at the
 * moment it crosses the boundary.
 */

import { z } from "zod";

export const spanSchema = z.object({ start: z.number().int(), end: z.number().int() });
export type Span = z.infer<typeof spanSchema>;

export const halfViewSchema = z.object({
  sentence: z.string(),
  pronoun: spanSchema,
  target_a: z.string(),
  target_b: z.string(),
  question: z.string(),
  correct_answer: z.enum(["A", "B"]),
  special_word: spanSchema,
});
export type HalfView = z.infer<typeof halfViewSchema>;

export const draftViewSchema = z.object({
  template_id: z.number().int(),
  kind: z.enum(["full_schema", "half_only", "semi_template"]),
  subject_tag: z.string(),
  usage_count: z.number().int(),
  bias_label: z.enum(["unknown", "biased", "unbiased"]),
  first: halfViewSchema.optional(),
  second: halfViewSchema.optional(),
  sentence: z.string().optional(),
});
export type DraftView = z.infer<typeof draftViewSchema>;

export const queueResponseSchema = z.object({
  empty: z.boolean(),
  draft: draftViewSchema.nullable(),
});
export type QueueResponse = z.infer<typeof queueResponseSchema>;

export const testQuestionViewSchema = z.object({
  question_id: z.string(),
  source: z.enum(["validated_set", "unvalidated_generator"]),
  sentence: z.string(),
  question: z.string(),
  target_a: z.string(),
  target_b: z.string(),
  answer_kind: z.enum(["resolve", "approval"]),
});
export type TestQuestionView = z.infer<typeof testQuestionViewSchema>;

export const loginResponseSchema = z.object({
  token: z.string(),
  worker_id: z.string(),
  role: z.enum(["qualificator", "supervisor", "admin"]),
  trained: z.boolean(),
  test_question: testQuestionViewSchema.nullable(),
});
export type LoginResponse = z.infer<typeof loginResponseSchema>;

export const violationSchema = z.object({
  code: z.string(),
  half: z.string().nullable(),
  detail: z.string(),
});
export type Violation = z.infer<typeof violationSchema>;

export const editOperationSchema = z.object({
  kind: z.enum(["insert", "delete", "substitute"]),
  position: z.number().int(),
  tokens: z.array(z.string()),
});

export const analysisViewSchema = z.object({
  changed_token_count: z.number().int(),
  operations: z.array(editOperationSchema),
  pos_histogram_delta: z.record(z.number().int()),
  type_token_ratio: z.number(),
  grammar_flags: z.array(z.string()),
  nudges: z.array(z.string()),
});
export type AnalysisView = z.infer<typeof analysisViewSchema>;

export const hardnessViewSchema = z.object({
  score: z.number(),
  label: z.enum(["easy", "hard"]),
});
export type HardnessView = z.infer<typeof hardnessViewSchema>;

export const biasVoteResultSchema = z.object({
  template_id: z.number().int(),
  bias_label: z.enum(["unknown", "biased", "unbiased"]),
  unbiased_probability: z.number(),
});

export const submissionResponseSchema = z.object({
  record_id: z.number().int(),
  answer: z.string(),
  template_id: z.number().int(),
  score: z.number(),
  hardness: hardnessViewSchema.optional(),
  analysis: analysisViewSchema.optional(),
  bias: biasVoteResultSchema.optional(),
});
export type SubmissionResponse = z.infer<typeof submissionResponseSchema>;

export const testAnswerResponseSchema = z.object({
  outcome: z.enum(["correct", "wrong", "signal"]),
  score: z.number(),
  banned: z.boolean(),
});
export type TestAnswerResponse = z.infer<typeof testAnswerResponseSchema>;

export const trainingItemViewSchema = z.object({
  kind: z.enum(["resolve", "validate"]),
  sentence: z.string(),
  question: z.string(),
  target_a: z.string(),
  target_b: z.string(),
  graded: z.boolean(),
  second_sentence: z.string().optional(),
  defect_options: z.array(z.string()).optional(),
});
export type TrainingItemView = z.infer<typeof trainingItemViewSchema>;

export const trainingViewSchema = z.object({
  required_items: z.number().int(),
  completed_items: z.number().int(),
  passed: z.boolean(),
  failed: z.boolean(),
  items: z.array(trainingItemViewSchema),
});
export type TrainingView = z.infer<typeof trainingViewSchema>;

export const trainingAnswerResponseSchema = z.object({
  passed: z.boolean(),
  failed: z.boolean(),
  completed_items: z.number().int(),
  required_items: z.number().int(),
});
export type TrainingAnswerResponse = z.infer<typeof trainingAnswerResponseSchema>;

export const statsResponseSchema = z.object({
  worker_id: z.string(),
  role: z.enum(["qualificator", "supervisor", "admin"]),
  score: z.number(),
  banned: z.boolean(),
  valid_count: z.number().int(),
  invalid_count: z.number().int(),
  bonuses_awarded: z.number(),
  mean_response_seconds: z.number().nullable(),
  accepted_schemas: z.number().int(),
  hardness_prompt: z.string().nullable(),
});
export type StatsResponse = z.infer<typeof statsResponseSchema>;

export const commentViewSchema = z.object({
  id: z.number().int(),
  worker_id: z.string(),
  text: z.string(),
  created_at: z.number(),
});
export type CommentView = z.infer<typeof commentViewSchema>;

export const bannersResponseSchema = z.object({
  bonus: z.object({
    total_awarded: z.number(),
    per_worker: z.record(z.number()),
    recent: z.array(z.object({
      worker_id: z.string(),
      amount: z.number(),
      time: z.number(),
    })),
  }),
  comments: z.array(commentViewSchema),
});
export type BannersResponse = z.infer<typeof bannersResponseSchema>;

export const recordViewSchema = z.object({
  record_id: z.number().int(),
  worker_id: z.string(),
  draft_id: z.number().int(),
  answer: z.enum(["accepted_as_is", "modified_accepted", "rejected_unfixable",
                  "rejected_subject"]),
  modified: z.string().nullable(),
  selected_answers: z.record(z.string()).nullable(),
  started_at: z.number(),
  submitted_at: z.number(),
  analysis: analysisViewSchema.optional(),
});
export type RecordView = z.infer<typeof recordViewSchema>;

export const reviewsResponseSchema = z.object({
  pending: z.array(z.object({
    draft_id: z.number().int(),
    crowd_verdict: z.string(),
    records: z.array(recordViewSchema),
  })),
});
export type ReviewsResponse = z.infer<typeof reviewsResponseSchema>;

export const reviewResultSchema = z.object({
  draft_id: z.number().int(),
  verdict: z.enum(["valid_finished", "valid_pending", "rejected"]),
  exported: z.boolean(),
});
export type ReviewResult = z.infer<typeof reviewResultSchema>;

export const aggregateResponseSchema = z.object({
  date: z.string(),
  exported: z.number().int(),
  results: z.array(z.object({
    draft_id: z.number().int(),
    record_ids: z.array(z.number().int()),
    crowd_verdict: z.string(),
    supervisor_verdict: z.string().nullable(),
  })),
});
export type AggregateResponse = z.infer<typeof aggregateResponseSchema>;

export const adaptivityResponseSchema = z.object({
  factors: z.record(z.tuple([z.number().int(), z.number().int()])),
  subjects: z.record(z.tuple([z.number().int(), z.number().int()])),
  accepted_lengths: z.record(z.number().int()),
  config_version: z.number().int(),
  sentence_length_max: z.number().int(),
  factor_weights: z.record(z.number()),
  mitkov_top_quartile: z.number(),
  min_length_samples: z.number().int(),
});
export type AdaptivityResponse = z.infer<typeof adaptivityResponseSchema>;

export const bonusResultSchema = z.object({
  worker_id: z.string(),
  amount: z.number(),
  total_awarded: z.number(),
});

export const corpusResultSchema = z.object({
  sentences: z.number().int(),
  drafts: z.number().int(),
  kinds: z.record(z.number().int()),
  skipped: z.array(z.tuple([z.string(), z.string()])),
});

export const workerCreatedSchema = z.object({
  worker_id: z.string(),
  role: z.string(),
});

// ---------------------------------------------------------------------------
// Request bodies
// ---------------------------------------------------------------------------

export type AnswerKind =
  | "accepted_as_is"
  | "modified_accepted"
  | "rejected_unfixable"
  | "rejected_subject";

export interface ModifiedHalfRecord {
  sentence: string;
  pronoun: Span;
  target_a: string;
  target_b: string;
  question: string;
  correct_answer: "A" | "B";
  special_word: Span;
}

export interface ModifiedSchemaRecord {
  version: 1;
  first: ModifiedHalfRecord;
  second: ModifiedHalfRecord;
  subject_tag: string;
  origin: "crowd_modified";
}

export interface QualificationBody {
  answer: AnswerKind;
  modified?: ModifiedSchemaRecord;
  selected_answers?: { first: "A" | "B"; second: "A" | "B" };
  bias_label?: "biased" | "unbiased";
}
