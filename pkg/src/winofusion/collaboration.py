"""Crowd workflow orchestration: the draft queue with mandatory feedback,
two-stage qualification, three-reviewer aggregation, supervisor verdicts,
promotion, banners, per-schema analysis, and the bias vote model.

CollaborationState is a deterministic state machine: every method takes
explicit time values and pre-drawn random rolls, so the event-sourced
service can replay it exactly.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from winofusion.lexical import (
    SINGULAR_AUXILIARIES,
    PLURAL_AUXILIARIES,
    stopwords,
)
from winofusion.pipeline import (
    KIND_FULL,
    KIND_HALF,
    KIND_SEMI,
    Draft,
    PipelineConfig,
    draft_from_dict,
    draft_to_dict,
    rank_drafts,
)
from winofusion.quality import ROLE_SUPERVISOR, Worker
from winofusion.schema import (
    EditScript,
    Schema,
    Token,
    ValidationReport,
    Violation,
    decode_schema,
    diff_token_sequences,
    encode_schema,
    relatedness,
    validate_schema,
)

ANSWER_ACCEPTED_AS_IS = "accepted_as_is"
ANSWER_MODIFIED_ACCEPTED = "modified_accepted"
ANSWER_REJECTED_UNFIXABLE = "rejected_unfixable"
ANSWER_REJECTED_SUBJECT = "rejected_subject"
ANSWER_KINDS = (ANSWER_ACCEPTED_AS_IS, ANSWER_MODIFIED_ACCEPTED,
                ANSWER_REJECTED_UNFIXABLE, ANSWER_REJECTED_SUBJECT)
ACCEPT_ANSWERS = (ANSWER_ACCEPTED_AS_IS, ANSWER_MODIFIED_ACCEPTED)

VERDICT_PROVISIONAL = "provisional_valid"
VERDICT_REJECTED = "rejected"
SUPERVISOR_VERDICTS = ("valid_finished", "valid_pending", "rejected")

DEFAULT_LEASE_MINUTES = 30
DEFAULT_TEMPLATE_CAP = 5
DEFAULT_SEMI_PROBABILITY = 0.10
DEFAULT_MIN_RECORDS = 3
DEFAULT_PROMOTE_SCORE = 100
DEFAULT_PROMOTE_VALID_MIN = 20

GRAMMAR_NO_TERMINAL_PUNCT = "NO_TERMINAL_PUNCT"
GRAMMAR_REPEATED_WORD = "REPEATED_WORD"
GRAMMAR_CAPITALIZATION = "CAPITALIZATION"
GRAMMAR_SV_NUMBER_MISMATCH = "SV_NUMBER_MISMATCH"


class QueueEmpty(Exception):
    """No servable draft: everything is retired, capped, or already seen."""


class OpenDraftError(Exception):
    """The worker still owes feedback on a leased draft."""


class LeaseError(Exception):
    """Submission without a live lease (expired or never granted)."""


class SubmissionInvalid(Exception):
    def __init__(self, report: ValidationReport):
        super().__init__("; ".join(str(v) for v in report.violations))
        self.report = report


@dataclass
class QualificationRecord:
    record_id: int
    worker_id: str
    draft_id: int
    answer: str
    modified: Schema | None
    selected_answers: dict[str, str] | None  # {"first": "A"|"B", "second": ...}
    started_at: float
    submitted_at: float

    def is_accept(self) -> bool:
        return self.answer in ACCEPT_ANSWERS

    def to_dict(self) -> dict:
        return {"record_id": self.record_id, "worker_id": self.worker_id,
                "draft_id": self.draft_id, "answer": self.answer,
                "modified": encode_schema(self.modified) if self.modified else None,
                "selected_answers": self.selected_answers,
                "started_at": self.started_at, "submitted_at": self.submitted_at}

    @classmethod
    def from_dict(cls, obj: dict) -> "QualificationRecord":
        return cls(record_id=obj["record_id"], worker_id=obj["worker_id"],
                   draft_id=obj["draft_id"], answer=obj["answer"],
                   modified=decode_schema(obj["modified"]) if obj["modified"] else None,
                   selected_answers=obj["selected_answers"],
                   started_at=obj["started_at"], submitted_at=obj["submitted_at"])


@dataclass
class AggregationResult:
    draft_id: int
    record_ids: list[int]
    crowd_verdict: str  # provisional_valid | rejected
    supervisor_verdict: str | None = None  # pending until set

    def to_dict(self) -> dict:
        return {"draft_id": self.draft_id, "record_ids": list(self.record_ids),
                "crowd_verdict": self.crowd_verdict,
                "supervisor_verdict": self.supervisor_verdict}

    @classmethod
    def from_dict(cls, obj: dict) -> "AggregationResult":
        return cls(draft_id=obj["draft_id"], record_ids=list(obj["record_ids"]),
                   crowd_verdict=obj["crowd_verdict"],
                   supervisor_verdict=obj["supervisor_verdict"])


@dataclass
class BonusLedger:
    total_awarded: int = 0
    per_worker: dict[str, int] = field(default_factory=dict)
    recent: list[tuple[str, int, float]] = field(default_factory=list)

    def award(self, worker_id: str, amount: int, time: float) -> None:
        self.total_awarded += amount
        self.per_worker[worker_id] = self.per_worker.get(worker_id, 0) + amount
        self.recent.append((worker_id, amount, time))

    def to_dict(self) -> dict:
        return {"total_awarded": self.total_awarded,
                "per_worker": dict(self.per_worker),
                "recent": [list(r) for r in self.recent]}

    @classmethod
    def from_dict(cls, obj: dict) -> "BonusLedger":
        return cls(total_awarded=obj["total_awarded"],
                   per_worker=dict(obj["per_worker"]),
                   recent=[tuple(r) for r in obj["recent"]])


@dataclass
class Comment:
    id: int
    worker_id: str
    text: str
    created_at: float

    def __post_init__(self) -> None:
        if len(self.text) > 1000:
            raise ValueError("comment longer than 1,000 characters")

    def to_dict(self) -> dict:
        return {"id": self.id, "worker_id": self.worker_id, "text": self.text,
                "created_at": self.created_at}


@dataclass(frozen=True)
class SchemaAnalysis:
    edit: EditScript
    type_token_ratio: float
    grammar_flags: tuple[str, ...]
    nudges: tuple[str, ...]


# ---------------------------------------------------------------------------
# Verdicts, promotion
# ---------------------------------------------------------------------------

def crowd_verdict(records: list[QualificationRecord]) -> str:
    """Strict majority of accept-type answers; ties reject."""
    accepts = sum(1 for r in records if r.is_accept())
    return VERDICT_PROVISIONAL if accepts * 2 > len(records) else VERDICT_REJECTED


def promote_check(worker: Worker,
                  promote_score: int = DEFAULT_PROMOTE_SCORE,
                  promote_valid_min: int = DEFAULT_PROMOTE_VALID_MIN) -> str:
    """Supervisor once both the score and the valid-schema count clear
    their thresholds; never demotes."""
    if worker.role in (ROLE_SUPERVISOR, "admin"):
        return worker.role
    if worker.score >= promote_score and worker.valid_count >= promote_valid_min:
        return ROLE_SUPERVISOR
    return worker.role


# ---------------------------------------------------------------------------
# Per-schema analysis
# ---------------------------------------------------------------------------

def _content_tokens(tokens: tuple[Token, ...]) -> list[str]:
    stops = stopwords()
    return [t.surface.lower() for t in tokens
            if t.pos_tag not in ("DET", "ADP", "PUNCT")
            and t.surface.lower() not in stops]


def _grammar_flags(tokens: tuple[Token, ...]) -> set[str]:
    flags: set[str] = set()
    words = [t for t in tokens if t.pos_tag != "PUNCT"]
    if not tokens:
        return flags
    if tokens[-1].surface not in (".", "!", "?"):
        flags.add(GRAMMAR_NO_TERMINAL_PUNCT)
    for a, b in zip(words, words[1:]):
        if a.surface.lower() == b.surface.lower():
            flags.add(GRAMMAR_REPEATED_WORD)
    first_alpha = next((t for t in tokens if t.surface[:1].isalpha()), None)
    if first_alpha is not None and not first_alpha.surface[0].isupper():
        flags.add(GRAMMAR_CAPITALIZATION)
    for a, b in zip(tokens, tokens[1:]):
        if a.pos_tag != "NOUN" or b.pos_tag != "VERB":
            continue
        verb = b.surface.lower()
        if a.number == "plural" and (verb in SINGULAR_AUXILIARIES
                                     or (verb.endswith("s") and not verb.endswith("ss"))):
            flags.add(GRAMMAR_SV_NUMBER_MISMATCH)
        if a.number == "singular" and verb in PLURAL_AUXILIARIES:
            flags.add(GRAMMAR_SV_NUMBER_MISMATCH)
    return flags


_NUDGE_TEXT = {
    GRAMMAR_NO_TERMINAL_PUNCT: "End each sentence with terminal punctuation.",
    GRAMMAR_REPEATED_WORD: "A word appears twice in a row; drop the duplicate.",
    GRAMMAR_CAPITALIZATION: "Capitalize the first word of the sentence.",
    GRAMMAR_SV_NUMBER_MISMATCH: "Check subject-verb number agreement.",
}


def _source_tokens(original) -> tuple[Token, ...]:
    """Token sequence of whatever the worker started from: a full schema
    (both halves), a lone half, or a raw semi-template sentence."""
    if isinstance(original, Schema):
        return original.first.sentence + original.second.sentence
    if hasattr(original, "pronoun_span"):  # SchemaHalf
        return original.sentence
    if hasattr(original, "tokens"):  # AnnotatedSentence
        return original.tokens
    return tuple(original)


def analysis_report(original, modified: Schema) -> SchemaAnalysis:
    """Word-level stats on a crowd modification: the edit script against
    the original draft content, lexical richness over both halves, and
    grammar flags with their nudge messages."""
    source = _source_tokens(original)
    target = modified.first.sentence + modified.second.sentence
    edit = diff_token_sequences(source, target)

    words = _content_tokens(modified.first.sentence) + _content_tokens(modified.second.sentence)
    ttr = len(set(words)) / len(words) if words else 1.0

    flags = sorted(_grammar_flags(modified.first.sentence)
                   | _grammar_flags(modified.second.sentence))
    nudges = [_NUDGE_TEXT[f] for f in flags]
    if ttr < 0.4:
        nudges.append("Vary your wording; the halves reuse very few distinct words.")
    return SchemaAnalysis(edit=edit, type_token_ratio=ttr,
                          grammar_flags=tuple(flags), nudges=tuple(nudges))


# ---------------------------------------------------------------------------
# Bias vote model (incremental word-count classifier, add-one smoothing)
# ---------------------------------------------------------------------------

BIAS_CLASSES = ("biased", "unbiased")


@dataclass
class BiasModelState:
    word_counts: dict[str, Counter] = field(
        default_factory=lambda: {c: Counter() for c in BIAS_CLASSES})
    doc_counts: dict[str, int] = field(
        default_factory=lambda: {c: 0 for c in BIAS_CLASSES})
    votes: dict[tuple[str, int], str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"word_counts": {c: dict(self.word_counts[c]) for c in BIAS_CLASSES},
                "doc_counts": dict(self.doc_counts),
                "votes": [[w, t, label] for (w, t), label in sorted(self.votes.items())]}

    @classmethod
    def from_dict(cls, obj: dict) -> "BiasModelState":
        state = cls()
        for c in BIAS_CLASSES:
            state.word_counts[c] = Counter(obj["word_counts"][c])
        state.doc_counts = dict(obj["doc_counts"])
        state.votes = {(w, t): label for w, t, label in obj["votes"]}
        return state


def _bias_words(sentence_text: str) -> list[str]:
    from winofusion.lexical import content_words
    return sorted(content_words(sentence_text))


def bias_update(state: BiasModelState, worker_id: str, template_id: int,
                label: str, sentence_text: str) -> BiasModelState:
    """Record one worker's biased/unbiased vote on a template; a revote by
    the same worker replaces the earlier one."""
    if label not in BIAS_CLASSES:
        raise ValueError(f"unknown bias label {label!r}")
    key = (worker_id, template_id)
    previous = state.votes.get(key)
    if previous == label:
        return state
    words = _bias_words(sentence_text)
    if previous is not None:
        state.doc_counts[previous] -= 1
        for w in words:
            state.word_counts[previous][w] -= 1
            if state.word_counts[previous][w] <= 0:
                del state.word_counts[previous][w]
    state.votes[key] = label
    state.doc_counts[label] += 1
    for w in words:
        state.word_counts[label][w] += 1
    return state


def bias_probability(state: BiasModelState, sentence_text: str) -> float:
    """P(unbiased | sentence content words), add-one smoothed.  An empty
    model scores exactly 0.5 for any sentence."""
    vocab = set(state.word_counts["biased"]) | set(state.word_counts["unbiased"])
    total = sum(state.doc_counts.values())
    log_post = {}
    for c in BIAS_CLASSES:
        log_post[c] = math.log((state.doc_counts[c] + 1) / (total + 2))
    if vocab:
        class_totals = {c: sum(state.word_counts[c].values()) for c in BIAS_CLASSES}
        for w in _bias_words(sentence_text):
            if w not in vocab:
                continue
            for c in BIAS_CLASSES:
                log_post[c] += math.log(
                    (state.word_counts[c][w] + 1) / (class_totals[c] + len(vocab)))
    m = max(log_post.values())
    exp = {c: math.exp(v - m) for c, v in log_post.items()}
    return exp["unbiased"] / (exp["biased"] + exp["unbiased"])


def bias_label_for(state: BiasModelState, template_id: int) -> str:
    """Majority label of the direct votes on a template; unknown on ties
    or no votes."""
    tally = Counter(label for (_, t), label in state.votes.items() if t == template_id)
    if not tally:
        return "unknown"
    (top, n), *rest = tally.most_common()
    if rest and rest[0][1] == n:
        return "unknown"
    return top


# ---------------------------------------------------------------------------
# Queue / lease / aggregation state machine
# ---------------------------------------------------------------------------

@dataclass
class Lease:
    worker_id: str
    template_id: int
    granted_at: float
    expires_at: float

    def to_dict(self) -> dict:
        return {"worker_id": self.worker_id, "template_id": self.template_id,
                "granted_at": self.granted_at, "expires_at": self.expires_at}


@dataclass
class CollaborationState:
    """All queue and review state, mutated only through its methods."""

    drafts: dict[int, Draft] = field(default_factory=dict)
    leases: dict[str, Lease] = field(default_factory=dict)  # worker_id -> lease
    seen: dict[str, set[int]] = field(default_factory=dict)  # worker_id -> templates
    records: dict[int, list[QualificationRecord]] = field(default_factory=dict)
    aggregations: dict[int, AggregationResult] = field(default_factory=dict)
    retired: set[int] = field(default_factory=set)  # valid_finished or crowd-rejected
    next_record_id: int = 1
    lease_minutes: float = DEFAULT_LEASE_MINUTES
    template_cap: int = DEFAULT_TEMPLATE_CAP
    semi_probability: float = DEFAULT_SEMI_PROBABILITY
    min_records: int = DEFAULT_MIN_RECORDS

    # -- queue -----------------------------------------------------------

    def add_drafts(self, drafts: list[Draft]) -> None:
        for d in drafts:
            self.drafts[d.template_id] = d

    def _expire_leases(self, now: float) -> None:
        for worker_id in [w for w, l in self.leases.items() if l.expires_at <= now]:
            lease = self.leases.pop(worker_id)
            draft = self.drafts.get(lease.template_id)
            if draft is not None and draft.usage_count > 0:
                draft.usage_count -= 1

    def _servable(self, worker_id: str, kinds: tuple[str, ...]) -> list[Draft]:
        # Different workers may hold leases on the same template at once
        # (every draft needs at least three records); the per-worker seen
        # set and the usage cap are the only serving restrictions.
        seen = self.seen.get(worker_id, set())
        return [d for d in self.drafts.values()
                if d.kind in kinds
                and d.template_id not in self.retired
                and d.template_id not in seen
                and d.usage_count < self.template_cap
                and d.template_id not in self.aggregations]

    def live_lease(self, worker_id: str, now: float) -> Lease | None:
        """The worker's unexpired lease, without mutating anything."""
        lease = self.leases.get(worker_id)
        if lease is not None and lease.expires_at > now:
            return lease
        return None

    def has_servable(self, worker_id: str, now: float) -> bool:
        """Read-only probe used by command-side precondition checks;
        accounts for leases that have expired but not yet been reaped."""
        expired = Counter(l.template_id for l in self.leases.values()
                          if l.expires_at <= now)
        seen = self.seen.get(worker_id, set())
        for d in self.drafts.values():
            if d.template_id in self.retired or d.template_id in seen \
                    or d.template_id in self.aggregations:
                continue
            if d.usage_count - expired.get(d.template_id, 0) < self.template_cap:
                return True
        return False

    def next_draft(self, worker: Worker, semi_roll: float, now: float,
                   config: PipelineConfig, bias: BiasModelState) -> Draft:
        """Serve the top-ranked unseen draft (a semi template instead when
        the roll lands under the configured share) and lease it until
        submission or timeout."""
        if worker.banned or not worker.trained:
            raise PermissionError(f"worker {worker.id} is not eligible for drafts")
        self._expire_leases(now)
        if worker.id in self.leases:
            raise OpenDraftError(
                "feedback on the current draft is mandatory before selecting another")
        choice: Draft | None = None
        if semi_roll < self.semi_probability:
            semis = self._servable(worker.id, (KIND_SEMI,))
            if semis:
                bias_scores = {d.template_id: bias_probability(bias, d.content_sentence_text())
                               for d in semis}
                choice = rank_drafts(semis, config, bias_scores)[0]
        if choice is None:
            ranked_pool = self._servable(worker.id, (KIND_FULL, KIND_HALF))
            if ranked_pool:
                bias_scores = {d.template_id: bias_probability(bias, d.content_sentence_text())
                               for d in ranked_pool}
                choice = rank_drafts(ranked_pool, config, bias_scores)[0]
            else:
                semis = self._servable(worker.id, (KIND_SEMI,))
                if semis:
                    choice = rank_drafts(semis, config)[0]
        if choice is None:
            raise QueueEmpty("no servable draft for this worker")
        choice.usage_count += 1
        self.leases[worker.id] = Lease(
            worker_id=worker.id, template_id=choice.template_id,
            granted_at=now, expires_at=now + self.lease_minutes * 60.0)
        self.seen.setdefault(worker.id, set()).add(choice.template_id)
        return choice

    # -- submission ------------------------------------------------------

    def validate_submission(self, draft: Draft, answer: str,
                            modified: Schema | None,
                            selected_answers: dict[str, str] | None) -> Schema | None:
        """Structural gate for accept-type answers: the (possibly modified)
        schema must validate, its parts must relate, and the worker must
        select answers that differ across halves.  Returns the effective
        schema for accept answers, None for reject answers.  Raises
        SubmissionInvalid with the full report."""
        if answer not in ANSWER_KINDS:
            raise ValueError(f"unknown answer kind {answer!r}")
        if (modified is not None) != (answer == ANSWER_MODIFIED_ACCEPTED):
            raise ValueError("modified schema present iff answer is modified_accepted")
        if answer not in ACCEPT_ANSWERS:
            return None

        if answer == ANSWER_ACCEPTED_AS_IS:
            if draft.kind != KIND_FULL:
                raise ValueError("only full drafts can be accepted as-is")
            schema = draft.schema
        else:
            schema = modified

        violations: list[Violation] = []
        if selected_answers is None or set(selected_answers) != {"first", "second"}:
            violations.append(Violation("MISSING_SELECTED_ANSWERS", None,
                                        "accept answers need a selection per half"))
        elif selected_answers["first"] == selected_answers["second"]:
            violations.append(Violation("SAME_ANSWER", None,
                                        "selected answers must differ across halves"))
        elif not all(a in ("A", "B") for a in selected_answers.values()):
            violations.append(Violation("BAD_ANSWER", None,
                                        "selected answers must be A or B"))
        else:
            from winofusion.schema import with_answers
            schema = with_answers(schema, selected_answers["first"],
                                  selected_answers["second"])

        report = validate_schema(schema)
        violations.extend(report.violations)
        for name, half in (("first", schema.first), ("second", schema.second)):
            for label, target in (("target_a", half.target_a), ("target_b", half.target_b)):
                related, _ = relatedness(half.sentence_text(), target)
                if not related:
                    violations.append(Violation("UNRELATED_PARTS", name,
                                                f"{label} shares no content word with the sentence"))
        if violations:
            raise SubmissionInvalid(ValidationReport(tuple(violations)))
        return schema

    def submit_qualification(self, worker: Worker, template_id: int, answer: str,
                             modified: Schema | None,
                             selected_answers: dict[str, str] | None,
                             now: float) -> QualificationRecord:
        self._expire_leases(now)
        lease = self.leases.get(worker.id)
        if lease is None or lease.template_id != template_id:
            raise LeaseError(f"worker {worker.id} holds no live lease on template {template_id}")
        draft = self.drafts[template_id]
        schema = self.validate_submission(draft, answer, modified, selected_answers)
        record = QualificationRecord(
            record_id=self.next_record_id, worker_id=worker.id,
            draft_id=template_id, answer=answer,
            modified=schema if answer == ANSWER_MODIFIED_ACCEPTED else None,
            selected_answers=selected_answers if answer in ACCEPT_ANSWERS else None,
            started_at=lease.granted_at, submitted_at=now)
        self.next_record_id += 1
        self.records.setdefault(template_id, []).append(record)
        del self.leases[worker.id]
        worker.response_times.append(now - lease.granted_at)
        return record

    # -- aggregation and review -------------------------------------------

    def aggregate_pending(self, now: float) -> list[AggregationResult]:
        """Crowd verdicts for every draft with enough records and no
        verdict yet; crowd-rejected drafts leave the proposed list."""
        results = []
        for template_id in sorted(self.records):
            if template_id in self.aggregations:
                continue
            records = self.records[template_id]
            if len(records) < self.min_records:
                continue
            verdict = crowd_verdict(records)
            result = AggregationResult(
                draft_id=template_id,
                record_ids=[r.record_id for r in records],
                crowd_verdict=verdict)
            self.aggregations[template_id] = result
            if verdict == VERDICT_REJECTED:
                self.retired.add(template_id)
            results.append(result)
        return results

    def supervisor_review(self, supervisor: Worker, draft_id: int,
                          verdict: str) -> AggregationResult:
        if supervisor.role not in (ROLE_SUPERVISOR, "admin"):
            raise PermissionError(f"{supervisor.id} is not a supervisor")
        if verdict not in SUPERVISOR_VERDICTS:
            raise ValueError(f"unknown supervisor verdict {verdict!r}")
        result = self.aggregations.get(draft_id)
        if result is None or result.crowd_verdict != VERDICT_PROVISIONAL:
            raise ValueError(f"draft {draft_id} has no provisional_valid aggregation")
        if result.supervisor_verdict is not None:
            raise ValueError(f"draft {draft_id} already reviewed")
        result.supervisor_verdict = verdict
        if verdict == "valid_pending":
            # Template stays eligible: the reviewed batch of records is
            # consumed and a fresh batch may aggregate later.
            del self.aggregations[draft_id]
            self.records[draft_id] = []
        else:
            # valid_finished retires the template (exported); rejected
            # removes it from the proposed list outright.
            self.retired.add(draft_id)
        return result

    def export_schema_for(self, draft_id: int) -> Schema | None:
        """The schema a valid_finished verdict exports: the most recent
        accept-type record's version (modified beats original)."""
        for record in reversed(self.records.get(draft_id, [])):
            if record.is_accept():
                if record.modified is not None:
                    return record.modified
                draft = self.drafts[draft_id]
                schema = draft.schema
                if schema is not None and record.selected_answers:
                    from winofusion.schema import with_answers
                    return with_answers(schema, record.selected_answers["first"],
                                        record.selected_answers["second"])
                return schema
        return None

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "drafts": [draft_to_dict(d) for d in sorted(self.drafts.values(),
                                                        key=lambda d: d.template_id)],
            "leases": {w: l.to_dict() for w, l in sorted(self.leases.items())},
            "seen": {w: sorted(s) for w, s in sorted(self.seen.items())},
            "records": {str(t): [r.to_dict() for r in rs]
                        for t, rs in sorted(self.records.items())},
            "aggregations": {str(t): a.to_dict()
                             for t, a in sorted(self.aggregations.items())},
            "retired": sorted(self.retired),
            "next_record_id": self.next_record_id,
            "lease_minutes": self.lease_minutes,
            "template_cap": self.template_cap,
            "semi_probability": self.semi_probability,
            "min_records": self.min_records,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "CollaborationState":
        state = cls(lease_minutes=obj["lease_minutes"],
                    template_cap=obj["template_cap"],
                    semi_probability=obj["semi_probability"],
                    min_records=obj["min_records"])
        state.add_drafts([draft_from_dict(d) for d in obj["drafts"]])
        state.leases = {w: Lease(**l) for w, l in obj["leases"].items()}
        state.seen = {w: set(s) for w, s in obj["seen"].items()}
        state.records = {int(t): [QualificationRecord.from_dict(r) for r in rs]
                         for t, rs in obj["records"].items()}
        state.aggregations = {int(t): AggregationResult.from_dict(a)
                              for t, a in obj["aggregations"].items()}
        state.retired = set(obj["retired"])
        state.next_record_id = obj["next_record_id"]
        return state


def banner_state(ledger: BonusLedger, comments: list[Comment]) -> dict:
    """Read-only snapshot for the workbench banners: bonus totals plus the
    latest 50 comments."""
    latest = sorted(comments, key=lambda c: (c.created_at, c.id), reverse=True)[:50]
    return {
        "bonus": {
            "total_awarded": ledger.total_awarded,
            "per_worker": dict(ledger.per_worker),
            "recent": [{"worker_id": w, "amount": a, "time": t}
                       for w, a, t in ledger.recent[-10:]],
        },
        "comments": [c.to_dict() for c in latest],
    }
