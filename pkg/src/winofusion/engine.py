"""Event-sourced service core.

Every mutating command runs through exactly one handler that (a) performs
read-only precondition checks, raising domain errors without touching
state, and (b) applies its mutations deterministically from the event
payload.  Live commands pre-draw any randomness into the payload, so
replaying the log never consumes the RNG and reproduces the state
field-for-field.  Snapshots are written every `snapshot.every` events.
"""

from __future__ import annotations

import logging
import random
import threading
import zlib
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable

from winofusion import adaptivity as adapt_mod
from winofusion import collaboration as collab_mod
from winofusion import quality
from winofusion.collaboration import (
    BiasModelState,
    BonusLedger,
    CollaborationState,
    Comment,
    banner_state,
    bias_label_for,
    bias_probability,
    bias_update,
    promote_check,
)
from winofusion.config import Config
from winofusion.events import EventStore, RestoreReport
from winofusion.pipeline import (
    KIND_FULL,
    PipelineConfig,
    build_drafts,
    ingest_corpus,
)
from winofusion.quality import (
    ROLE_ADMIN,
    ROLE_SUPERVISOR,
    TestQuestion,
    Worker,
    apply_score_event,
    default_training_pool,
    grade_test_answer,
    grade_training_item,
    maybe_test_question,
    start_training,
)
from winofusion.schema import Schema, decode_schema, encode_schema

logger = logging.getLogger(__name__)

WEEKDAY_NAMES = ("Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun")


class AuthError(Exception):
    """Bad credentials, bad session, or insufficient role."""


class UnknownWorkerError(Exception):
    pass


class PendingQuestionError(Exception):
    """The login test question must be answered before drafts are served."""


class DrawSource:
    """Counted uniform-float source.  All platform randomness flows through
    random() so a restored instance can fast-forward to the live state."""

    def __init__(self, seed: int, draws: int = 0):
        self._rng = random.Random(seed)
        self.draws = 0
        for _ in range(draws):
            self.random()

    def random(self) -> float:
        self.draws += 1
        return self._rng.random()


@dataclass
class Session:
    token: str
    worker_id: str
    created_at: float
    pending_test_question: TestQuestion | None = None

    def to_dict(self) -> dict:
        return {"token": self.token, "worker_id": self.worker_id,
                "created_at": self.created_at,
                "pending_test_question": (self.pending_test_question.to_dict()
                                          if self.pending_test_question else None)}

    @classmethod
    def from_dict(cls, obj: dict) -> "Session":
        question = obj["pending_test_question"]
        return cls(token=obj["token"], worker_id=obj["worker_id"],
                   created_at=obj["created_at"],
                   pending_test_question=(TestQuestion.from_dict(question)
                                          if question else None))


def _utc(now: float) -> datetime:
    return datetime.fromtimestamp(now, tz=timezone.utc)


def date_string(now: float) -> str:
    return _utc(now).strftime("%Y-%m-%d")


def weekday_name(now: float) -> str:
    return WEEKDAY_NAMES[_utc(now).weekday()]


class Platform:
    """The collaboration service: workers, sessions, queue, verdicts,
    banners, bias votes, and the generator feedback loop, all behind one
    single-writer lock."""

    def __init__(self, config: Config | None = None,
                 storage_dir: str | Path | None = None,
                 clock: Callable[[], float] | None = None):
        self.config = config or Config()
        self.clock = clock or (lambda: datetime.now(tz=timezone.utc).timestamp())
        self.store = EventStore(storage_dir)
        self.lock = threading.RLock()
        self.rng = DrawSource(self.config.rng_seed)
        self.training_pool = default_training_pool()
        self.validated_pool = quality.load_validated_schemas()
        self.restore_report: RestoreReport | None = None

        # -- event-sourced state ------------------------------------------
        self.workers: dict[str, Worker] = {}
        self.sessions: dict[str, Session] = {}
        self.collab = CollaborationState(
            lease_minutes=self.config.queue_lease_minutes,
            template_cap=self.config.template_cap,
            semi_probability=self.config.queue_semi_probability)
        self.bias = BiasModelState()
        self.adapt = adapt_mod.AdaptivityState(
            current_config=self._pipeline_config(),
            mitkov_top_quartile=self.config.adaptivity_mitkov_top_quartile,
            min_length_samples=self.config.adaptivity_min_length_samples)
        self.ledger = BonusLedger()
        self.comments: list[Comment] = []
        self.next_template_id = 1
        self.next_session_seq = 1
        self.next_comment_id = 1
        self.next_question_seq = 1
        self.rng_draws_total = 0
        self.scheduler_runs: set[str] = set()
        self.training_attempts: dict[str, int] = {}
        self.approval_votes: list[dict] = []
        self.worker_hardness: dict[str, list[dict]] = {}
        self.finished: list[str] = []  # all exported records, in order
        self.pending_exports: list[str] = []
        self.exported_runs: list[dict] = []  # {date, lines} per aggregation run

        self._handlers = {
            "worker_provisioned": self._apply_worker_provisioned,
            "login": self._apply_login,
            "test_answered": self._apply_test_answered,
            "training_started": self._apply_training_started,
            "training_answered": self._apply_training_answered,
            "draft_leased": self._apply_draft_leased,
            "qualification_submitted": self._apply_qualification_submitted,
            "aggregated": self._apply_aggregated,
            "reviewed": self._apply_reviewed,
            "bonus_granted": self._apply_bonus_granted,
            "comment_posted": self._apply_comment_posted,
            "corpus_loaded": self._apply_corpus_loaded,
            "bias_voted": self._apply_bias_voted,
        }

    # ------------------------------------------------------------------
    # Infrastructure
    # ------------------------------------------------------------------

    def _pipeline_config(self) -> PipelineConfig:
        return PipelineConfig(
            sentence_length_max=self.config.pipeline_sentence_length_max,
            factor_weights={"agreement": self.config.pipeline_w_agreement,
                            "triples": self.config.pipeline_w_triples,
                            "mitkov": self.config.pipeline_w_mitkov})

    def _commit(self, kind: str, payload: dict, result=None):
        """Append the event after its handler succeeded, then snapshot on
        the configured cadence."""
        record = self.store.append(kind, payload, payload.get("time", self.clock()))
        if record.sequence % self.config.snapshot_every == 0:
            self.store.write_snapshot(record.sequence, self.state_dict())
        return result

    def _run(self, kind: str, payload: dict):
        """Single code path for live execution and replay: the handler
        both checks preconditions and mutates."""
        with self.lock:
            result = self._handlers[kind](payload)
            return self._commit(kind, payload, result)

    def state_dict(self) -> dict:
        """Canonical serialization of the full event-sourced state."""
        return {
            "workers": {w: self.workers[w].to_dict() for w in sorted(self.workers)},
            "sessions": {t: self.sessions[t].to_dict() for t in sorted(self.sessions)},
            "collab": self.collab.to_dict(),
            "bias": self.bias.to_dict(),
            "adaptivity": self.adapt.to_dict(),
            "ledger": self.ledger.to_dict(),
            "comments": [c.to_dict() for c in self.comments],
            "next_template_id": self.next_template_id,
            "next_session_seq": self.next_session_seq,
            "next_comment_id": self.next_comment_id,
            "next_question_seq": self.next_question_seq,
            "rng_draws_total": self.rng_draws_total,
            "scheduler_runs": sorted(self.scheduler_runs),
            "training_attempts": dict(sorted(self.training_attempts.items())),
            "approval_votes": list(self.approval_votes),
            "worker_hardness": {w: list(v) for w, v in sorted(self.worker_hardness.items())},
            "finished": list(self.finished),
            "pending_exports": list(self.pending_exports),
            "exported_runs": list(self.exported_runs),
        }

    def _load_state(self, state: dict) -> None:
        self.workers = {w: Worker.from_dict(d) for w, d in state["workers"].items()}
        self.sessions = {t: Session.from_dict(d) for t, d in state["sessions"].items()}
        self.collab = CollaborationState.from_dict(state["collab"])
        self.bias = BiasModelState.from_dict(state["bias"])
        self.adapt = adapt_mod.AdaptivityState.from_dict(state["adaptivity"])
        self.ledger = BonusLedger.from_dict(state["ledger"])
        self.comments = [Comment(**c) for c in state["comments"]]
        self.next_template_id = state["next_template_id"]
        self.next_session_seq = state["next_session_seq"]
        self.next_comment_id = state["next_comment_id"]
        self.next_question_seq = state["next_question_seq"]
        self.rng_draws_total = state["rng_draws_total"]
        self.scheduler_runs = set(state["scheduler_runs"])
        self.training_attempts = dict(state["training_attempts"])
        self.approval_votes = list(state["approval_votes"])
        self.worker_hardness = {w: list(v) for w, v in state["worker_hardness"].items()}
        self.finished = list(state["finished"])
        self.pending_exports = list(state["pending_exports"])
        self.exported_runs = list(state["exported_runs"])

    @classmethod
    def restore(cls, storage_dir: str | Path, config: Config | None = None,
                clock: Callable[[], float] | None = None) -> "Platform":
        """Rebuild a platform from its snapshot plus event-log tail; a
        corrupt log stops at the last valid event (see restore_report)."""
        platform = cls(config=config, clock=clock)
        platform.store = EventStore(storage_dir)
        snapshot = platform.store.latest_snapshot()
        after = 0
        if snapshot is not None:
            after, state = snapshot
            platform._load_state(state)
        events, report = platform.store.read_events(after_sequence=after)
        for event in events:
            platform._handlers[event.kind](event.payload)
        platform.restore_report = report
        platform.rng = DrawSource(platform.config.rng_seed,
                                  draws=platform.rng_draws_total)
        return platform

    # ------------------------------------------------------------------
    # Session helpers
    # ------------------------------------------------------------------

    def _session(self, token: str) -> Session:
        session = self.sessions.get(token)
        if session is None:
            raise AuthError("unknown session token")
        return session

    def _worker_for(self, token: str) -> tuple[Session, Worker]:
        session = self._session(token)
        return session, self.workers[session.worker_id]

    def _unvalidated_pool(self) -> list[Schema]:
        return [d.schema for d in sorted(self.collab.drafts.values(),
                                         key=lambda d: d.template_id)
                if d.kind == KIND_FULL and d.template_id not in self.collab.retired]

    def _after_score_change(self, worker: Worker) -> None:
        worker.role = promote_check(worker, self.config.promote_score,
                                    self.config.promote_valid_min)

    def _score(self, worker: Worker, event: str, amount: int = 0) -> None:
        if worker.banned:
            return  # absorbing: no further events accepted
        apply_score_event(worker, event, amount=amount,
                          deltas=self.config.score_deltas(),
                          ban_threshold=self.config.ban_threshold)
        self._after_score_change(worker)

    # ------------------------------------------------------------------
    # Commands (public API) and their handlers
    # ------------------------------------------------------------------

    def provision_worker(self, worker_id: str, role: str = "qualificator",
                         auth_key: str = "", trained: bool = False) -> dict:
        with self.lock:
            if worker_id in self.workers:
                raise ValueError(f"worker {worker_id} already exists")
            payload = {"worker_id": worker_id, "role": role, "auth_key": auth_key,
                       "trained": trained, "time": self.clock()}
        return self._run("worker_provisioned", payload)

    def _apply_worker_provisioned(self, p: dict) -> dict:
        worker = Worker(id=p["worker_id"], role=p["role"], auth_key=p["auth_key"],
                        training="completed" if p["trained"] else None)
        self.workers[worker.id] = worker
        return {"worker_id": worker.id, "role": worker.role}

    def login(self, worker_id: str, auth_key: str) -> dict:
        with self.lock:
            worker = self.workers.get(worker_id)
            if worker is None:
                raise UnknownWorkerError(f"unknown worker {worker_id!r}")
            if worker.banned:
                raise AuthError(f"worker {worker_id} is banned")
            if worker.auth_key != auth_key:
                raise AuthError("bad credentials")
            question = None
            before = self.rng.draws
            if worker.trained:
                question = maybe_test_question(
                    self.rng, self.validated_pool, self._unvalidated_pool(),
                    probability=self.config.test_question_probability,
                    validated_share=self.config.test_question_validated_share,
                    question_id=f"q{self.next_question_seq}")
            payload = {"worker_id": worker_id,
                       "token": f"s{self.next_session_seq}",
                       "time": self.clock(),
                       "draws": self.rng.draws - before,
                       "question": question.to_dict() if question else None}
            return self._run("login", payload)

    def _apply_login(self, p: dict) -> dict:
        question = TestQuestion.from_dict(p["question"]) if p["question"] else None
        session = Session(token=p["token"], worker_id=p["worker_id"],
                          created_at=p["time"], pending_test_question=question)
        self.sessions[session.token] = session
        self.next_session_seq += 1
        if question is not None:
            self.next_question_seq += 1
        self.rng_draws_total += p["draws"]
        worker = self.workers[p["worker_id"]]
        return {"token": session.token, "worker_id": worker.id,
                "role": worker.role, "trained": worker.trained,
                "test_question": _question_view(question)}

    def answer_test_question(self, token: str, answer: str) -> dict:
        with self.lock:
            session = self._session(token)
            question = session.pending_test_question
            if question is None:
                raise ValueError("no pending test question on this session")
            graded = grade_test_answer(question, answer)
            outcome = "signal" if graded is None else ("correct" if graded else "wrong")
            payload = {"token": token, "worker_id": session.worker_id,
                       "answer": answer, "outcome": outcome,
                       "question_id": question.question_id, "time": self.clock()}
            return self._run("test_answered", payload)

    def _apply_test_answered(self, p: dict) -> dict:
        session = self.sessions[p["token"]]
        session.pending_test_question = None
        worker = self.workers[p["worker_id"]]
        if p["outcome"] == "correct":
            self._score(worker, "test_correct")
        elif p["outcome"] == "wrong":
            self._score(worker, "test_wrong")
        else:
            self.approval_votes.append({"worker_id": p["worker_id"],
                                        "question_id": p["question_id"],
                                        "answer": p["answer"]})
        return {"outcome": p["outcome"], "score": worker.score,
                "banned": worker.banned}

    def start_worker_training(self, token: str) -> dict:
        with self.lock:
            session, worker = self._worker_for(token)
            if worker.banned:
                raise AuthError(f"worker {worker.id} is banned")
            if worker.trained:
                raise ValueError("training already completed")
            attempt = self.training_attempts.get(worker.id, 0)
            seed = zlib.crc32(
                f"{self.config.rng_seed}:{worker.id}:{attempt}".encode())
            payload = {"worker_id": worker.id, "seed": seed,
                       "valid": worker.valid_count, "invalid": worker.invalid_count,
                       "time": self.clock()}
            return self._run("training_started", payload)

    def _apply_training_started(self, p: dict) -> dict:
        worker = self.workers[p["worker_id"]]
        worker.training = None  # discard any failed session
        session = start_training(worker, p["valid"], p["invalid"],
                                 self.training_pool,
                                 base=self.config.training_base, seed=p["seed"])
        self.training_attempts[worker.id] = self.training_attempts.get(worker.id, 0) + 1
        return _training_view(session)

    def answer_training_item(self, token: str, item_index: int,
                             answer: str | list[str]) -> dict:
        with self.lock:
            session, worker = self._worker_for(token)
            training = worker.training
            if not isinstance(training, quality.TrainingSession):
                raise ValueError("no training session in progress")
            if training.failed:
                raise ValueError("session failed; start a fresh one")
            if not 0 <= item_index < len(training.items):
                raise IndexError(f"item index {item_index} out of range")
            if training.items[item_index].graded:
                raise ValueError(f"item {item_index} already graded")
            payload = {"worker_id": worker.id, "item_index": item_index,
                       "answer": answer if isinstance(answer, str) else sorted(answer),
                       "time": self.clock()}
            return self._run("training_answered", payload)

    def _apply_training_answered(self, p: dict) -> dict:
        worker = self.workers[p["worker_id"]]
        answer = p["answer"]
        if isinstance(answer, list):
            answer = set(answer)
        session = grade_training_item(worker.training, p["item_index"], answer)
        if session.passed:
            worker.training = "completed"
        return {"passed": session.passed, "failed": session.failed,
                "completed_items": session.completed_items,
                "required_items": session.required_items}

    def next_draft(self, token: str) -> dict:
        with self.lock:
            session, worker = self._worker_for(token)
            if session.pending_test_question is not None:
                raise PendingQuestionError(
                    "answer the pending test question before requesting drafts")
            # All refusals happen before the RNG draw, so a refused request
            # leaves both the state and the draw counter untouched.
            if worker.banned or not worker.trained:
                raise PermissionError(f"worker {worker.id} is not eligible for drafts")
            now = self.clock()
            if self.collab.live_lease(worker.id, now) is not None:
                raise collab_mod.OpenDraftError(
                    "feedback on the current draft is mandatory before selecting another")
            if not self.collab.has_servable(worker.id, now):
                raise collab_mod.QueueEmpty("no servable draft for this worker")
            payload = {"worker_id": worker.id, "roll": self.rng.random(),
                       "time": now}
            return self._run("draft_leased", payload)

    def _apply_draft_leased(self, p: dict) -> dict:
        worker = self.workers[p["worker_id"]]
        draft = self.collab.next_draft(worker, p["roll"], p["time"],
                                       self.adapt.current_config, self.bias)
        self.rng_draws_total += 1
        draft.bias_label = bias_label_for(self.bias, draft.template_id)
        return _draft_view(draft)

    def submit_qualification(self, token: str, template_id: int, answer: str,
                             modified_record: str | dict | None = None,
                             selected_answers: dict[str, str] | None = None) -> dict:
        with self.lock:
            session, worker = self._worker_for(token)
            modified = None
            if modified_record is not None:
                if isinstance(modified_record, dict):
                    import json as _json
                    modified_record = _json.dumps(modified_record)
                modified = decode_schema(modified_record)
                from dataclasses import replace as _replace
                modified = _replace(modified, origin="crowd_modified")
            payload = {"worker_id": worker.id, "template_id": template_id,
                       "answer": answer,
                       "modified": encode_schema(modified) if modified else None,
                       "selected_answers": selected_answers,
                       "time": self.clock()}
            return self._run("qualification_submitted", payload)

    def _apply_qualification_submitted(self, p: dict) -> dict:
        worker = self.workers[p["worker_id"]]
        modified = decode_schema(p["modified"]) if p["modified"] else None
        record = self.collab.submit_qualification(
            worker, p["template_id"], p["answer"], modified,
            p["selected_answers"], p["time"])
        draft = self.collab.drafts[p["template_id"]]
        draft.usage_count = self._usage(p["template_id"], p["time"])
        response = {"record_id": record.record_id, "answer": record.answer,
                    "template_id": record.draft_id}
        if record.is_accept():
            self._score(worker, "valid_schema")
            schema = self.collab.export_schema_for(p["template_id"]) \
                if record.modified is None else record.modified
            if schema is not None:
                try:
                    report = quality.hardness(schema, self.config.hardness_weights)
                    self.worker_hardness.setdefault(worker.id, []).append(
                        {"score": report.score, "label": report.label})
                    response["hardness"] = {"score": report.score,
                                            "label": report.label}
                except ValueError:
                    pass
            if record.modified is not None:
                original = draft.schema or draft.half or draft.sentence
                analysis = collab_mod.analysis_report(original, record.modified)
                response["analysis"] = _analysis_view(analysis)
        response["score"] = worker.score
        return response

    def _usage(self, template_id: int, now: float) -> int:
        records = len(self.collab.records.get(template_id, ()))
        live = sum(1 for l in self.collab.leases.values()
                   if l.template_id == template_id and l.expires_at > now)
        return records + live

    def run_aggregation(self, now: float | None = None, scheduled: bool = False) -> dict:
        with self.lock:
            time = self.clock() if now is None else now
            payload = {"time": time, "date": date_string(time),
                       "scheduled": scheduled}
            result = self._run("aggregated", payload)
        self._write_export_file(result)
        return result

    def _apply_aggregated(self, p: dict) -> dict:
        lines = list(self.pending_exports)
        self.pending_exports = []
        run = {"date": p["date"], "lines": lines}
        self.exported_runs.append(run)
        results = self.collab.aggregate_pending(p["time"])
        for result in results:
            if result.crowd_verdict == collab_mod.VERDICT_REJECTED:
                draft = self.collab.drafts[result.draft_id]
                adapt_mod.record_outcome(self.adapt, draft, "rejected")
        if p["scheduled"]:
            self.scheduler_runs.add(p["date"])
        adapt_mod.export_pipeline_config(self.adapt)
        return {"date": p["date"],
                "results": [r.to_dict() for r in results],
                "exported": len(lines)}

    def _write_export_file(self, result: dict) -> None:
        if self.store.directory is None or not self.exported_runs:
            return
        run = self.exported_runs[-1]
        if not run["lines"]:
            return
        export_dir = self.store.directory / "exports"
        export_dir.mkdir(parents=True, exist_ok=True)
        path = export_dir / f"schemas-{run['date']}.jsonl"
        path.write_text("".join(line + "\n" for line in run["lines"]),
                        encoding="utf-8")

    def review(self, token: str, draft_id: int, verdict: str) -> dict:
        with self.lock:
            session, worker = self._worker_for(token)
            if worker.role not in (ROLE_SUPERVISOR, ROLE_ADMIN):
                raise AuthError(f"{worker.id} is not a supervisor")
            payload = {"supervisor_id": worker.id, "draft_id": draft_id,
                       "verdict": verdict, "time": self.clock()}
            return self._run("reviewed", payload)

    def _apply_reviewed(self, p: dict) -> dict:
        supervisor = self.workers[p["supervisor_id"]]
        draft_id = p["draft_id"]
        exported_schema = None
        if p["verdict"] == "valid_finished":
            exported_schema = self.collab.export_schema_for(draft_id)
        accept_workers = [r.worker_id for r in self.collab.records.get(draft_id, [])
                          if r.is_accept()]
        result = self.collab.supervisor_review(supervisor, draft_id, p["verdict"])
        if p["verdict"] == "rejected":
            for worker_id in accept_workers:
                self._score(self.workers[worker_id], "invalid_schema")
        if exported_schema is not None:
            line = encode_schema(exported_schema)
            self.finished.append(line)
            self.pending_exports.append(line)
        draft = self.collab.drafts[draft_id]
        adapt_mod.record_outcome(self.adapt, draft, p["verdict"])
        return {"draft_id": draft_id, "verdict": p["verdict"],
                "exported": exported_schema is not None}

    def grant_bonus(self, token: str, worker_id: str, amount: int) -> dict:
        with self.lock:
            session, admin = self._worker_for(token)
            if admin.role != ROLE_ADMIN:
                raise AuthError("bonus grants require the admin role")
            if worker_id not in self.workers:
                raise UnknownWorkerError(f"unknown worker {worker_id!r}")
            payload = {"worker_id": worker_id, "amount": int(amount),
                       "time": self.clock()}
            return self._run("bonus_granted", payload)

    def _apply_bonus_granted(self, p: dict) -> dict:
        worker = self.workers[p["worker_id"]]
        self.ledger.award(p["worker_id"], p["amount"], p["time"])
        self._score(worker, "bonus", amount=p["amount"])
        return {"worker_id": p["worker_id"], "amount": p["amount"],
                "total_awarded": self.ledger.total_awarded}

    def post_comment(self, token: str, text: str) -> dict:
        with self.lock:
            session, worker = self._worker_for(token)
            if len(text) > 1000:
                raise ValueError("comment longer than 1,000 characters")
            payload = {"worker_id": worker.id, "text": text, "time": self.clock()}
            return self._run("comment_posted", payload)

    def _apply_comment_posted(self, p: dict) -> dict:
        comment = Comment(id=self.next_comment_id, worker_id=p["worker_id"],
                          text=p["text"], created_at=p["time"])
        self.next_comment_id += 1
        self.comments.append(comment)
        return comment.to_dict()

    def load_corpus(self, text: str, token: str | None = None) -> dict:
        with self.lock:
            if token is not None:
                session, worker = self._worker_for(token)
                if worker.role != ROLE_ADMIN:
                    raise AuthError("corpus loads require the admin role")
            payload = {"text": text, "time": self.clock()}
            return self._run("corpus_loaded", payload)

    def _apply_corpus_loaded(self, p: dict) -> dict:
        skipped: list[tuple[str, str]] = []
        sentences = ingest_corpus(p["text"], self.adapt.current_config,
                                  skipped=skipped)
        drafts = build_drafts(sentences, self.adapt.current_config,
                              start_id=self.next_template_id)
        self.next_template_id += len(drafts)
        self.collab.add_drafts(drafts)
        kinds: dict[str, int] = {}
        for d in drafts:
            kinds[d.kind] = kinds.get(d.kind, 0) + 1
        return {"sentences": len(sentences), "drafts": len(drafts),
                "kinds": kinds, "skipped": [list(s) for s in skipped]}

    def vote_bias(self, token: str, template_id: int, label: str) -> dict:
        with self.lock:
            session, worker = self._worker_for(token)
            if template_id not in self.collab.drafts:
                raise KeyError(f"unknown template {template_id}")
            payload = {"worker_id": worker.id, "template_id": template_id,
                       "label": label, "time": self.clock()}
            return self._run("bias_voted", payload)

    def _apply_bias_voted(self, p: dict) -> dict:
        draft = self.collab.drafts[p["template_id"]]
        bias_update(self.bias, p["worker_id"], p["template_id"], p["label"],
                    draft.content_sentence_text())
        draft.bias_label = bias_label_for(self.bias, p["template_id"])
        return {"template_id": p["template_id"], "bias_label": draft.bias_label,
                "unbiased_probability": bias_probability(
                    self.bias, draft.content_sentence_text())}

    # ------------------------------------------------------------------
    # Read-only queries
    # ------------------------------------------------------------------

    def worker_stats(self, token: str) -> dict:
        with self.lock:
            session, worker = self._worker_for(token)
            times = worker.response_times
            history = [quality.HardnessReport(score=h["score"], label=h["label"],
                                              features={})
                       for h in self.worker_hardness.get(worker.id, [])]
            prompt = quality.hardness_prompt(history)
            return {"worker_id": worker.id, "role": worker.role,
                    "score": worker.score, "banned": worker.banned,
                    "valid_count": worker.valid_count,
                    "invalid_count": worker.invalid_count,
                    "bonuses_awarded": worker.bonuses_awarded,
                    "mean_response_seconds": (sum(times) / len(times)) if times else None,
                    "accepted_schemas": len(history),
                    "hardness_prompt": prompt}

    def banners(self, token: str) -> dict:
        with self.lock:
            self._session(token)
            return banner_state(self.ledger, self.comments)

    def pending_reviews(self, token: str) -> list[dict]:
        with self.lock:
            session, worker = self._worker_for(token)
            if worker.role not in (ROLE_SUPERVISOR, ROLE_ADMIN):
                raise AuthError(f"{worker.id} is not a supervisor")
            out = []
            for draft_id in sorted(self.collab.aggregations):
                result = self.collab.aggregations[draft_id]
                if result.crowd_verdict != collab_mod.VERDICT_PROVISIONAL \
                        or result.supervisor_verdict is not None:
                    continue
                records = self.collab.records.get(draft_id, [])
                out.append({
                    "draft_id": draft_id,
                    "crowd_verdict": result.crowd_verdict,
                    "records": [self._record_view(r) for r in records],
                })
            return out

    def _record_view(self, record) -> dict:
        view = record.to_dict()
        if record.modified is not None:
            draft = self.collab.drafts[record.draft_id]
            original = draft.schema or draft.half or draft.sentence
            analysis = collab_mod.analysis_report(original, record.modified)
            view["analysis"] = _analysis_view(analysis)
        return view

    def adaptivity_snapshot(self) -> dict:
        with self.lock:
            return self.adapt.to_dict()

    def export_finished(self, out_dir: str | Path) -> Path:
        """Write every valid_finished schema collected so far."""
        with self.lock:
            out = Path(out_dir)
            out.mkdir(parents=True, exist_ok=True)
            path = out / f"schemas-{date_string(self.clock())}.jsonl"
            path.write_text("".join(line + "\n" for line in self.finished),
                            encoding="utf-8")
            return path

    def run_scheduler(self, now: float | None = None) -> list[str]:
        """Aggregation once per configured weekday; idempotent per day."""
        with self.lock:
            time = self.clock() if now is None else now
            day = weekday_name(time)
            date = date_string(time)
            if day not in self.config.schedule_aggregation_days:
                return []
            if date in self.scheduler_runs:
                return []
        self.run_aggregation(now=time, scheduled=True)
        return [f"aggregate:{date}"]


# ---------------------------------------------------------------------------
# View helpers (plain dicts for the JSON layer)
# ---------------------------------------------------------------------------

def _question_view(question: TestQuestion | None) -> dict | None:
    if question is None:
        return None
    half = question.schema.first
    view = {"question_id": question.question_id, "source": question.source,
            "sentence": half.sentence_text(), "question": half.question,
            "target_a": half.target_a, "target_b": half.target_b}
    view["answer_kind"] = ("resolve" if question.source == "validated_set"
                           else "approval")
    return view


def _training_view(session: quality.TrainingSession) -> dict:
    items = []
    for item in session.items:
        half = item.schema.first
        view = {"kind": item.kind, "sentence": half.sentence_text(),
                "question": half.question, "target_a": half.target_a,
                "target_b": half.target_b, "graded": item.graded}
        if item.kind == "validate":
            view["second_sentence"] = item.schema.second.sentence_text()
            view["defect_options"] = list(quality.DEFECT_CODES)
        items.append(view)
    return {"required_items": session.required_items,
            "completed_items": session.completed_items,
            "passed": session.passed, "failed": session.failed,
            "items": items}


def _half_view(half) -> dict:
    from winofusion.schema import encode_half
    return encode_half(half)


def _draft_view(draft) -> dict:
    view = {"template_id": draft.template_id, "kind": draft.kind,
            "subject_tag": draft.subject_tag, "usage_count": draft.usage_count,
            "bias_label": draft.bias_label}
    if draft.kind == KIND_FULL:
        view["first"] = _half_view(draft.schema.first)
        view["second"] = _half_view(draft.schema.second)
    elif draft.half is not None:
        view["first"] = _half_view(draft.half)
    else:
        view["sentence"] = draft.sentence.text()
    return view


def _analysis_view(analysis) -> dict:
    return {
        "changed_token_count": analysis.edit.changed_token_count,
        "operations": [{"kind": op.kind, "position": op.position,
                        "tokens": list(op.tokens)} for op in analysis.edit.operations],
        "pos_histogram_delta": dict(analysis.edit.pos_histogram_delta),
        "type_token_ratio": analysis.type_token_ratio,
        "grammar_flags": list(analysis.grammar_flags),
        "nudges": list(analysis.nudges),
    }
