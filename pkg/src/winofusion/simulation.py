"""Scripted-crowd harness: drives a full qualification campaign through
the JSON API (any TestClient-compatible client works) and checks the
system invariants as it goes.

The crowd is deterministic: workers accept full drafts as served, repair
half drafts into full schemas, reject semi templates, and sprinkle in
bias votes and comments.  Supervisors finalize after aggregation runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from winofusion.engine import Platform
from winofusion.lexical import substitution_lexicon

QUALIFICATOR_COUNT = 9
SUPERVISOR_COUNT = 2


class InvariantViolation(AssertionError):
    pass


@dataclass
class SimulationReport:
    valid_finished: int = 0
    submissions: int = 0
    drafts_served: int = 0
    aggregation_runs: int = 0
    reviews: int = 0
    test_questions_answered: int = 0
    violations: list[str] = field(default_factory=list)
    export_lines: list[str] = field(default_factory=list)


class _Api:
    """Tiny wrapper translating client responses into dicts/errors."""

    def __init__(self, client):
        self.client = client

    def post(self, path: str, body: dict | None = None, token: str | None = None,
             expect_error: bool = False) -> dict:
        headers = {"Authorization": f"Bearer {token}"} if token else {}
        response = self.client.post(path, json=body or {}, headers=headers)
        if not expect_error and response.status_code >= 400:
            raise RuntimeError(f"POST {path} -> {response.status_code}: "
                               f"{response.json()}")
        return response.json()

    def get(self, path: str, token: str | None = None) -> dict:
        headers = {"Authorization": f"Bearer {token}"} if token else {}
        response = self.client.get(path, headers=headers)
        if response.status_code >= 400:
            raise RuntimeError(f"GET {path} -> {response.status_code}: "
                               f"{response.json()}")
        return response.json()


def _repair_half(draft: dict) -> dict | None:
    """Turn a served half into a full schema record by substituting its
    special word with a table alternative (what a careful worker would do
    in the form)."""
    first = draft.get("first")
    if first is None:
        return None
    words = first["sentence"].split()
    span = first["special_word"]
    special = " ".join(words[span["start"]:span["end"]]).lower()
    table = substitution_lexicon()
    replacement = None
    for candidate in ("rested", "cheerful", "anxious", "calm"):
        if special != candidate:
            replacement = candidate
            break
    if special in table:
        replacement = table[special][0]
    new_words = words[:span["start"]] + replacement.split() + words[span["end"]:]
    second = dict(first)
    second["sentence"] = " ".join(new_words)
    second["special_word"] = {"start": span["start"],
                              "end": span["start"] + len(replacement.split())}
    second["question"] = first["question"].replace(
        " ".join(words[span["start"]:span["end"]]), replacement)
    second["correct_answer"] = "B" if first["correct_answer"] == "A" else "A"
    return {"version": 1, "first": first, "second": second,
            "subject_tag": draft.get("subject_tag", "unknown"),
            "origin": "crowd_modified"}


def _check_invariants(platform: Platform, now: float,
                      finished_ids: set[int], report: SimulationReport) -> None:
    state = platform.collab
    per_worker: dict[str, int] = {}
    for lease in state.leases.values():
        if lease.expires_at > now:
            per_worker[lease.worker_id] = per_worker.get(lease.worker_id, 0) + 1
    for worker_id, count in per_worker.items():
        if count > 1:
            report.violations.append(f"worker {worker_id} holds {count} leases")
    for template_id in state.drafts:
        usage = len(state.records.get(template_id, ())) + sum(
            1 for l in state.leases.values()
            if l.template_id == template_id and l.expires_at > now)
        if usage > state.template_cap:
            report.violations.append(
                f"template {template_id} usage {usage} exceeds cap {state.template_cap}")
    # finished templates must never have live leases afterwards
    for lease in state.leases.values():
        if lease.template_id in finished_ids and lease.expires_at > now:
            report.violations.append(
                f"finished template {lease.template_id} leased to {lease.worker_id}")


def run_simulation(platform: Platform, client, corpus_text: str,
                   rounds: int = 2) -> SimulationReport:
    """Drive the whole campaign; returns the report with counts and any
    invariant violations (empty list = clean run)."""
    api = _Api(client)
    report = SimulationReport()

    admin_key = "admin-key"
    platform.provision_worker("admin", role="admin", auth_key=admin_key,
                              trained=True)
    qualificators = [f"q{i + 1}" for i in range(QUALIFICATOR_COUNT)]
    supervisors = [f"sup{i + 1}" for i in range(SUPERVISOR_COUNT)]
    for worker_id in qualificators:
        platform.provision_worker(worker_id, auth_key=f"key-{worker_id}")
    for worker_id in supervisors:
        platform.provision_worker(worker_id, role="supervisor",
                                  auth_key=f"key-{worker_id}", trained=True)

    admin = api.post("/login", {"worker_id": "admin", "key": admin_key})
    api.post("/admin/corpus", {"text": corpus_text}, token=admin["token"])

    tokens: dict[str, str] = {}

    def ensure_session(worker_id: str, key: str) -> str:
        if worker_id in tokens:
            return tokens[worker_id]
        session = api.post("/login", {"worker_id": worker_id, "key": key})
        token = session["token"]
        question = session.get("test_question")
        if question is not None:
            answer = "A" if question["answer_kind"] == "resolve" else "approve"
            api.post(f"/drafts/{question['question_id']}/answer-test",
                     {"answer": answer}, token=token)
            report.test_questions_answered += 1
        tokens[worker_id] = token
        return token

    # Qualificators must pass training before they can pull drafts.
    for worker_id in qualificators:
        token = ensure_session(worker_id, f"key-{worker_id}")
        training = api.post("/training/start", token=token)
        for index in range(training["required_items"]):
            item = training["items"][index]
            if item["kind"] == "resolve":
                # the fixture answer is recoverable from the question text
                worker = platform.workers[worker_id]
                answer = worker.training.items[index].schema.first.correct_answer
            else:
                answer = sorted(platform.workers[worker_id]
                                .training.items[index].defects)
            result = api.post("/training/answer",
                              {"item_index": index, "answer": answer}, token=token)
        if not result["passed"]:
            raise RuntimeError(f"training failed for {worker_id}")

    finished_ids: set[int] = set()
    submission_counter = 0

    def qualify_until_empty() -> None:
        nonlocal submission_counter
        active = set(qualificators)
        while active:
            for worker_id in sorted(active):
                token = tokens[worker_id]
                result = api.get("/queue/next", token=token)
                if result["empty"]:
                    active.discard(worker_id)
                    continue
                draft = result["draft"]
                report.drafts_served += 1
                if draft["template_id"] in finished_ids:
                    report.violations.append(
                        f"finished template {draft['template_id']} served again")
                submission_counter += 1
                body: dict = {"answer": "rejected_subject"}
                if draft["kind"] == "full_schema":
                    body = {"answer": "accepted_as_is",
                            "selected_answers": {
                                "first": draft["first"]["correct_answer"],
                                "second": draft["second"]["correct_answer"]}}
                    if submission_counter % 7 == 0:
                        body["bias_label"] = "unbiased"
                elif draft["kind"] == "half_only":
                    modified = _repair_half(draft)
                    body = {"answer": "modified_accepted", "modified": modified,
                            "selected_answers": {"first": "A", "second": "B"}}
                else:
                    body = {"answer": ("rejected_subject"
                                       if submission_counter % 2 else
                                       "rejected_unfixable")}
                api.post(f"/drafts/{draft['template_id']}/qualification", body,
                         token=token)
                report.submissions += 1
                _check_invariants(platform, platform.clock(), finished_ids, report)

    def review_all(final_round: bool) -> None:
        pending = api.get("/reviews", token=tokens[supervisors[0]])["pending"]
        for index, item in enumerate(pending):
            reviewer = tokens[supervisors[index % len(supervisors)]]
            if final_round:
                verdict = "valid_finished"
            elif index % 7 == 6:
                verdict = "rejected"
            elif index % 7 == 5:
                verdict = "valid_pending"
            else:
                verdict = "valid_finished"
            result = api.post(f"/reviews/{item['draft_id']}", {"verdict": verdict},
                              token=reviewer)
            report.reviews += 1
            if result["exported"]:
                finished_ids.add(item["draft_id"])

    for worker_id in supervisors:
        ensure_session(worker_id, f"key-{worker_id}")

    for round_index in range(rounds):
        qualify_until_empty()
        api.post("/admin/aggregate", token=admin["token"])
        report.aggregation_runs += 1
        review_all(final_round=(round_index == rounds - 1))

    # flush the last reviews into an export file
    api.post("/admin/aggregate", token=admin["token"])
    report.aggregation_runs += 1

    api.post("/admin/bonus", {"worker_id": qualificators[0], "amount": 25},
             token=admin["token"])
    api.post("/comments", {"text": "good batch of drafts this week"},
             token=tokens[qualificators[0]])
    banners = api.get("/banners", token=tokens[qualificators[0]])
    if banners["bonus"]["total_awarded"] != 25:
        report.violations.append("bonus banner total does not match the award")
    stats = api.get("/workers/me/stats", token=tokens[qualificators[0]])
    if stats["mean_response_seconds"] is None:
        report.violations.append("mean response time missing from worker stats")

    report.valid_finished = len(platform.finished)
    report.export_lines = list(platform.finished)
    return report
