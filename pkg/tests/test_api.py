from __future__ import annotations

import json
import random

import pytest
from fastapi.testclient import TestClient

from winofusion.api import create_app
from winofusion.engine import Platform, date_string, weekday_name
from conftest import TickingClock, make_platform


@pytest.fixture
def service(tmp_path, clock):
    platform = make_platform(tmp_path / "store", clock=clock)
    client = TestClient(create_app(platform))
    return platform, client


def login(client, worker_id, key):
    response = client.post("/login", json={"worker_id": worker_id, "key": key})
    assert response.status_code == 200, response.text
    return response.json()


def auth(token):
    return {"Authorization": f"Bearer {token}"}


def bootstrap(platform, corpus_text):
    platform.provision_worker("admin", role="admin", auth_key="ak", trained=True)
    platform.provision_worker("w1", auth_key="k1", trained=True)
    platform.provision_worker("sup", role="supervisor", auth_key="sk", trained=True)
    platform.load_corpus(corpus_text)


# ---------------------------------------------------------------------------
# login
# ---------------------------------------------------------------------------

def test_login_unknown_worker_404(service):
    platform, client = service
    response = client.post("/login", json={"worker_id": "ghost", "key": ""})
    assert response.status_code == 404


def test_login_banned_worker_403(service):
    platform, client = service
    platform.provision_worker("bad", auth_key="k", trained=True)
    platform.workers["bad"].banned = True
    response = client.post("/login", json={"worker_id": "bad", "key": "k"})
    assert response.status_code == 403


def test_login_wrong_key_403(service):
    platform, client = service
    platform.provision_worker("w", auth_key="right", trained=True)
    response = client.post("/login", json={"worker_id": "w", "key": "wrong"})
    assert response.status_code == 403


def test_seeded_rng_hit_blocks_drafts_until_answered(tmp_path, corpus_text):
    seed = next(s for s in range(5000) if random.Random(s).random() < 0.10)
    platform = make_platform(tmp_path / "s", seed=seed, clock=TickingClock())
    client = TestClient(create_app(platform))
    bootstrap(platform, corpus_text)
    session = login(client, "w1", "k1")
    question = session["test_question"]
    assert question is not None

    blocked = client.get("/queue/next", headers=auth(session["token"]))
    assert blocked.status_code == 409

    answered = client.post(f"/drafts/{question['question_id']}/answer-test",
                           json={"answer": "A"}, headers=auth(session["token"]))
    assert answered.status_code == 200
    assert answered.json()["outcome"] in ("correct", "wrong", "signal")

    after = client.get("/queue/next", headers=auth(session["token"]))
    assert after.status_code == 200
    assert not after.json()["empty"]


def test_login_question_frequency_about_ten_percent(tmp_path, corpus_text):
    platform = make_platform(tmp_path / "s", seed=1234, clock=TickingClock())
    client = TestClient(create_app(platform))
    platform.provision_worker("admin", role="admin", auth_key="ak", trained=True)
    platform.load_corpus(corpus_text)
    shown = 0
    trials = 400
    for i in range(trials):
        platform.provision_worker(f"w{i}", auth_key="k", trained=True)
        if login(client, f"w{i}", "k")["test_question"] is not None:
            shown += 1
    assert abs(shown / trials - 0.10) < 0.06


# ---------------------------------------------------------------------------
# queue + qualification flow over HTTP
# ---------------------------------------------------------------------------

def test_full_qualification_cycle(service, corpus_text):
    platform, client = service
    bootstrap(platform, corpus_text)
    session = login(client, "w1", "k1")
    token = session["token"]
    if session["test_question"]:
        client.post(f"/drafts/{session['test_question']['question_id']}/answer-test",
                    json={"answer": "A"}, headers=auth(token))

    served = client.get("/queue/next", headers=auth(token)).json()
    assert not served["empty"]
    draft = served["draft"]
    assert draft["kind"] == "full_schema"
    assert "sentence" in draft["first"]

    # double-pull is refused while the lease is open
    refused = client.get("/queue/next", headers=auth(token))
    assert refused.status_code == 409

    submitted = client.post(
        f"/drafts/{draft['template_id']}/qualification",
        json={"answer": "accepted_as_is",
              "selected_answers": {"first": "A", "second": "B"},
              "bias_label": "unbiased"},
        headers=auth(token))
    assert submitted.status_code == 200, submitted.text
    body = submitted.json()
    assert body["score"] == 10
    assert body["bias"]["bias_label"] == "unbiased"
    assert "hardness" in body


def test_invalid_modified_submission_renders_violations(service, corpus_text,
                                                        martial_artist_schema):
    platform, client = service
    bootstrap(platform, corpus_text)
    token = login(client, "w1", "k1")["token"]
    platform.sessions[token].pending_test_question = None
    draft = client.get("/queue/next", headers=auth(token)).json()["draft"]

    from winofusion.schema import encode_schema
    record = json.loads(encode_schema(martial_artist_schema))
    record["second"]["sentence"] = "Totally different words here now ."
    response = client.post(
        f"/drafts/{draft['template_id']}/qualification",
        json={"answer": "modified_accepted", "modified": record,
              "selected_answers": {"first": "B", "second": "A"}},
        headers=auth(token))
    assert response.status_code == 422
    codes = {v["code"] for v in response.json()["detail"]["violations"]}
    assert codes  # the full report comes back for inline rendering


def test_queue_empty_signal(service):
    platform, client = service
    platform.provision_worker("w1", auth_key="k1", trained=True)
    token = login(client, "w1", "k1")["token"]
    platform.sessions[token].pending_test_question = None
    response = client.get("/queue/next", headers=auth(token))
    assert response.status_code == 200
    assert response.json() == {"empty": True, "draft": None}


def test_training_over_http(service, corpus_text):
    platform, client = service
    bootstrap(platform, corpus_text)
    platform.provision_worker("rookie", auth_key="rk")
    token = login(client, "rookie", "rk")["token"]

    refused = client.get("/queue/next", headers=auth(token))
    assert refused.status_code == 403  # untrained

    training = client.post("/training/start", headers=auth(token)).json()
    assert training["required_items"] == 3
    worker = platform.workers["rookie"]
    for index in range(training["required_items"]):
        item = worker.training.items[index]
        answer = item.schema.first.correct_answer if item.kind == "resolve" \
            else sorted(item.defects)
        result = client.post("/training/answer",
                             json={"item_index": index, "answer": answer},
                             headers=auth(token)).json()
    assert result["passed"]
    assert platform.workers["rookie"].trained

    served = client.get("/queue/next", headers=auth(token))
    assert served.status_code == 200


def test_failed_training_item_restarts(service, corpus_text):
    platform, client = service
    bootstrap(platform, corpus_text)
    platform.provision_worker("rookie", auth_key="rk")
    token = login(client, "rookie", "rk")["token"]
    client.post("/training/start", headers=auth(token))
    item = platform.workers["rookie"].training.items[0]
    wrong = "A" if item.schema.first.correct_answer == "B" else "B"
    result = client.post("/training/answer",
                         json={"item_index": 0, "answer": wrong},
                         headers=auth(token)).json()
    assert result["failed"]
    again = client.post("/training/start", headers=auth(token))
    assert again.status_code == 200
    assert again.json()["completed_items"] == 0


# ---------------------------------------------------------------------------
# admin surface
# ---------------------------------------------------------------------------

def test_bonus_requires_admin(service, corpus_text):
    platform, client = service
    bootstrap(platform, corpus_text)
    worker_token = login(client, "w1", "k1")["token"]
    response = client.post("/admin/bonus",
                           json={"worker_id": "w1", "amount": 10},
                           headers=auth(worker_token))
    assert response.status_code == 403
    admin_token = login(client, "admin", "ak")["token"]
    granted = client.post("/admin/bonus",
                          json={"worker_id": "w1", "amount": 10},
                          headers=auth(admin_token))
    assert granted.status_code == 200
    banners = client.get("/banners", headers=auth(worker_token)).json()
    assert banners["bonus"]["total_awarded"] == 10


def test_comments_and_stats(service, corpus_text):
    platform, client = service
    bootstrap(platform, corpus_text)
    token = login(client, "w1", "k1")["token"]
    posted = client.post("/comments", json={"text": "hello"}, headers=auth(token))
    assert posted.status_code == 200
    too_long = client.post("/comments", json={"text": "x" * 1001},
                           headers=auth(token))
    assert too_long.status_code == 400
    stats = client.get("/workers/me/stats", headers=auth(token)).json()
    assert stats["worker_id"] == "w1"
    assert stats["score"] == 0


def test_adaptivity_endpoint(service, corpus_text):
    platform, client = service
    bootstrap(platform, corpus_text)
    token = login(client, "admin", "ak")["token"]
    snapshot = client.get("/admin/adaptivity", headers=auth(token)).json()
    assert set(snapshot["factors"]) == {"agreement", "triples", "mitkov"}


def test_missing_bearer_token_401(service):
    platform, client = service
    assert client.get("/queue/next").status_code == 401


def test_admin_provisions_workers_over_http(service):
    platform, client = service
    platform.provision_worker("admin", role="admin", auth_key="ak", trained=True)
    platform.provision_worker("peon", auth_key="pk", trained=True)
    peon_token = login(client, "peon", "pk")["token"]
    refused = client.post("/admin/workers",
                          json={"worker_id": "w9", "key": "k9"},
                          headers=auth(peon_token))
    assert refused.status_code == 403
    admin_token = login(client, "admin", "ak")["token"]
    created = client.post("/admin/workers",
                          json={"worker_id": "w9", "key": "k9", "trained": True},
                          headers=auth(admin_token))
    assert created.status_code == 200
    assert login(client, "w9", "k9")["worker_id"] == "w9"
    duplicate = client.post("/admin/workers",
                            json={"worker_id": "w9", "key": "k9"},
                            headers=auth(admin_token))
    assert duplicate.status_code == 400


# ---------------------------------------------------------------------------
# persistence and scheduler
# ---------------------------------------------------------------------------

def test_restore_reproduces_live_state(tmp_path, corpus_text):
    clock = TickingClock()
    platform = make_platform(tmp_path / "s", clock=clock, snapshot_every=7)
    client = TestClient(create_app(platform))
    bootstrap(platform, corpus_text)
    token = login(client, "w1", "k1")["token"]
    platform.sessions[token].pending_test_question = None
    for _ in range(3):
        draft = client.get("/queue/next", headers=auth(token)).json()["draft"]
        client.post(f"/drafts/{draft['template_id']}/qualification",
                    json={"answer": "rejected_subject"}, headers=auth(token))
    restored = Platform.restore(tmp_path / "s", config=platform.config,
                                clock=clock)
    assert json.dumps(restored.state_dict(), sort_keys=True) \
        == json.dumps(platform.state_dict(), sort_keys=True)
    assert not restored.restore_report.corrupt


def test_truncated_log_recovers_to_previous_event(tmp_path, corpus_text):
    clock = TickingClock()
    platform = make_platform(tmp_path / "s", clock=clock,
                             snapshot_every=10_000)
    bootstrap(platform, corpus_text)
    log = platform.store.log_path
    lines = log.read_text("utf-8").splitlines(keepends=True)
    total = len(lines)
    log.write_text("".join(lines[:-1]) + lines[-1][:25], encoding="utf-8")
    restored = Platform.restore(tmp_path / "s", config=platform.config,
                                clock=clock)
    assert restored.restore_report.corrupt
    assert restored.restore_report.last_valid_sequence == total - 1


def test_scheduler_only_runs_on_configured_days(tmp_path, corpus_text):
    # TickingClock starts on a Saturday (UTC)
    clock = TickingClock()
    platform = make_platform(tmp_path / "s", clock=clock)
    assert weekday_name(clock.now) == "Sat"
    tuesday = clock.now + 3 * 86400.0
    assert weekday_name(tuesday) == "Tue"
    assert platform.run_scheduler(now=tuesday) == []

    saturday_jobs = platform.run_scheduler(now=clock.now)
    assert saturday_jobs == [f"aggregate:{date_string(clock.now)}"]
    # second tick the same day is a no-op
    assert platform.run_scheduler(now=clock.now + 60.0) == []
    # the next configured day runs again
    sunday = clock.now + 86400.0
    assert weekday_name(sunday) == "Sun"
    assert platform.run_scheduler(now=sunday) == [f"aggregate:{date_string(sunday)}"]


def test_full_system_determinism_same_script_same_bytes(tmp_path, corpus_text):
    def run_once(path):
        clock = TickingClock()
        platform = make_platform(path, seed=77, clock=clock)
        client = TestClient(create_app(platform))
        bootstrap(platform, corpus_text)
        token = login(client, "w1", "k1")["token"]
        platform.sessions[token].pending_test_question = None
        for _ in range(4):
            served = client.get("/queue/next", headers=auth(token)).json()
            draft = served["draft"]
            body = {"answer": "rejected_subject"}
            if draft["kind"] == "full_schema":
                body = {"answer": "accepted_as_is",
                        "selected_answers": {"first": "A", "second": "B"}}
            client.post(f"/drafts/{draft['template_id']}/qualification",
                        json=body, headers=auth(token))
        return json.dumps(platform.state_dict(), sort_keys=True)

    assert run_once(tmp_path / "one") == run_once(tmp_path / "two")
