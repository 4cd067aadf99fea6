from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

from winofusion.cli import main
from winofusion.config import dump_config, Config

from conftest import TickingClock, make_platform

CORPUS = Path(__file__).resolve().parents[1] / "src" / "winofusion" / "data" / "corpus.txt"


def run_cli(*args: str) -> subprocess.CompletedProcess:
    return subprocess.run([sys.executable, "-m", "winofusion.cli", *args],
                          capture_output=True, text=True)


def test_gen_writes_ranked_draft_records(tmp_path):
    out = tmp_path / "drafts.jsonl"
    result = run_cli("gen", "--corpus", str(CORPUS), "--out", str(out))
    assert result.returncode == 0, result.stderr
    lines = out.read_text("utf-8").splitlines()
    records = [json.loads(line) for line in lines]
    assert all({"kind", "template_id", "priority_key"} <= set(r) for r in records)
    assert "skipped" in result.stderr


def test_gen_max_len_overrides_config(tmp_path):
    out = tmp_path / "drafts.jsonl"
    # with a very low bound, almost everything is dropped at ingest
    result = run_cli("gen", "--corpus", str(CORPUS), "--out", str(out),
                     "--max-len", "8")
    assert result.returncode == 0, result.stderr
    assert len(out.read_text("utf-8").splitlines()) <= 5


def test_gen_respects_config_file(tmp_path):
    config_path = tmp_path / "conf"
    config_path.write_text("pipeline.sentence_length_max=9\n", encoding="utf-8")
    out = tmp_path / "drafts.jsonl"
    result = run_cli("gen", "--corpus", str(CORPUS), "--config",
                     str(config_path), "--out", str(out))
    assert result.returncode == 0, result.stderr
    full_run = tmp_path / "full.jsonl"
    run_cli("gen", "--corpus", str(CORPUS), "--out", str(full_run))
    assert len(out.read_text().splitlines()) < len(full_run.read_text().splitlines())


def populated_store(tmp_path) -> Config:
    clock = TickingClock()
    platform = make_platform(tmp_path / "store", clock=clock)
    platform.provision_worker("admin", role="admin", auth_key="ak", trained=True)
    platform.provision_worker("w1", auth_key="k1", trained=True)
    platform.provision_worker("w2", auth_key="k2", trained=True)
    platform.provision_worker("w3", auth_key="k3", trained=True)
    platform.provision_worker("sup", role="supervisor", auth_key="sk", trained=True)
    platform.load_corpus(CORPUS.read_text("utf-8"))
    tokens = {w: platform.login(w, f"k{w[-1]}")["token"] for w in ("w1", "w2", "w3")}
    for token in tokens.values():
        platform.sessions[token].pending_test_question = None
    for _ in range(2):
        for token in tokens.values():
            draft = platform.next_draft(token)
            if draft["kind"] == "full_schema":
                platform.submit_qualification(token, draft["template_id"],
                                              "accepted_as_is",
                                              selected_answers={"first": "A",
                                                                "second": "B"})
            else:
                platform.submit_qualification(token, draft["template_id"],
                                              "rejected_subject")
    platform.run_aggregation()
    sup = platform.login("sup", "sk")["token"]
    platform.sessions[sup].pending_test_question = None
    for item in platform.pending_reviews(sup):
        platform.review(sup, item["draft_id"], "valid_finished")
    platform.run_aggregation()
    config = platform.config
    return config


def test_adapt_show_and_export(tmp_path):
    config = populated_store(tmp_path)
    config_path = tmp_path / "conf"
    config_text = dump_config(config).replace(
        "storage.dir=./winofusion-data", f"storage.dir={tmp_path / 'store'}")
    config_path.write_text(config_text, encoding="utf-8")

    result = run_cli("adapt", "--show", "--config", str(config_path))
    assert result.returncode == 0, result.stderr
    assert "factor weights" in result.stdout
    assert "sentence length bound" in result.stdout

    out_dir = tmp_path / "exported"
    result = run_cli("export", "--out", str(out_dir), "--config", str(config_path))
    assert result.returncode == 0, result.stderr
    files = list(out_dir.glob("schemas-*.jsonl"))
    assert len(files) == 1
    assert len(files[0].read_text("utf-8").splitlines()) >= 1


def test_env_var_supplies_config(tmp_path, monkeypatch):
    config = populated_store(tmp_path)
    config_path = tmp_path / "conf"
    config_path.write_text(dump_config(config).replace(
        "storage.dir=./winofusion-data", f"storage.dir={tmp_path / 'store'}"),
        encoding="utf-8")
    monkeypatch.setenv("WINOFUSION_CONFIG", str(config_path))
    assert main(["adapt"]) == 0


def test_console_script_entry_point():
    result = subprocess.run(["winofusion", "--help"], capture_output=True,
                            text=True)
    assert result.returncode == 0
    for sub in ("gen", "serve", "adapt", "export"):
        assert sub in result.stdout
