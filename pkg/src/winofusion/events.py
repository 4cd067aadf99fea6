"""Append-only event log with periodic snapshots.

Every state mutation in the service is one EventRecord; replaying the log
reproduces the state exactly.  A corrupted line stops restoration at the
last valid sequence number and reports what happened.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator


@dataclass(frozen=True)
class EventRecord:
    sequence: int
    timestamp: float
    kind: str
    payload: dict

    def to_line(self) -> str:
        return json.dumps({"sequence": self.sequence, "timestamp": self.timestamp,
                           "kind": self.kind, "payload": self.payload},
                          sort_keys=True, separators=(",", ":"), ensure_ascii=False)


@dataclass
class RestoreReport:
    last_valid_sequence: int
    corrupt: bool = False
    reason: str = ""


class EventStore:
    """JSONL log on disk (or in memory when no directory is given)."""

    LOG_NAME = "events.log"

    def __init__(self, directory: str | Path | None = None):
        self.directory = Path(directory) if directory is not None else None
        self._memory: list[EventRecord] = []
        self._next_sequence = 1
        if self.directory is not None:
            self.directory.mkdir(parents=True, exist_ok=True)
            existing, _ = self.read_events()
            if existing:
                self._next_sequence = existing[-1].sequence + 1

    @property
    def log_path(self) -> Path | None:
        return self.directory / self.LOG_NAME if self.directory else None

    def append(self, kind: str, payload: dict, timestamp: float) -> EventRecord:
        record = EventRecord(sequence=self._next_sequence, timestamp=timestamp,
                             kind=kind, payload=payload)
        self._next_sequence += 1
        if self.directory is None:
            self._memory.append(record)
        else:
            with open(self.log_path, "a", encoding="utf-8") as fh:
                fh.write(record.to_line() + "\n")
                fh.flush()
                os.fsync(fh.fileno())
        return record

    def read_events(self, after_sequence: int = 0,
                    ) -> tuple[list[EventRecord], RestoreReport]:
        """All events with sequence > after_sequence, stopping at the first
        corrupt or out-of-order line."""
        records: list[EventRecord] = []
        report = RestoreReport(last_valid_sequence=after_sequence)
        for record, problem in self._iter_raw():
            if problem is not None:
                report.corrupt = True
                report.reason = problem
                break
            if record.sequence <= after_sequence:
                continue
            if records and record.sequence != records[-1].sequence + 1:
                report.corrupt = True
                report.reason = (f"sequence jump: {records[-1].sequence} -> "
                                 f"{record.sequence}")
                break
            records.append(record)
            report.last_valid_sequence = record.sequence
        return records, report

    def _iter_raw(self) -> Iterator[tuple[EventRecord | None, str | None]]:
        if self.directory is None:
            for record in self._memory:
                yield record, None
            return
        if not self.log_path.exists():
            return
        with open(self.log_path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.endswith("\n"):
                    yield None, f"line {lineno}: truncated (no newline)"
                    return
                try:
                    obj = json.loads(line)
                    record = EventRecord(sequence=obj["sequence"],
                                         timestamp=obj["timestamp"],
                                         kind=obj["kind"], payload=obj["payload"])
                except (json.JSONDecodeError, KeyError, TypeError) as exc:
                    yield None, f"line {lineno}: {exc}"
                    return
                yield record, None

    # -- snapshots ---------------------------------------------------------

    def write_snapshot(self, sequence: int, state: dict) -> Path | None:
        if self.directory is None:
            return None
        path = self.directory / f"snapshot-{sequence:09d}.json"
        path.write_text(json.dumps({"sequence": sequence, "state": state},
                                   sort_keys=True, separators=(",", ":"),
                                   ensure_ascii=False), encoding="utf-8")
        return path

    def latest_snapshot(self) -> tuple[int, dict] | None:
        if self.directory is None:
            return None
        candidates = sorted(self.directory.glob("snapshot-*.json"))
        for path in reversed(candidates):
            try:
                obj = json.loads(path.read_text("utf-8"))
                return obj["sequence"], obj["state"]
            except (json.JSONDecodeError, KeyError):
                continue  # fall back to the previous snapshot
        return None
