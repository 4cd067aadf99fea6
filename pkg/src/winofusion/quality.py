"""Worker training, test-question interjection, scoring/banning, and the
fast hardness metric with balance prompts.

Score deltas, the ban threshold, and the hardness weights are plain config
data; the defaults here are the shipped configuration.
"""

from __future__ import annotations

import json
import logging
import math
import random
import zlib
from dataclasses import dataclass, field
from importlib import resources

from winofusion.lexical import common_words, genders_compatible, numbers_compatible
from winofusion.pipeline import noun_spans, span_head
from winofusion.schema import (
    Schema,
    SchemaHalf,
    decode_schema,
    encode_schema,
    find_target_span,
    validate_schema,
)

logger = logging.getLogger(__name__)

ROLE_QUALIFICATOR = "qualificator"
ROLE_SUPERVISOR = "supervisor"
ROLE_ADMIN = "admin"

TRAINING_COMPLETED = "completed"

DEFECT_CODES = ("MISSPELLING", "WORD_ORDER", "GRAMMAR")

DEFAULT_SCORE_DELTAS = {"valid": 10, "invalid": -5, "test_correct": 2, "test_wrong": -8}
DEFAULT_BAN_THRESHOLD = -50
DEFAULT_TRAINING_BASE = 3
DEFAULT_TEST_PROBABILITY = 0.10
DEFAULT_VALIDATED_SHARE = 0.90
DEFAULT_HARDNESS_WEIGHTS = (0.3, 0.2, 0.2, 0.1, 0.2)


class ConfigurationError(RuntimeError):
    pass


@dataclass
class TrainingItem:
    kind: str  # "resolve" | "validate"
    schema: Schema
    defects: tuple[str, ...] = ()
    graded: bool = False

    def to_dict(self) -> dict:
        return {"kind": self.kind, "schema": encode_schema(self.schema),
                "defects": list(self.defects), "graded": self.graded}

    @classmethod
    def from_dict(cls, obj: dict) -> "TrainingItem":
        return cls(kind=obj["kind"], schema=decode_schema(obj["schema"]),
                   defects=tuple(obj["defects"]), graded=obj["graded"])


@dataclass
class TrainingSession:
    required_items: int
    completed_items: int = 0
    items: list[TrainingItem] = field(default_factory=list)
    passed: bool = False
    failed: bool = False

    def to_dict(self) -> dict:
        return {"required_items": self.required_items,
                "completed_items": self.completed_items,
                "items": [i.to_dict() for i in self.items],
                "passed": self.passed, "failed": self.failed}

    @classmethod
    def from_dict(cls, obj: dict) -> "TrainingSession":
        return cls(required_items=obj["required_items"],
                   completed_items=obj["completed_items"],
                   items=[TrainingItem.from_dict(i) for i in obj["items"]],
                   passed=obj["passed"], failed=obj["failed"])


@dataclass
class Worker:
    id: str
    role: str = ROLE_QUALIFICATOR
    score: int = 0
    banned: bool = False
    training: TrainingSession | str | None = None  # session | "completed" | None
    valid_count: int = 0
    invalid_count: int = 0
    response_times: list[float] = field(default_factory=list)
    bonuses_awarded: int = 0
    auth_key: str = ""

    @property
    def trained(self) -> bool:
        return self.training == TRAINING_COMPLETED

    def to_dict(self) -> dict:
        training: dict | str | None
        if isinstance(self.training, TrainingSession):
            training = self.training.to_dict()
        else:
            training = self.training
        return {"id": self.id, "role": self.role, "score": self.score,
                "banned": self.banned, "training": training,
                "valid_count": self.valid_count,
                "invalid_count": self.invalid_count,
                "response_times": list(self.response_times),
                "bonuses_awarded": self.bonuses_awarded,
                "auth_key": self.auth_key}

    @classmethod
    def from_dict(cls, obj: dict) -> "Worker":
        training = obj["training"]
        if isinstance(training, dict):
            training = TrainingSession.from_dict(training)
        return cls(id=obj["id"], role=obj["role"], score=obj["score"],
                   banned=obj["banned"], training=training,
                   valid_count=obj["valid_count"],
                   invalid_count=obj["invalid_count"],
                   response_times=list(obj["response_times"]),
                   bonuses_awarded=obj["bonuses_awarded"],
                   auth_key=obj["auth_key"])


@dataclass
class TestQuestion:
    question_id: str
    schema: Schema
    expected: str  # "A" | "B" for validated items, "approve"/"disapprove" type otherwise
    source: str  # "validated_set" | "unvalidated_generator"

    def to_dict(self) -> dict:
        return {"question_id": self.question_id,
                "schema": encode_schema(self.schema),
                "expected": self.expected, "source": self.source}

    @classmethod
    def from_dict(cls, obj: dict) -> "TestQuestion":
        return cls(question_id=obj["question_id"],
                   schema=decode_schema(obj["schema"]),
                   expected=obj["expected"], source=obj["source"])


@dataclass(frozen=True)
class HardnessReport:
    score: float
    label: str  # "easy" | "hard"
    features: dict[str, float]


@dataclass
class TrainingPool:
    resolve_items: list[Schema]
    validate_items: list[tuple[Schema, tuple[str, ...]]]


# ---------------------------------------------------------------------------
# Bundled fixture pools
# ---------------------------------------------------------------------------

def load_validated_schemas() -> list[Schema]:
    text = resources.files("winofusion.data").joinpath("validated_schemas.jsonl").read_text("utf-8")
    return [decode_schema(line) for line in text.splitlines() if line.strip()]


def load_training_defects() -> list[tuple[Schema, tuple[str, ...]]]:
    text = resources.files("winofusion.data").joinpath("training_defects.jsonl").read_text("utf-8")
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        obj = json.loads(line)
        out.append((decode_schema(json.dumps(obj["schema"])), tuple(obj["defects"])))
    return out


def default_training_pool() -> TrainingPool:
    return TrainingPool(resolve_items=load_validated_schemas(),
                        validate_items=load_training_defects())


# ---------------------------------------------------------------------------
# Training
# ---------------------------------------------------------------------------

def required_training_items(valid_so_far: int, invalid_so_far: int,
                            base: int = DEFAULT_TRAINING_BASE) -> int:
    """Session length grows with how far invalid output has outrun valid
    output: base + max(0, invalid - valid)."""
    return base + max(0, invalid_so_far - valid_so_far)


def start_training(worker: Worker, valid_so_far: int, invalid_so_far: int,
                   pool: TrainingPool, base: int = DEFAULT_TRAINING_BASE,
                   seed: int | None = None) -> TrainingSession:
    """Items come from a seeded shuffle of the pool; ceil(half) are
    resolve-type, the rest validate-type."""
    if worker.banned:
        raise ValueError(f"worker {worker.id} is banned")
    if worker.trained:
        raise ValueError(f"worker {worker.id} already completed training")
    required = required_training_items(valid_so_far, invalid_so_far, base)
    resolve_count = math.ceil(required / 2)
    validate_count = required - resolve_count
    if resolve_count > len(pool.resolve_items) or validate_count > len(pool.validate_items):
        raise ConfigurationError(
            f"training pool too small: need {resolve_count} resolve / "
            f"{validate_count} validate, have {len(pool.resolve_items)} / "
            f"{len(pool.validate_items)}")
    if seed is None:
        seed = zlib.crc32(f"{worker.id}:{valid_so_far}:{invalid_so_far}".encode())
    rng = random.Random(seed)
    resolve_idx = list(range(len(pool.resolve_items)))
    validate_idx = list(range(len(pool.validate_items)))
    rng.shuffle(resolve_idx)
    rng.shuffle(validate_idx)
    items = [TrainingItem(kind="resolve", schema=pool.resolve_items[i])
             for i in resolve_idx[:resolve_count]]
    items += [TrainingItem(kind="validate", schema=pool.validate_items[i][0],
                           defects=pool.validate_items[i][1])
              for i in validate_idx[:validate_count]]
    session = TrainingSession(required_items=required, items=items)
    worker.training = session
    return session


def grade_training_item(session: TrainingSession, item_index: int,
                        answer: str | set[str]) -> TrainingSession:
    """Resolve items match the half's correct answer; validate items match
    the known defect set exactly.  Any wrong answer fails the session
    (restartable with a fresh one)."""
    if session.failed:
        raise ValueError("session already failed; start a fresh one")
    if not 0 <= item_index < len(session.items):
        raise IndexError(f"item index {item_index} out of range")
    item = session.items[item_index]
    if item.graded:
        raise ValueError(f"item {item_index} already graded")
    if item.kind == "resolve":
        correct = answer == item.schema.first.correct_answer
    else:
        reported = {answer} if isinstance(answer, str) else set(answer)
        correct = reported == set(item.defects)
    item.graded = True
    if correct:
        session.completed_items += 1
        if session.completed_items == session.required_items:
            session.passed = True
    else:
        session.failed = True
    return session


# ---------------------------------------------------------------------------
# Test questions
# ---------------------------------------------------------------------------

def maybe_test_question(rng, validated_pool: list[Schema],
                        unvalidated_pool: list[Schema],
                        probability: float = DEFAULT_TEST_PROBABILITY,
                        validated_share: float = DEFAULT_VALIDATED_SHARE,
                        question_id: str = "q") -> TestQuestion | None:
    """Emit a test question with the configured probability per login draw.
    Validated-set questions carry a known A/B answer; generator questions
    are approval-type.  Caller enforces the trained/not-banned pre."""
    if rng.random() >= probability:
        return None
    use_validated = rng.random() < validated_share
    pool, source = ((validated_pool, "validated_set") if use_validated
                    else (unvalidated_pool, "unvalidated_generator"))
    if not pool:
        pool, source = ((unvalidated_pool, "unvalidated_generator")
                        if use_validated else (validated_pool, "validated_set"))
    if not pool:
        logger.warning("test question drawn but both question pools are empty")
        return None
    schema = pool[int(rng.random() * len(pool)) % len(pool)]
    expected = schema.first.correct_answer if source == "validated_set" else "approve"
    return TestQuestion(question_id=question_id, schema=schema,
                        expected=expected, source=source)


def grade_test_answer(question: TestQuestion, answer: str) -> bool | None:
    """True/False for validated questions; None (ungraded, signal only)
    for approval-type questions on unvalidated generator output."""
    if question.source == "validated_set":
        return answer == question.expected
    return None


# ---------------------------------------------------------------------------
# Scoring and banning
# ---------------------------------------------------------------------------

def apply_score_event(worker: Worker, event: str, amount: int = 0,
                      deltas: dict[str, int] | None = None,
                      ban_threshold: int = DEFAULT_BAN_THRESHOLD) -> Worker:
    """Apply one scoring event; the ban flips on the first time the score
    drops below the threshold and is absorbing."""
    if worker.banned:
        raise ValueError(f"worker {worker.id} is banned")
    deltas = DEFAULT_SCORE_DELTAS if deltas is None else deltas
    if event == "bonus":
        worker.score += amount
        worker.bonuses_awarded += amount
    elif event == "valid_schema":
        worker.score += deltas["valid"]
        worker.valid_count += 1
    elif event == "invalid_schema":
        worker.score += deltas["invalid"]
        worker.invalid_count += 1
    elif event == "test_correct":
        worker.score += deltas["test_correct"]
    elif event == "test_wrong":
        worker.score += deltas["test_wrong"]
    else:
        raise ValueError(f"unknown score event {event!r}")
    if worker.score < ban_threshold:
        worker.banned = True
    return worker


# ---------------------------------------------------------------------------
# Hardness
# ---------------------------------------------------------------------------

def _pronoun_target_distance(half: SchemaHalf) -> int:
    """Token gap between the pronoun span and the nearest target span."""
    best = None
    for target in (half.target_a, half.target_b):
        span = find_target_span(half.sentence, target)
        if span is None:
            continue
        if span.end <= half.pronoun_span.start:
            gap = half.pronoun_span.start - span.end
        elif span.start >= half.pronoun_span.end:
            gap = span.start - half.pronoun_span.end
        else:
            gap = 0
        best = gap if best is None else min(best, gap)
    return best if best is not None else 20


def _candidate_count(half: SchemaHalf) -> int:
    """Noun spans agreeing with the pronoun in gender and number."""
    pron = half.sentence[half.pronoun_span.start]
    count = 0
    for sp in noun_spans(half.sentence):
        head = span_head(half.sentence, sp)
        if genders_compatible(head.gender, pron.gender) \
                and numbers_compatible(head.number, pron.number):
            count += 1
    return count


def _outside_overlap_ratio(schema: Schema) -> float:
    s1, s2 = schema.first.special_word_span, schema.second.special_word_span
    a, b = schema.first.surfaces(), schema.second.surfaces()
    outside_a = a[:s1.start] + a[s1.end:]
    outside_b = b[:s2.start] + b[s2.end:]
    if not outside_a:
        return 1.0
    matches = sum(1 for x, y in zip(outside_a, outside_b) if x == y)
    return matches / len(outside_a)


def hardness(schema: Schema,
             weights: tuple[float, ...] = DEFAULT_HARDNESS_WEIGHTS,
             common: frozenset[str] | None = None) -> HardnessReport:
    """Fast linear difficulty estimate in [0, 1] from five schema-only
    features: sentence length, pronoun-target distance, candidate count,
    cross-half divergence, and special-word rarity.  Pure function."""
    report = validate_schema(schema)
    if not report.valid:
        raise ValueError(f"hardness requires a valid schema: {report.codes()}")
    first = schema.first
    common = common_words() if common is None else common
    features = {
        "length": min(1.0, len(first.sentence) / 40.0),
        "pronoun_distance": min(1.0, _pronoun_target_distance(first) / 20.0),
        "candidates": min(1.0, max(0.0, (_candidate_count(first) - 2) / 4.0)),
        "half_divergence": 1.0 - _outside_overlap_ratio(schema),
        "rare_special_word": 0.0 if first.special_word_text().lower() in common else 1.0,
    }
    score = sum(w * f for w, f in zip(weights, features.values()))
    score = min(1.0, max(0.0, score))
    return HardnessReport(score=score, label="hard" if score >= 0.5 else "easy",
                          features=features)


def hardness_prompt(history: list[HardnessReport]) -> str | None:
    """Nudge toward harder schemas once at least five accepted schemas
    exist and more than 70% of them are easy."""
    if len(history) < 5:
        return None
    easy = sum(1 for r in history if r.label == "easy")
    if easy / len(history) > 0.7:
        return ("Most of your accepted schemas are rated easy. "
                "Try longer sentences, more candidate antecedents, or a "
                "rarer special word.")
    return None
