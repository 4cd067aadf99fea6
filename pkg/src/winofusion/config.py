"""Flat key=value configuration with a closed key registry.

Unknown keys are rejected at load and every numeric key is range-checked.
The WINOFUSION_CONFIG environment variable overrides the config path for
the CLI entry points.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields
from pathlib import Path

ENV_VAR = "WINOFUSION_CONFIG"

WEEKDAYS = ("Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun")


class ConfigError(ValueError):
    pass


@dataclass
class Config:
    score_valid: int = 10
    score_invalid: int = -5
    score_test_correct: int = 2
    score_test_wrong: int = -8
    ban_threshold: int = -50
    test_question_probability: float = 0.10
    test_question_validated_share: float = 0.90
    hardness_weights: tuple[float, ...] = (0.3, 0.2, 0.2, 0.1, 0.2)
    training_base: int = 3
    schedule_aggregation_days: tuple[str, ...] = ("Sat", "Sun")
    queue_lease_minutes: float = 30.0
    queue_semi_probability: float = 0.10
    template_cap: int = 5
    rng_seed: int = 0
    promote_score: int = 100
    promote_valid_min: int = 20
    pipeline_sentence_length_max: int = 40
    pipeline_w_agreement: float = 1.0
    pipeline_w_triples: float = 1.0
    pipeline_w_mitkov: float = 1.0
    adaptivity_mitkov_top_quartile: float = 4.0
    adaptivity_min_length_samples: int = 20
    storage_dir: str = "./winofusion-data"
    snapshot_every: int = 1000
    admin_key: str = "admin"

    def score_deltas(self) -> dict[str, int]:
        return {"valid": self.score_valid, "invalid": self.score_invalid,
                "test_correct": self.score_test_correct,
                "test_wrong": self.score_test_wrong}


# file key -> (attribute, parser)
def _probability(raw: str, key: str) -> float:
    value = _float(raw, key)
    if not 0.0 <= value <= 1.0:
        raise ConfigError(f"{key} must be in [0, 1], got {value}")
    return value


def _float(raw: str, key: str) -> float:
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"{key} expects a number, got {raw!r}") from exc


def _int(raw: str, key: str) -> int:
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"{key} expects an integer, got {raw!r}") from exc


def _positive_int(raw: str, key: str) -> int:
    value = _int(raw, key)
    if value < 1:
        raise ConfigError(f"{key} must be >= 1, got {value}")
    return value


def _nonneg_int(raw: str, key: str) -> int:
    value = _int(raw, key)
    if value < 0:
        raise ConfigError(f"{key} must be >= 0, got {value}")
    return value


def _positive_float(raw: str, key: str) -> float:
    value = _float(raw, key)
    if value <= 0:
        raise ConfigError(f"{key} must be > 0, got {value}")
    return value


def _weights5(raw: str, key: str) -> tuple[float, ...]:
    parts = [p.strip() for p in raw.split(",")]
    if len(parts) != 5:
        raise ConfigError(f"{key} expects 5 comma-separated weights, got {len(parts)}")
    weights = tuple(_probability(p, key) for p in parts)
    return weights

def _days(raw: str, key: str) -> tuple[str, ...]:
    days = tuple(d.strip() for d in raw.split(",") if d.strip())
    for d in days:
        if d not in WEEKDAYS:
            raise ConfigError(f"{key}: unknown weekday {d!r} (use {'/'.join(WEEKDAYS)})")
    if not days:
        raise ConfigError(f"{key} must list at least one weekday")
    return days


def _length_max(raw: str, key: str) -> int:
    value = _int(raw, key)
    if not 8 <= value <= 60:
        raise ConfigError(f"{key} must be in [8, 60], got {value}")
    return value


KEY_REGISTRY = {
    "score.valid": ("score_valid", _int),
    "score.invalid": ("score_invalid", _int),
    "score.test_correct": ("score_test_correct", _int),
    "score.test_wrong": ("score_test_wrong", _int),
    "ban.threshold": ("ban_threshold", _int),
    "test_question.probability": ("test_question_probability", _probability),
    "test_question.validated_share": ("test_question_validated_share", _probability),
    "hardness.weights": ("hardness_weights", _weights5),
    "training.base": ("training_base", _nonneg_int),
    "schedule.aggregation_days": ("schedule_aggregation_days", _days),
    "queue.lease_minutes": ("queue_lease_minutes", _positive_float),
    "queue.semi_probability": ("queue_semi_probability", _probability),
    "template.cap": ("template_cap", _positive_int),
    "rng.seed": ("rng_seed", _int),
    "promote.score": ("promote_score", _int),
    "promote.valid_min": ("promote_valid_min", _nonneg_int),
    "pipeline.sentence_length_max": ("pipeline_sentence_length_max", _length_max),
    "pipeline.w_agreement": ("pipeline_w_agreement", _probability),
    "pipeline.w_triples": ("pipeline_w_triples", _probability),
    "pipeline.w_mitkov": ("pipeline_w_mitkov", _probability),
    "adaptivity.mitkov_top_quartile": ("adaptivity_mitkov_top_quartile", _float),
    "adaptivity.min_length_samples": ("adaptivity_min_length_samples", _positive_int),
    "storage.dir": ("storage_dir", lambda raw, key: raw.strip()),
    "snapshot.every": ("snapshot_every", _positive_int),
    "admin.key": ("admin_key", lambda raw, key: raw.strip()),
}


def parse_config(text: str) -> Config:
    values: dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected key=value, got {stripped!r}")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        if key not in KEY_REGISTRY:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        attr, parser = KEY_REGISTRY[key]
        if attr in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[attr] = parser(raw.strip(), key)
    return Config(**values)


def load_config(path: str | Path | None = None) -> Config:
    """Load from the given path, the WINOFUSION_CONFIG env var, or fall
    back to defaults when neither names a file."""
    if path is None:
        path = os.environ.get(ENV_VAR)
    if path is None:
        return Config()
    return parse_config(Path(path).read_text("utf-8"))


def dump_config(config: Config) -> str:
    """Render the full configuration back to key=value lines."""
    by_attr = {attr: key for key, (attr, _) in KEY_REGISTRY.items()}
    lines = []
    for f in fields(Config):
        key = by_attr[f.name]
        value = getattr(config, f.name)
        if isinstance(value, tuple):
            value = ",".join(str(v) for v in value)
        elif isinstance(value, bool):
            value = "true" if value else "false"
        lines.append(f"{key}={value}")
    return "\n".join(lines) + "\n"
