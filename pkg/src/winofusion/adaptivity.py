"""Human-to-generator feedback loop: count qualification outcomes per
generator factor and subject, retune factor weights and the sentence
length bound, compare accepted vs rejected structures, and export the
resulting generator configuration.

All counter updates are order-independent, so outcomes may be folded in
any order (the aggregation job is the only writer in practice).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from winofusion.pipeline import Draft, PipelineConfig
from winofusion.schema import Schema

FACTORS = ("agreement", "triples", "mitkov")
ACCEPT_VERDICTS = ("valid_finished", "valid_pending")
TERMINAL_VERDICTS = ("valid_finished", "valid_pending", "rejected")

LENGTH_MIN, LENGTH_MAX = 8, 60
DEFAULT_MIN_LENGTH_SAMPLES = 20
DEFAULT_MITKOV_TOP_QUARTILE = 4.0


@dataclass
class FactorCounter:
    offered: int = 0
    accepted: int = 0


@dataclass
class StructureReport:
    valid_means: dict[str, float] | None
    invalid_means: dict[str, float] | None
    deltas: dict[str, float] | None  # valid - invalid; None when undefined


@dataclass
class AdaptivityState:
    factors: dict[str, FactorCounter] = field(
        default_factory=lambda: {f: FactorCounter() for f in FACTORS})
    subjects: dict[str, FactorCounter] = field(default_factory=dict)
    accepted_lengths: Counter = field(default_factory=Counter)  # length -> count
    current_config: PipelineConfig = field(default_factory=PipelineConfig)
    config_version: int = 0
    mitkov_top_quartile: float = DEFAULT_MITKOV_TOP_QUARTILE
    min_length_samples: int = DEFAULT_MIN_LENGTH_SAMPLES

    def to_dict(self) -> dict:
        return {
            "factors": {f: [c.offered, c.accepted] for f, c in sorted(self.factors.items())},
            "subjects": {s: [c.offered, c.accepted] for s, c in sorted(self.subjects.items())},
            "accepted_lengths": {str(k): v for k, v in sorted(self.accepted_lengths.items())},
            "config_version": self.config_version,
            "sentence_length_max": self.current_config.sentence_length_max,
            "factor_weights": dict(self.current_config.factor_weights),
            "mitkov_top_quartile": self.mitkov_top_quartile,
            "min_length_samples": self.min_length_samples,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "AdaptivityState":
        state = cls(mitkov_top_quartile=obj["mitkov_top_quartile"],
                    min_length_samples=obj["min_length_samples"])
        state.factors = {f: FactorCounter(offered=o, accepted=a)
                         for f, (o, a) in obj["factors"].items()}
        state.subjects = {s: FactorCounter(offered=o, accepted=a)
                          for s, (o, a) in obj["subjects"].items()}
        state.accepted_lengths = Counter({int(k): v for k, v in obj["accepted_lengths"].items()})
        state.config_version = obj["config_version"]
        state.current_config = PipelineConfig(
            sentence_length_max=obj["sentence_length_max"],
            factor_weights=dict(obj["factor_weights"]))
        return state


def _draft_length(draft: Draft) -> int:
    if draft.schema is not None:
        return len(draft.schema.first.sentence)
    if draft.half is not None:
        return len(draft.half.sentence)
    return len(draft.sentence.tokens)


def satisfied_factors(draft: Draft, mitkov_top_quartile: float) -> set[str]:
    """Which ranking factors the draft satisfied: pronoun agreement,
    triple participation, and salience at or above the fixed top-quartile
    threshold (fixed so bookkeeping stays order-independent)."""
    t1, t2, t3 = draft.priority_key
    out = set()
    if t1:
        out.add("agreement")
    if t2:
        out.add("triples")
    if t3 >= mitkov_top_quartile:
        out.add("mitkov")
    return out


def record_outcome(state: AdaptivityState, draft: Draft, verdict: str) -> AdaptivityState:
    """Fold one terminal verdict into the counters."""
    if verdict not in TERMINAL_VERDICTS:
        raise ValueError(f"verdict {verdict!r} is not terminal")
    accepted = verdict in ACCEPT_VERDICTS
    for factor in satisfied_factors(draft, state.mitkov_top_quartile):
        state.factors[factor].offered += 1
        if accepted:
            state.factors[factor].accepted += 1
    subject = state.subjects.setdefault(draft.subject_tag or "unknown", FactorCounter())
    subject.offered += 1
    if accepted:
        subject.accepted += 1
        state.accepted_lengths[_draft_length(draft)] += 1
    return state


def smoothed_rate(accepted: int, offered: int) -> float:
    return (accepted + 1) / (offered + 2)


def update_factor_weights(state: AdaptivityState) -> PipelineConfig:
    """Add-one smoothed acceptance rate per factor, rescaled so the best
    factor weighs 1.0.  Weights can never reach 0."""
    raw = {f: smoothed_rate(c.accepted, c.offered) for f, c in state.factors.items()}
    top = max(raw.values())
    weights = {f: r / top for f, r in raw.items()}
    config = PipelineConfig(
        sentence_length_max=state.current_config.sentence_length_max,
        factor_weights=weights,
        substitution_lexicon=state.current_config.substitution_lexicon,
        gender_lexicon=state.current_config.gender_lexicon,
        number_rules=state.current_config.number_rules)
    state.current_config = config
    return config


def percentile(values: list[int], fraction: float) -> int:
    ordered = sorted(values)
    index = min(len(ordered) - 1, int(fraction * len(ordered)))
    return ordered[index]


def update_sentence_length(state: AdaptivityState) -> PipelineConfig:
    """90th percentile of accepted sentence lengths, clamped to [8, 60];
    unchanged until enough samples accumulate."""
    samples = list(state.accepted_lengths.elements())
    if len(samples) >= state.min_length_samples:
        p90 = percentile(samples, 0.9)
        bound = max(LENGTH_MIN, min(LENGTH_MAX, p90))
        state.current_config = PipelineConfig(
            sentence_length_max=bound,
            factor_weights=dict(state.current_config.factor_weights),
            substitution_lexicon=state.current_config.substitution_lexicon,
            gender_lexicon=state.current_config.gender_lexicon,
            number_rules=state.current_config.number_rules)
    return state.current_config


def _schema_stats(schema: Schema) -> dict[str, float]:
    tokens = schema.first.sentence
    return {
        "noun_count": sum(1 for t in tokens if t.pos_tag in ("NOUN", "PROPN")),
        "pronoun_count": sum(1 for t in tokens if t.pos_tag == "PRON"),
        "token_length": len(tokens),
    }


def _means(schemas: list[Schema]) -> dict[str, float] | None:
    if not schemas:
        return None
    totals: Counter = Counter()
    for s in schemas:
        totals.update(_schema_stats(s))
    return {k: totals[k] / len(schemas) for k in ("noun_count", "pronoun_count", "token_length")}


def structural_compare(valid: list[Schema], invalid: list[Schema]) -> StructureReport:
    """Mean noun/pronoun/token counts per set; deltas are valid minus
    invalid, undefined when either set is empty."""
    valid_means = _means(valid)
    invalid_means = _means(invalid)
    deltas = None
    if valid_means is not None and invalid_means is not None:
        deltas = {k: valid_means[k] - invalid_means[k] for k in valid_means}
    return StructureReport(valid_means=valid_means, invalid_means=invalid_means,
                           deltas=deltas)


def export_pipeline_config(state: AdaptivityState) -> PipelineConfig:
    """Latest weight and length updates combined into the next generator
    configuration; deterministic given the counters."""
    update_factor_weights(state)
    config = update_sentence_length(state)
    state.config_version += 1
    return config
