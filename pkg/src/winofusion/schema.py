"""Schema structures, structural validation, relatedness, and token diffs.

A schema is a pair of halves whose sentences are identical except inside
the special-word span; flipping the special word flips the correct answer.
Validation never raises on bad content: violations are data, collected in
a ValidationReport.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field, replace

from winofusion.lexical import (
    Span,
    Token,
    content_words,
    stopwords,
    tag_tokens,
    tokenize,
)

ORIGINS = ("generated", "semi_template", "crowd_modified")

# Violation codes reported by validate_half / validate_schema.
EMPTY_SENTENCE = "EMPTY_SENTENCE"
EMPTY_QUESTION = "EMPTY_QUESTION"
SPAN_OUT_OF_RANGE = "SPAN_OUT_OF_RANGE"
PRONOUN_SPAN_NOT_PRONOUN = "PRONOUN_SPAN_NOT_PRONOUN"
SAME_TARGETS = "SAME_TARGETS"
TARGET_NOT_IN_SENTENCE = "TARGET_NOT_IN_SENTENCE"
SPECIAL_OVERLAPS_PRONOUN = "SPECIAL_OVERLAPS_PRONOUN"
UNRELATED_PARTS = "UNRELATED_PARTS"
BAD_ANSWER = "BAD_ANSWER"
HALVES_NOT_PARITY = "HALVES_NOT_PARITY"
SAME_ANSWER = "SAME_ANSWER"
TARGETS_DIFFER = "TARGETS_DIFFER"


class SchemaDecodeError(ValueError):
    """Raised by decode_schema; carries the offending field name."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field_name = field_name


@dataclass(frozen=True, slots=True)
class SchemaHalf:
    sentence: tuple[Token, ...]
    pronoun_span: Span
    target_a: str
    target_b: str
    question: str
    correct_answer: str  # "A" | "B"
    special_word_span: Span

    def sentence_text(self) -> str:
        return " ".join(t.surface for t in self.sentence)

    def surfaces(self) -> list[str]:
        return [t.surface for t in self.sentence]

    def pronoun_text(self) -> str:
        return " ".join(t.surface for t in self.sentence[self.pronoun_span.start:self.pronoun_span.end])

    def special_word_text(self) -> str:
        return " ".join(t.surface for t in self.sentence[self.special_word_span.start:self.special_word_span.end])

    def correct_target(self) -> str:
        return self.target_a if self.correct_answer == "A" else self.target_b


@dataclass(frozen=True, slots=True)
class Schema:
    first: SchemaHalf
    second: SchemaHalf
    subject_tag: str
    origin: str

    def __post_init__(self) -> None:
        if self.origin not in ORIGINS:
            raise ValueError(f"unknown origin {self.origin!r}")


@dataclass(frozen=True, slots=True)
class Violation:
    code: str
    half: str | None  # "first" | "second" | None for pair-level checks
    detail: str

    def __str__(self) -> str:
        where = f" ({self.half} half)" if self.half else ""
        return f"{self.code}{where}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def valid(self) -> bool:
        return not self.violations

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}


@dataclass(frozen=True, slots=True)
class EditOp:
    kind: str  # "insert" | "delete" | "substitute"
    position: int  # index into the source token sequence
    tokens: tuple[str, ...]  # inserted / deleted / replacement surfaces


@dataclass(frozen=True)
class EditScript:
    operations: tuple[EditOp, ...]
    changed_token_count: int
    pos_histogram_delta: dict[str, int] = field(default_factory=dict)


def make_half(sentence: str | list[str], pronoun_span: Span, target_a: str,
              target_b: str, question: str, correct_answer: str,
              special_word_span: Span) -> SchemaHalf:
    """Build a half from raw text or pre-split surfaces, tagging tokens
    with the bundled lexicon."""
    surfaces = tokenize(sentence) if isinstance(sentence, str) else list(sentence)
    return SchemaHalf(
        sentence=tuple(tag_tokens(surfaces)),
        pronoun_span=pronoun_span,
        target_a=target_a,
        target_b=target_b,
        question=question,
        correct_answer=correct_answer,
        special_word_span=special_word_span,
    )


def find_target_span(sentence: tuple[Token, ...], target: str) -> Span | None:
    """Locate a target phrase as a contiguous, case-insensitive token
    subsequence of the sentence.  Targets are stored as text because crowd
    edits may move them around."""
    want = [w.casefold() for w in tokenize(target)]
    if not want:
        return None
    have = [t.surface.casefold() for t in sentence]
    for start in range(len(have) - len(want) + 1):
        if have[start:start + len(want)] == want:
            return Span(start, start + len(want))
    return None


def relatedness(part_a: str, part_b: str) -> tuple[bool, set[str]]:
    """Common-content-word check that two schema parts belong together.

    Returns (related, shared words); related iff at least one non-stopword
    content word appears in both parts, case-folded.
    """
    shared = content_words(part_a) & content_words(part_b)
    return (bool(shared), shared)


def _span_in_range(span: Span, length: int) -> bool:
    return 0 <= span.start < span.end <= length


def validate_half(half: SchemaHalf, half_name: str | None = None) -> ValidationReport:
    """Check every structural half invariant plus question relatedness."""
    v: list[Violation] = []
    n = len(half.sentence)

    if n == 0:
        v.append(Violation(EMPTY_SENTENCE, half_name, "sentence has no tokens"))
        return ValidationReport(tuple(v))

    for label, span in (("pronoun_span", half.pronoun_span),
                        ("special_word_span", half.special_word_span)):
        if not _span_in_range(span, n):
            v.append(Violation(SPAN_OUT_OF_RANGE, half_name,
                               f"{label} ({span.start},{span.end}) outside sentence of {n} tokens"))

    if _span_in_range(half.pronoun_span, n):
        bad = [t.surface for t in half.sentence[half.pronoun_span.start:half.pronoun_span.end]
               if t.pos_tag != "PRON"]
        if bad:
            v.append(Violation(PRONOUN_SPAN_NOT_PRONOUN, half_name,
                               f"non-pronoun tokens in pronoun span: {bad}"))

    if half.target_a.casefold().strip() == half.target_b.casefold().strip():
        v.append(Violation(SAME_TARGETS, half_name,
                           f"both targets are {half.target_a!r}"))

    for label, target in (("target_a", half.target_a), ("target_b", half.target_b)):
        if find_target_span(half.sentence, target) is None:
            v.append(Violation(TARGET_NOT_IN_SENTENCE, half_name,
                               f"{label} {target!r} not found in sentence"))

    if (_span_in_range(half.pronoun_span, n) and _span_in_range(half.special_word_span, n)
            and half.special_word_span.overlaps(half.pronoun_span)):
        v.append(Violation(SPECIAL_OVERLAPS_PRONOUN, half_name,
                           "special-word span overlaps the pronoun span"))

    if half.correct_answer not in ("A", "B"):
        v.append(Violation(BAD_ANSWER, half_name,
                           f"correct_answer must be A or B, got {half.correct_answer!r}"))

    if not half.question.strip():
        v.append(Violation(EMPTY_QUESTION, half_name, "question is empty"))
    else:
        related, _ = relatedness(half.sentence_text(), half.question)
        if not related:
            v.append(Violation(UNRELATED_PARTS, half_name,
                               "question shares no content word with the sentence"))

    return ValidationReport(tuple(v))


def _halves_parity(first: SchemaHalf, second: SchemaHalf) -> bool:
    """Sentences must match token-for-token outside the special spans.
    Span contents (and lengths) may differ; everything around them may not."""
    s1, s2 = first.special_word_span, second.special_word_span
    a, b = first.surfaces(), second.surfaces()
    if s1.start != s2.start:
        return False
    return (a[:s1.start] == b[:s2.start]
            and a[s1.end:] == b[s2.end:])


def validate_schema(schema: Schema) -> ValidationReport:
    """Half reports plus the pair invariants: parity except the special
    word, flipped correct answers, and identical target pairs."""
    v: list[Violation] = []
    v.extend(validate_half(schema.first, "first").violations)
    v.extend(validate_half(schema.second, "second").violations)

    spans_ok = (_span_in_range(schema.first.special_word_span, len(schema.first.sentence))
                and _span_in_range(schema.second.special_word_span, len(schema.second.sentence)))
    if spans_ok and not _halves_parity(schema.first, schema.second):
        v.append(Violation(HALVES_NOT_PARITY, None,
                           "halves differ outside the special-word span"))

    if schema.first.correct_answer == schema.second.correct_answer:
        v.append(Violation(SAME_ANSWER, None,
                           f"both halves answer {schema.first.correct_answer!r}"))

    pair1 = {schema.first.target_a.casefold(), schema.first.target_b.casefold()}
    pair2 = {schema.second.target_a.casefold(), schema.second.target_b.casefold()}
    if pair1 != pair2:
        v.append(Violation(TARGETS_DIFFER, None,
                           f"halves disagree on targets: {sorted(pair1)} vs {sorted(pair2)}"))

    return ValidationReport(tuple(v))


# ---------------------------------------------------------------------------
# Token-level diffing (unit-cost minimal edit script)
# ---------------------------------------------------------------------------

def token_diff(original: SchemaHalf, modified: SchemaHalf) -> EditScript:
    """Minimal unit-cost edit script turning the original sentence into the
    modified one, with the per-POS histogram delta the analysis banner
    shows."""
    return diff_token_sequences(original.sentence, modified.sentence)


def diff_token_sequences(source: tuple[Token, ...], target: tuple[Token, ...]) -> EditScript:
    n, m = len(source), len(target)
    # dist[i][j]: edit distance between source[:i] and target[:j]
    dist = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        dist[i][0] = i
    for j in range(m + 1):
        dist[0][j] = j
    for i in range(1, n + 1):
        row, prev = dist[i], dist[i - 1]
        src = source[i - 1].surface
        for j in range(1, m + 1):
            if src == target[j - 1].surface:
                row[j] = prev[j - 1]
            else:
                row[j] = 1 + min(prev[j - 1], prev[j], row[j - 1])

    ops: list[EditOp] = []
    delta: Counter[str] = Counter()
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0 and source[i - 1].surface == target[j - 1].surface \
                and dist[i][j] == dist[i - 1][j - 1]:
            i, j = i - 1, j - 1
        elif i > 0 and j > 0 and dist[i][j] == dist[i - 1][j - 1] + 1:
            ops.append(EditOp("substitute", i - 1, (target[j - 1].surface,)))
            delta[target[j - 1].pos_tag] += 1
            delta[source[i - 1].pos_tag] -= 1
            i, j = i - 1, j - 1
        elif i > 0 and dist[i][j] == dist[i - 1][j] + 1:
            ops.append(EditOp("delete", i - 1, (source[i - 1].surface,)))
            delta[source[i - 1].pos_tag] -= 1
            i -= 1
        else:
            ops.append(EditOp("insert", i, (target[j - 1].surface,)))
            delta[target[j - 1].pos_tag] += 1
            j -= 1
    ops.reverse()
    return EditScript(
        operations=tuple(ops),
        changed_token_count=len(ops),
        pos_histogram_delta={pos: d for pos, d in sorted(delta.items()) if d},
    )


def apply_edit_script(source: list[str], script: EditScript) -> list[str]:
    """Replay an edit script over source surfaces; used to check the
    "applying operations to the source yields the target" invariant."""
    inserts: dict[int, list[str]] = {}
    removals: dict[int, str | None] = {}  # replacement surface, or None = delete
    for op in script.operations:
        if op.kind == "insert":
            inserts.setdefault(op.position, []).extend(op.tokens)
        elif op.kind == "delete":
            removals[op.position] = None
        else:
            removals[op.position] = op.tokens[0]
    out: list[str] = []
    for i in range(len(source) + 1):
        out.extend(inserts.get(i, ()))
        if i == len(source):
            break
        if i in removals:
            if removals[i] is not None:
                out.append(removals[i])  # type: ignore[arg-type]
        else:
            out.append(source[i])
    return out


# ---------------------------------------------------------------------------
# Record format (one JSON object per line, version 1)
# ---------------------------------------------------------------------------

RECORD_VERSION = 1


def _half_to_dict(half: SchemaHalf) -> dict:
    return {
        "sentence": half.sentence_text(),
        "pronoun": {"start": half.pronoun_span.start, "end": half.pronoun_span.end},
        "target_a": half.target_a,
        "target_b": half.target_b,
        "question": half.question,
        "correct_answer": half.correct_answer,
        "special_word": {"start": half.special_word_span.start,
                         "end": half.special_word_span.end},
    }


def encode_schema(schema: Schema) -> str:
    """One-line record; keys sorted so identical schemas encode to
    identical bytes."""
    record = {
        "version": RECORD_VERSION,
        "first": _half_to_dict(schema.first),
        "second": _half_to_dict(schema.second),
        "subject_tag": schema.subject_tag,
        "origin": schema.origin,
    }
    return json.dumps(record, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _need(obj: dict, key: str, kind: type, context: str):
    if key not in obj:
        raise SchemaDecodeError(f"{context}{key}", "missing field")
    value = obj[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise SchemaDecodeError(f"{context}{key}",
                                f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def _decode_span(obj: dict, key: str, context: str) -> Span:
    raw = _need(obj, key, dict, context)
    start = _need(raw, "start", int, f"{context}{key}.")
    end = _need(raw, "end", int, f"{context}{key}.")
    try:
        return Span(start, end)
    except ValueError as exc:
        raise SchemaDecodeError(f"{context}{key}", str(exc)) from exc


def _decode_half(obj: dict, context: str) -> SchemaHalf:
    sentence = _need(obj, "sentence", str, context)
    if not sentence.strip():
        raise SchemaDecodeError(f"{context}sentence", "empty sentence")
    answer = _need(obj, "correct_answer", str, context)
    if answer not in ("A", "B"):
        raise SchemaDecodeError(f"{context}correct_answer",
                                f"must be \"A\" or \"B\", got {answer!r}")
    return make_half(
        sentence=sentence.split(),
        pronoun_span=_decode_span(obj, "pronoun", context),
        target_a=_need(obj, "target_a", str, context),
        target_b=_need(obj, "target_b", str, context),
        question=_need(obj, "question", str, context),
        correct_answer=answer,
        special_word_span=_decode_span(obj, "special_word", context),
    )


def encode_half(half: SchemaHalf) -> dict:
    """Wire-format dict for a single half (same shape as inside a record)."""
    return _half_to_dict(half)


def decode_half(obj: dict, context: str = "half.") -> SchemaHalf:
    if not isinstance(obj, dict):
        raise SchemaDecodeError(context.rstrip("."), "expected an object")
    return _decode_half(obj, context)


def decode_schema(record: bytes | str) -> Schema:
    """Parse one schema record; raises SchemaDecodeError naming the first
    offending field.  decode(encode(s)) == s for any schema whose tokens
    were tagged by the bundled lexicon."""
    if isinstance(record, bytes):
        try:
            record = record.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SchemaDecodeError("record", f"not valid UTF-8: {exc}") from exc
    if not record.strip():
        raise SchemaDecodeError("record", "empty input")
    try:
        obj = json.loads(record)
    except json.JSONDecodeError as exc:
        raise SchemaDecodeError("record", f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise SchemaDecodeError("record", "top level must be an object")

    version = _need(obj, "version", int, "")
    if version != RECORD_VERSION:
        raise SchemaDecodeError("version", f"unsupported version {version}")
    origin = _need(obj, "origin", str, "")
    if origin not in ORIGINS:
        raise SchemaDecodeError("origin", f"unknown origin {origin!r}")
    return Schema(
        first=_decode_half(_need(obj, "first", dict, ""), "first."),
        second=_decode_half(_need(obj, "second", dict, ""), "second."),
        subject_tag=_need(obj, "subject_tag", str, ""),
        origin=origin,
    )


def flip_answer(answer: str) -> str:
    return "B" if answer == "A" else "A"


def with_answers(schema: Schema, first_answer: str, second_answer: str) -> Schema:
    """Copy a schema with worker-selected correct answers."""
    return replace(
        schema,
        first=replace(schema.first, correct_answer=first_answer),
        second=replace(schema.second, correct_answer=second_answer),
    )


__all__ = [
    "Schema", "SchemaHalf", "Span", "Token", "ValidationReport", "Violation",
    "EditOp", "EditScript", "SchemaDecodeError",
    "make_half", "find_target_span", "relatedness", "validate_half",
    "validate_schema", "token_diff", "diff_token_sequences",
    "apply_edit_script", "encode_schema", "decode_schema", "encode_half",
    "decode_half", "flip_answer", "with_answers", "stopwords",
]
