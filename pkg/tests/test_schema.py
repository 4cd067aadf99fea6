from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from winofusion.lexical import Span, tag_tokens
from winofusion.schema import (
    HALVES_NOT_PARITY,
    SAME_ANSWER,
    SAME_TARGETS,
    TARGET_NOT_IN_SENTENCE,
    UNRELATED_PARTS,
    Schema,
    SchemaDecodeError,
    apply_edit_script,
    decode_schema,
    diff_token_sequences,
    encode_schema,
    make_half,
    relatedness,
    token_diff,
    validate_half,
    validate_schema,
)


def levenshtein(a: list[str], b: list[str]) -> int:
    """Independent quadratic DP oracle (distance only)."""
    prev = list(range(len(b) + 1))
    for i in range(1, len(a) + 1):
        cur = [i] + [0] * len(b)
        for j in range(1, len(b) + 1):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            cur[j] = min(prev[j - 1] + cost, prev[j] + 1, cur[j - 1] + 1)
        prev = cur
    return prev[len(b)]


# ---------------------------------------------------------------------------
# validate_half
# ---------------------------------------------------------------------------

def test_martial_artist_first_half_is_valid(martial_artist_schema):
    report = validate_half(martial_artist_schema.first)
    assert report.valid, [str(v) for v in report.violations]


def test_same_targets_violation():
    half = make_half("The dog chased the dog because it was hungry .".split(),
                     Span(5, 6), "the dog", "the dog", "What was hungry?", "A",
                     Span(8, 9))
    report = validate_half(half)
    assert SAME_TARGETS in report.codes()


def test_unrelated_question_violation():
    half = make_half("The cat slept on the mat .".split(), Span(0, 1),
                     "the cat", "the mat", "Who ate lunch?", "A", Span(2, 3))
    report = validate_half(half)
    assert UNRELATED_PARTS in report.codes()


def test_target_not_in_sentence():
    half = make_half("The cat slept .".split(), Span(0, 1), "the cat",
                     "the zebra", "Who slept?", "A", Span(1, 2))
    # pronoun span is not PRON either; we only assert the target violation
    assert TARGET_NOT_IN_SENTENCE in validate_half(half).codes()


# ---------------------------------------------------------------------------
# validate_schema
# ---------------------------------------------------------------------------

def test_martial_artist_schema_is_valid(martial_artist_schema):
    report = validate_schema(martial_artist_schema)
    assert report.valid, [str(v) for v in report.violations]


def test_byte_identical_halves_fire_same_answer_not_parity(martial_artist_schema):
    import dataclasses
    clone = dataclasses.replace(martial_artist_schema,
                                second=dataclasses.replace(
                                    martial_artist_schema.first))
    report = validate_schema(clone)
    assert SAME_ANSWER in report.codes()
    assert HALVES_NOT_PARITY not in report.codes()


def test_two_changed_spans_break_parity(martial_artist_schema):
    words = martial_artist_schema.second.surfaces()
    words[3] = "protected"  # a second changed span outside the special word
    import dataclasses
    second = make_half(words, Span(10, 11), "The martial artist",
                       "the drug dealer", "Who was under-attack?", "A",
                       Span(12, 13))
    schema = dataclasses.replace(martial_artist_schema, second=second)
    report = validate_schema(schema)
    assert HALVES_NOT_PARITY in report.codes()
    # the independent diff oracle confirms two changed positions
    diff = token_diff(martial_artist_schema.first, second)
    assert diff.changed_token_count == 2


def test_accepted_schema_differs_exactly_on_special_span(martial_artist_schema):
    assert validate_schema(martial_artist_schema).valid
    first = martial_artist_schema.first
    second = martial_artist_schema.second
    differing = {i for i, (a, b) in enumerate(zip(first.surfaces(), second.surfaces()))
                 if a != b}
    span = first.special_word_span
    assert differing == set(range(span.start, span.end))


def test_flipping_special_word_flips_correct_answer(martial_artist_schema):
    first, second = martial_artist_schema.first, martial_artist_schema.second
    assert first.special_word_text() != second.special_word_text()
    assert first.correct_answer != second.correct_answer
    assert first.correct_target() == "the drug dealer"
    assert second.correct_target() == "The martial artist"


# ---------------------------------------------------------------------------
# relatedness
# ---------------------------------------------------------------------------

def test_relatedness_examples():
    related, shared = relatedness("...he was violent.", "Who was violent?")
    assert related and shared == {"violent"}
    assert relatedness("", "anything") == (False, set())
    assert relatedness("The cat slept.", "Who ate lunch?") == (False, set())


def test_relatedness_symmetric_and_stopword_idempotent():
    pairs = [("The judge blamed the clerk.", "Who was careless?"),
             ("he was violent", "Who was violent?"),
             ("a b c", "c d e")]
    for a, b in pairs:
        assert relatedness(a, b)[0] == relatedness(b, a)[0]
        assert relatedness(a, b)[1] == relatedness(b, a)[1]
    # filtering the shared set again changes nothing
    _, shared = relatedness("the violent dealer was violent", "violent dealer")
    _, twice = relatedness(" ".join(shared), " ".join(shared))
    assert twice == shared


@given(st.text(alphabet="abcdef theandwas ", max_size=60),
       st.text(alphabet="abcdef theandwas ", max_size=60))
@settings(max_examples=100, deadline=None)
def test_relatedness_symmetry_property(a, b):
    assert relatedness(a, b) == relatedness(b, a)


# ---------------------------------------------------------------------------
# token_diff
# ---------------------------------------------------------------------------

def test_diff_identity_is_empty(martial_artist_schema):
    script = token_diff(martial_artist_schema.first, martial_artist_schema.first)
    assert script.operations == ()
    assert script.changed_token_count == 0
    assert script.pos_histogram_delta == {}


def test_diff_single_adjective_substitution(martial_artist_schema):
    script = token_diff(martial_artist_schema.first, martial_artist_schema.second)
    assert script.changed_token_count == 1
    assert script.operations[0].kind == "substitute"
    # ADJ replaced by ADJ: the histogram delta cancels
    assert script.pos_histogram_delta.get("ADJ", 0) == 0


def test_diff_full_rewrite_counts_every_token():
    a = make_half("one two three four five six seven eight nine ten".split(),
                  Span(0, 1), "one", "two", "?", "A", Span(2, 3))
    b = make_half("eleven twelve thirteen fourteen fifteen sixteen seventeen "
                  "eighteen nineteen twenty".split(),
                  Span(0, 1), "eleven", "twelve", "?", "A", Span(2, 3))
    script = token_diff(a, b)
    assert script.changed_token_count == 10
    assert script.changed_token_count == levenshtein(a.surfaces(), b.surfaces())


WORD_POOL = "the a cat dog judge clerk ran slept violent calm big small on in".split()


@given(st.lists(st.sampled_from(WORD_POOL), max_size=12),
       st.lists(st.sampled_from(WORD_POOL), max_size=12))
@settings(max_examples=200, deadline=None)
def test_diff_matches_dp_oracle_and_applies(source_words, target_words):
    source = tuple(tag_tokens(source_words))
    target = tuple(tag_tokens(target_words))
    script = diff_token_sequences(source, target)
    assert script.changed_token_count == levenshtein(source_words, target_words)
    assert apply_edit_script(source_words, script) == target_words


def test_diff_histogram_consistent_with_operations():
    source = tuple(tag_tokens("the cat slept .".split()))
    target = tuple(tag_tokens("the dog ran quickly .".split()))
    script = diff_token_sequences(source, target)
    from collections import Counter
    src_hist = Counter(t.pos_tag for t in source)
    tgt_hist = Counter(t.pos_tag for t in target)
    for pos in set(src_hist) | set(tgt_hist) | set(script.pos_histogram_delta):
        assert src_hist.get(pos, 0) + script.pos_histogram_delta.get(pos, 0) \
            == tgt_hist.get(pos, 0)


# ---------------------------------------------------------------------------
# record encode/decode
# ---------------------------------------------------------------------------

def test_round_trip_on_fixture(martial_artist_schema):
    line = encode_schema(martial_artist_schema)
    assert decode_schema(line) == martial_artist_schema
    assert encode_schema(decode_schema(line)) == line


def test_decode_empty_input_fails():
    with pytest.raises(SchemaDecodeError):
        decode_schema(b"")


def test_decode_missing_question_names_the_field(martial_artist_schema):
    record = json.loads(encode_schema(martial_artist_schema))
    del record["first"]["question"]
    with pytest.raises(SchemaDecodeError) as err:
        decode_schema(json.dumps(record))
    assert "question" in str(err.value)


def test_decode_bad_answer_names_the_field(martial_artist_schema):
    record = json.loads(encode_schema(martial_artist_schema))
    record["second"]["correct_answer"] = "C"
    with pytest.raises(SchemaDecodeError) as err:
        decode_schema(json.dumps(record))
    assert "correct_answer" in str(err.value)


def test_decode_rejects_non_utf8():
    with pytest.raises(SchemaDecodeError):
        decode_schema(b"\xff\xfe{}")


PERSONS = ["artist", "dealer", "doctor", "lawyer", "teacher", "student",
           "farmer", "baker", "judge", "clerk", "pilot", "sailor"]
VERBS = ["thanked", "praised", "blamed", "avoided", "trusted", "followed"]
ADJECTIVES = ["violent", "generous", "cheerful", "lazy", "honest", "careful",
              "loyal", "nervous", "reckless", "anxious"]


def random_valid_schema(rng: random.Random) -> Schema:
    a, b = rng.sample(PERSONS, 2)
    verb = rng.choice(VERBS)
    adj1, adj2 = rng.sample(ADJECTIVES, 2)
    words1 = f"The {a} {verb} the {b} because he was {adj1} .".split()
    words2 = f"The {a} {verb} the {b} because he was {adj2} .".split()
    q1, q2 = f"Who was {adj1}?", f"Who was {adj2}?"
    first = make_half(words1, Span(6, 7), f"The {a}", f"the {b}", q1, "A", Span(8, 9))
    second = make_half(words2, Span(6, 7), f"The {a}", f"the {b}", q2, "B", Span(8, 9))
    return Schema(first=first, second=second, subject_tag=a, origin="generated")


def test_round_trip_on_1000_random_valid_schemas():
    rng = random.Random(2024)
    for _ in range(1000):
        schema = random_valid_schema(rng)
        assert validate_schema(schema).valid
        assert decode_schema(encode_schema(schema)) == schema
