#!/usr/bin/env python3
"""Regenerate the bundled schema fixture files under src/winofusion/data/:

  validated_schemas.jsonl  known-answer schemas for test questions and
                           resolve-type training items
  training_defects.jsonl   deliberately defective schemas with labelled
                           defect codes for validate-type training items

Run from the repo root: python tools/build_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

from winofusion.lexical import Span, tokenize
from winofusion.schema import Schema, encode_schema, make_half, validate_schema

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "winofusion" / "data"


def _span_of(sentence: str, word: str) -> Span:
    tokens = tokenize(sentence)
    idx = tokens.index(word)
    return Span(idx, idx + 1)


def schema(sentence1: str, q1: str, a1: str, sentence2: str, q2: str, a2: str,
           target_a: str, target_b: str, pronoun: str, special1: str,
           special2: str, subject: str) -> Schema:
    first = make_half(sentence1, _span_of(sentence1, pronoun), target_a,
                      target_b, q1, a1, _span_of(sentence1, special1))
    second = make_half(sentence2, _span_of(sentence2, pronoun), target_a,
                       target_b, q2, a2, _span_of(sentence2, special2))
    return Schema(first=first, second=second, subject_tag=subject,
                  origin="generated")


# The source text for the first fixture spells the second target "drag
# dealer" in the sentence but "drug dealer" in the answers; both are
# normalized to "drug dealer" here (see README).
VALIDATED = [
    schema(
        "The martial artist defended himself from the drug dealer because he was violent.",
        "Who was violent?", "B",
        "The martial artist defended himself from the drug dealer because he was under-attack.",
        "Who was under-attack?", "A",
        "The martial artist", "the drug dealer", "he", "violent", "under-attack",
        "artist"),
    schema(
        "The trophy would not fit in the suitcase because it was big.",
        "What was big?", "A",
        "The trophy would not fit in the suitcase because it was small.",
        "What was small?", "B",
        "the trophy", "the suitcase", "it", "big", "small", "trophy"),
    schema(
        "The lawyer thanked the doctor because he was generous.",
        "Who was generous?", "B",
        "The lawyer thanked the doctor because he was grateful.",
        "Who was grateful?", "A",
        "The lawyer", "the doctor", "he", "generous", "grateful", "lawyer"),
    schema(
        "The teacher scolded the student because he was lazy.",
        "Who was lazy?", "B",
        "The teacher scolded the student because he was impatient.",
        "Who was impatient?", "A",
        "The teacher", "the student", "he", "lazy", "impatient", "teacher"),
    schema(
        "The queen praised the duchess because she was graceful.",
        "Who was graceful?", "B",
        "The queen praised the duchess because she was pleased.",
        "Who was pleased?", "A",
        "The queen", "the duchess", "she", "graceful", "pleased", "queen"),
    schema(
        "The box would not hold the statue because it was heavy.",
        "What was heavy?", "B",
        "The box would not hold the statue because it was fragile.",
        "What was fragile?", "A",
        "the box", "the statue", "it", "heavy", "fragile", "box"),
    schema(
        "The soldiers released the workers because they were innocent.",
        "Who were innocent?", "B",
        "The soldiers released the workers because they were merciful.",
        "Who were merciful?", "A",
        "The soldiers", "the workers", "they", "innocent", "merciful",
        "soldiers"),
    schema(
        "The farmer paid the baker because he was honest.",
        "Who was honest?", "B",
        "The farmer paid the baker because he was satisfied.",
        "Who was satisfied?", "A",
        "The farmer", "the baker", "he", "honest", "satisfied", "farmer"),
    schema(
        "The guard chased the burglar because he was reckless.",
        "Who was reckless?", "B",
        "The guard chased the burglar because he was vigilant.",
        "Who was vigilant?", "A",
        "The guard", "the burglar", "he", "reckless", "vigilant", "guard"),
    schema(
        "The nurse comforted the patient because she was worried.",
        "Who was worried?", "B",
        "The nurse comforted the patient because she was gentle.",
        "Who was gentle?", "A",
        "The nurse", "the patient", "she", "worried", "gentle", "nurse"),
]

# (schema-with-defect, defect codes); answers and targets stay coherent so
# only the labelled defects distinguish these from valid fixtures.
DEFECTIVE = [
    (schema(
        "The lawyer thanked the doctor becasue he was generous.",
        "Who was generous?", "B",
        "The lawyer thanked the doctor becasue he was grateful.",
        "Who was grateful?", "A",
        "The lawyer", "the doctor", "he", "generous", "grateful", "lawyer"),
     ("MISSPELLING",)),
    (schema(
        "The martial artist defended himself from the drug dealer because he was voilent.",
        "Who was voilent?", "B",
        "The martial artist defended himself from the drug dealer because he was under-attack.",
        "Who was under-attack?", "A",
        "The martial artist", "the drug dealer", "he", "voilent", "under-attack",
        "artist"),
     ("MISSPELLING",)),
    (schema(
        "The artist martial defended himself from the drug dealer because he was violent.",
        "Who was violent?", "B",
        "The artist martial defended himself from the drug dealer because he was under-attack.",
        "Who was under-attack?", "A",
        "The artist martial", "the drug dealer", "he", "violent", "under-attack",
        "artist"),
     ("WORD_ORDER",)),
    (schema(
        "The teacher scolded student the because he was lazy.",
        "Who was lazy?", "B",
        "The teacher scolded student the because he was impatient.",
        "Who was impatient?", "A",
        "The teacher", "student the", "he", "lazy", "impatient", "teacher"),
     ("WORD_ORDER",)),
    (schema(
        "The farmer pay the baker because he was honest.",
        "Who was honest?", "B",
        "The farmer pay the baker because he was satisfied.",
        "Who was satisfied?", "A",
        "The farmer", "the baker", "he", "honest", "satisfied", "farmer"),
     ("GRAMMAR",)),
    (schema(
        "The soldiers releases the workers because they were innocent.",
        "Who were innocent?", "B",
        "The soldiers releases the workers because they were merciful.",
        "Who were merciful?", "A",
        "The soldiers", "the workers", "they", "innocent", "merciful",
        "soldiers"),
     ("GRAMMAR",)),
    (schema(
        "The quen praised duchess the because she was graceful.",
        "Who was graceful?", "B",
        "The quen praised duchess the because she was pleased.",
        "Who was pleased?", "A",
        "The quen", "duchess the", "she", "graceful", "pleased", "queen"),
     ("MISSPELLING", "WORD_ORDER")),
    (schema(
        "The gaurd chase the burglar because he was reckless.",
        "Who was reckless?", "B",
        "The gaurd chase the burglar because he was vigilant.",
        "Who was vigilant?", "A",
        "The gaurd", "the burglar", "he", "reckless", "vigilant", "guard"),
     ("MISSPELLING", "GRAMMAR")),
]


def build() -> None:
    with open(DATA_DIR / "validated_schemas.jsonl", "w", encoding="utf-8") as fh:
        for s in VALIDATED:
            report = validate_schema(s)
            assert report.valid, (s.first.sentence_text(), report.codes())
            fh.write(encode_schema(s) + "\n")
    with open(DATA_DIR / "training_defects.jsonl", "w", encoding="utf-8") as fh:
        for s, defects in DEFECTIVE:
            record = {"schema": json.loads(encode_schema(s)),
                      "defects": list(defects)}
            fh.write(json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n")
    print(f"validated_schemas.jsonl: {len(VALIDATED)} schemas")
    print(f"training_defects.jsonl: {len(DEFECTIVE)} items")


if __name__ == "__main__":
    build()
