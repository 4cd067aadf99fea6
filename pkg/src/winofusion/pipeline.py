"""Rule-based draft generator: corpus ingestion, shallow annotation,
candidate filtering, pronoun-target selection, question generation,
special-word substitution, and priority-ranked draft emission.

Annotation is the bundled-lexicon tagger plus three shallow relation
patterns (noun-before-verb subject, noun-after-verb object, connective
clause link).  An external annotator can replace it through the
line-delimited child-process protocol in `external_annotator`.
"""

from __future__ import annotations

import json
import logging
import subprocess
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import IO, Iterable, Mapping

from winofusion.lexical import (
    CONNECTIVES,
    DEFINITE_DETERMINERS,
    DEFINITE_PRONOUNS,
    AUXILIARIES,
    INDEFINITE_DETERMINERS,
    PRONOUN_TABLE,
    Span,
    Token,
    genders_compatible,
    normalize_text,
    numbers_compatible,
    pos_lexicon,
    substitution_lexicon,
    tag_tokens,
    tokenize,
)
from winofusion.schema import (
    Schema,
    SchemaHalf,
    decode_half,
    decode_schema,
    encode_half,
    encode_schema,
    flip_answer,
    make_half,
)

logger = logging.getLogger(__name__)

KIND_FULL = "full_schema"
KIND_HALF = "half_only"
KIND_SEMI = "semi_template"

CLASS_FULL = "full_candidate"
CLASS_SEMI = "semi_template"
CLASS_REJECTED = "rejected"


@dataclass(frozen=True, slots=True)
class Relation:
    head: int
    dependent: int
    label: str  # "subj" | "obj" | "clause_link"


@dataclass(frozen=True)
class AnnotatedSentence:
    tokens: tuple[Token, ...]
    relations: tuple[Relation, ...]
    source_id: str = ""

    def text(self) -> str:
        return " ".join(t.surface for t in self.tokens)


@dataclass(frozen=True, slots=True)
class CandidateAntecedent:
    span: Span
    agreement_ok: bool
    in_triple: bool
    mitkov: float


@dataclass
class PipelineConfig:
    sentence_length_max: int = 40
    factor_weights: dict[str, float] = field(
        default_factory=lambda: {"agreement": 1.0, "triples": 1.0, "mitkov": 1.0})
    substitution_lexicon: dict[str, tuple[str, ...]] | None = None
    gender_lexicon: dict[str, str] | None = None
    number_rules: dict[str, str] | None = None

    def __post_init__(self) -> None:
        if not 8 <= self.sentence_length_max <= 60:
            raise ValueError(
                f"sentence_length_max must be in [8, 60], got {self.sentence_length_max}")
        for name in ("agreement", "triples", "mitkov"):
            w = self.factor_weights.get(name)
            if w is None or not 0.0 <= w <= 1.0:
                raise ValueError(f"factor weight {name!r} must be in [0, 1], got {w}")

    def substitutions(self) -> dict[str, tuple[str, ...]]:
        return self.substitution_lexicon if self.substitution_lexicon is not None \
            else substitution_lexicon()


@dataclass
class Draft:
    kind: str  # full_schema | half_only | semi_template
    template_id: int
    priority_key: tuple[bool, bool, float]
    schema: Schema | None = None
    half: SchemaHalf | None = None
    sentence: AnnotatedSentence | None = None
    usage_count: int = 0
    bias_label: str = "unknown"  # unknown | biased | unbiased
    subject_tag: str = ""

    def content_sentence_text(self) -> str:
        """The sentence the bias model and the workbench display."""
        if self.kind == KIND_FULL:
            return self.schema.first.sentence_text()
        if self.kind == KIND_HALF:
            return self.half.sentence_text()
        return self.sentence.text()


# ---------------------------------------------------------------------------
# Annotation
# ---------------------------------------------------------------------------

def annotate(sentence: str, config: PipelineConfig | None = None,
             source_id: str = "") -> AnnotatedSentence:
    """Tag every token and build subj/obj/clause_link relations with the
    shallow patterns.  Unknown words fall back to pos OTHER."""
    if not sentence.strip():
        raise ValueError("annotate requires non-empty text")
    tokens = tag_tokens(tokenize(sentence))
    if config is not None and (config.gender_lexicon or config.number_rules):
        tokens = _apply_overrides(tokens, config)
    relations = _build_relations(tokens)
    return AnnotatedSentence(tokens=tuple(tokens), relations=tuple(relations),
                             source_id=source_id)


def _apply_overrides(tokens: list[Token], config: PipelineConfig) -> list[Token]:
    out = []
    for tok in tokens:
        lower = tok.surface.lower()
        if config.gender_lexicon and tok.pos_tag in ("NOUN", "PROPN") \
                and lower in config.gender_lexicon:
            tok = replace(tok, gender=config.gender_lexicon[lower])
        if config.number_rules and lower in config.number_rules:
            tok = replace(tok, number=config.number_rules[lower])
        out.append(tok)
    return out


def noun_spans(tokens: tuple[Token, ...] | list[Token]) -> list[Span]:
    """Maximal runs of adjacent NOUN/PROPN tokens, so compounds like
    "martial artist" form a single span.  The head is the last token."""
    spans: list[Span] = []
    start = None
    for i, tok in enumerate(tokens):
        if tok.pos_tag in ("NOUN", "PROPN"):
            if start is None:
                start = i
        elif start is not None:
            spans.append(Span(start, i))
            start = None
    if start is not None:
        spans.append(Span(start, len(tokens)))
    return spans


def span_head(tokens: tuple[Token, ...], span: Span) -> Token:
    return tokens[span.end - 1]


def _build_relations(tokens: list[Token]) -> list[Relation]:
    verbs = [i for i, t in enumerate(tokens) if t.pos_tag == "VERB"]
    verb_set = set(verbs)
    # subj/obj items: noun-span heads plus pronoun tokens
    items = sorted([s.end - 1 for s in noun_spans(tokens)]
                   + [i for i, t in enumerate(tokens) if t.pos_tag == "PRON"])
    relations: list[Relation] = []
    for v in verbs:
        before = [i for i in items if i < v and not any(i < w < v for w in verb_set)]
        if before:
            relations.append(Relation(v, before[-1], "subj"))
        after = [i for i in items if i > v and not any(v < w < i for w in verb_set)]
        if after:
            relations.append(Relation(v, after[0], "obj"))
    for c, tok in enumerate(tokens):
        if tok.surface.lower() in CONNECTIVES:
            left = [v for v in verbs if v < c]
            right = [v for v in verbs if v > c]
            if left and right:
                relations.append(Relation(left[-1], right[0], "clause_link"))
    return relations


def _linked(relations: tuple[Relation, ...], v1: int, v2: int) -> bool:
    if v1 == v2:
        return False
    return any(r.label == "clause_link"
               and {r.head, r.dependent} == {v1, v2} for r in relations)


def in_triple(span: Span, s: AnnotatedSentence) -> bool:
    """True when the span is subj/obj of a verb that a clause link connects
    to a verb having a pronoun subj/obj."""
    head = span.end - 1
    my_verbs = [r.head for r in s.relations
                if r.dependent == head and r.label in ("subj", "obj")]
    if not my_verbs:
        return False
    pron_verbs = [r.head for r in s.relations
                  if r.label in ("subj", "obj")
                  and s.tokens[r.dependent].pos_tag == "PRON"]
    return any(_linked(s.relations, v1, v2)
               for v1 in my_verbs for v2 in pron_verbs)


# ---------------------------------------------------------------------------
# External annotator hook
# ---------------------------------------------------------------------------

class ExternalAnnotator:
    """Child-process replacement for the rule-based annotator.

    Protocol: one input sentence per line on stdin; one JSON object per
    line on stdout, shaped
    {"tokens": [{"surface", "pos", "number", "gender"}, ...],
     "relations": [[head, dep, label], ...]}.
    Use as a context manager; annotate() is synchronous per line.
    """

    def __init__(self, command: list[str]):
        self.command = command
        self._proc: subprocess.Popen | None = None

    def __enter__(self) -> "ExternalAnnotator":
        self._proc = subprocess.Popen(
            self.command, stdin=subprocess.PIPE, stdout=subprocess.PIPE,
            text=True, encoding="utf-8", bufsize=1)
        return self

    def __exit__(self, *exc) -> None:
        if self._proc is not None:
            self._proc.stdin.close()
            self._proc.wait(timeout=10)
            self._proc = None

    def annotate(self, sentence: str, source_id: str = "") -> AnnotatedSentence:
        if self._proc is None:
            raise RuntimeError("annotator process not started; use as a context manager")
        line = normalize_text(sentence)
        if not line:
            raise ValueError("annotate requires non-empty text")
        self._proc.stdin.write(line + "\n")
        self._proc.stdin.flush()
        raw = self._proc.stdout.readline()
        if not raw:
            raise RuntimeError("external annotator closed its output stream")
        obj = json.loads(raw)
        tokens = tuple(
            Token(surface=t["surface"], index=i, pos_tag=t["pos"],
                  number=t.get("number", "unknown"),
                  gender=t.get("gender", "unknown"))
            for i, t in enumerate(obj["tokens"]))
        relations = tuple(Relation(head=r[0], dependent=r[1], label=r[2])
                          for r in obj.get("relations", []))
        return AnnotatedSentence(tokens=tokens, relations=relations,
                                 source_id=source_id)


# ---------------------------------------------------------------------------
# Corpus ingestion
# ---------------------------------------------------------------------------

def ingest_corpus(source: IO[bytes] | bytes | str | Iterable[bytes],
                  config: PipelineConfig | None = None,
                  skipped: list[tuple[str, str]] | None = None,
                  annotator: ExternalAnnotator | None = None) -> list[AnnotatedSentence]:
    """One sentence per UTF-8 line.  Undecodable or over-long lines are
    skipped with a (source_id, reason) diagnostic appended to `skipped`
    (and logged).  An ExternalAnnotator replaces the built-in tagger when
    given."""
    config = config or PipelineConfig()
    if isinstance(source, str):
        source = source.encode("utf-8")
    if isinstance(source, bytes):
        raw_lines: Iterable[bytes] = source.split(b"\n")
    elif hasattr(source, "read"):
        raw_lines = source.read().split(b"\n")
    else:
        raw_lines = source

    def skip(source_id: str, reason: str) -> None:
        logger.info("corpus line skipped: %s (%s)", source_id, reason)
        if skipped is not None:
            skipped.append((source_id, reason))

    sentences: list[AnnotatedSentence] = []
    for lineno, raw in enumerate(raw_lines, start=1):
        source_id = f"line-{lineno}"
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError:
            skip(source_id, "DECODE")
            continue
        text = normalize_text(text)
        if not text:
            if raw.strip():
                skip(source_id, "EMPTY")
            continue
        if len(tokenize(text)) > config.sentence_length_max:
            skip(source_id, "LENGTH")
            continue
        if annotator is not None:
            sentences.append(annotator.annotate(text, source_id=source_id))
        else:
            sentences.append(annotate(text, config, source_id=source_id))
    return sentences


# ---------------------------------------------------------------------------
# Candidate filtering and target selection
# ---------------------------------------------------------------------------

def classify_sentence(s: AnnotatedSentence) -> str:
    """full_candidate / semi_template / rejected; a total partition."""
    spans = noun_spans(s.tokens)
    has_pron = any(t.pos_tag == "PRON" for t in s.tokens)
    if has_pron and len(spans) > 2:
        return CLASS_FULL
    if _has_agreeing_pair(s, spans):
        return CLASS_SEMI
    return CLASS_REJECTED


def _has_agreeing_pair(s: AnnotatedSentence, spans: list[Span]) -> bool:
    heads = [span_head(s.tokens, sp) for sp in spans]
    for i in range(len(heads)):
        for j in range(i + 1, len(heads)):
            if genders_compatible(heads[i].gender, heads[j].gender) \
                    and numbers_compatible(heads[i].number, heads[j].number):
                return True
    return False


def schema_pronoun(s: AnnotatedSentence) -> Span | None:
    """First definite personal pronoun in token order (policy: reflexives
    and possessives never serve as the schema pronoun)."""
    for i, tok in enumerate(s.tokens):
        if tok.pos_tag == "PRON" and tok.surface.lower() in DEFINITE_PRONOUNS:
            return Span(i, i + 1)
    return None


def mitkov_score(span: Span, s: AnnotatedSentence,
                 corpus_counts: Mapping[str, int] | None = None) -> float:
    """Indicator-sum salience: +2 first noun span, +1 definite determiner,
    +min(2, repeats) of the head noun over the corpus, +1 subject of a verb,
    -1 indefinite determiner."""
    score = 0.0
    spans = noun_spans(s.tokens)
    if spans and spans[0] == span:
        score += 2.0
    if span.start > 0:
        before = s.tokens[span.start - 1].surface.lower()
        if before in DEFINITE_DETERMINERS:
            score += 1.0
        elif before in INDEFINITE_DETERMINERS:
            score -= 1.0
    head = span_head(s.tokens, span).surface.lower()
    if corpus_counts is not None:
        occurrences = corpus_counts.get(head, 0)
    else:
        occurrences = sum(1 for sp in spans
                          if span_head(s.tokens, sp).surface.lower() == head)
    score += min(2.0, max(0.0, float(occurrences - 1)))
    head_index = span.end - 1
    if any(r.label == "subj" and r.dependent == head_index for r in s.relations):
        score += 1.0
    return score


def select_target_pair(s: AnnotatedSentence, pronoun: Span,
                       corpus_counts: Mapping[str, int] | None = None,
                       ) -> tuple[CandidateAntecedent, CandidateAntecedent] | None:
    """Best agreeing pair of candidate antecedents for the pronoun: both
    agree with the pronoun and each other in gender and number; pairs where
    both participate in triple relations win, then highest summed salience,
    then leftmost (deterministic)."""
    pron = s.tokens[pronoun.start]
    candidates = []
    for sp in noun_spans(s.tokens):
        head = span_head(s.tokens, sp)
        if genders_compatible(head.gender, pron.gender) \
                and numbers_compatible(head.number, pron.number):
            candidates.append(CandidateAntecedent(
                span=sp, agreement_ok=True,
                in_triple=in_triple(sp, s),
                mitkov=mitkov_score(sp, s, corpus_counts)))
    best = None
    best_key = None
    for i in range(len(candidates)):
        for j in range(i + 1, len(candidates)):
            a, b = candidates[i], candidates[j]
            ha = span_head(s.tokens, a.span)
            hb = span_head(s.tokens, b.span)
            if not (genders_compatible(ha.gender, hb.gender)
                    and numbers_compatible(ha.number, hb.number)):
                continue
            key = (a.in_triple and b.in_triple, a.mitkov + b.mitkov,
                   -a.span.start, -b.span.start)
            if best_key is None or key > best_key:
                best, best_key = (a, b), key
    return best


# ---------------------------------------------------------------------------
# Question generation and special-word substitution
# ---------------------------------------------------------------------------

def _clause_bounds(s: AnnotatedSentence, pronoun: Span) -> tuple[int, int] | None:
    """Token range of the pronoun's clause: after the nearest connective
    before the pronoun, up to the next connective or end of sentence; or
    the whole sentence when the pronoun opens it."""
    conn_before = [i for i, t in enumerate(s.tokens)
                   if i < pronoun.start and t.surface.lower() in CONNECTIVES]
    if conn_before:
        start = conn_before[-1] + 1
    elif pronoun.start == 0:
        start = 0
    else:
        return None
    end = len(s.tokens)
    for i in range(pronoun.end, len(s.tokens)):
        if s.tokens[i].surface.lower() in CONNECTIVES:
            end = i
            break
    while end > start and s.tokens[end - 1].pos_tag == "PUNCT":
        end -= 1
    if end <= start:
        return None
    return start, end


def generate_question(s: AnnotatedSentence, pronoun: Span) -> str | None:
    """Wh-question formed from the pronoun's clause with the pronoun
    removed: "Who" for animate pronouns, "What" otherwise.  None when no
    clause boundary (or no predicate) is found."""
    bounds = _clause_bounds(s, pronoun)
    if bounds is None:
        return None
    start, end = bounds
    clause = [t for t in s.tokens[start:end]
              if not (pronoun.start <= t.index < pronoun.end)]
    if not any(t.pos_tag == "VERB" for t in clause):
        return None
    pron_surface = s.tokens[pronoun.start].surface.lower()
    animate = PRONOUN_TABLE.get(pron_surface, ("", "", True))[2]
    wh = "Who" if animate else "What"
    words = [wh] + [t.surface for t in clause]
    if len(words) > 1 and words[1][0].isupper() and words[1].lower() in pos_lexicon():
        # sentence-initial capitalization, not a proper noun
        if tag_tokens([words[1].lower()])[0].pos_tag != "PROPN":
            words[1] = words[1].lower()
    return " ".join(words) + "?"


def find_special_word(s: AnnotatedSentence, pronoun: Span) -> Span | None:
    """The predicate adjective/participle of the pronoun's clause, else the
    clause's main (non-auxiliary) verb, else its first verb."""
    bounds = _clause_bounds(s, pronoun)
    if bounds is None:
        return None
    _, end = bounds
    first_verb = None
    main_verb = None
    for i in range(pronoun.end, end):
        tok = s.tokens[i]
        if tok.pos_tag == "ADJ":
            return Span(i, i + 1)
        if tok.pos_tag == "VERB":
            prev = s.tokens[i - 1].surface.lower() if i > 0 else ""
            if tok.surface.lower().endswith(("ed", "ing")) and prev in AUXILIARIES:
                return Span(i, i + 1)  # participle after auxiliary
            if first_verb is None:
                first_verb = i
            if main_verb is None and tok.surface.lower() not in AUXILIARIES:
                main_verb = i
    pick = main_verb if main_verb is not None else first_verb
    return Span(pick, pick + 1) if pick is not None else None


def substitute_special_word(first: SchemaHalf,
                            lexicon: Mapping[str, tuple[str, ...]] | None = None,
                            ) -> SchemaHalf | None:
    """Second half: same sentence with the special word swapped for its
    first lexicon alternative, question regenerated, answer flipped.
    None when the lexicon has no entry."""
    lexicon = substitution_lexicon() if lexicon is None else lexicon
    word = first.special_word_text().lower()
    alternatives = lexicon.get(word)
    if not alternatives:
        return None
    replacement = alternatives[0].split()
    span = first.special_word_span
    surfaces = first.surfaces()
    new_surfaces = surfaces[:span.start] + replacement + surfaces[span.end:]
    new_span = Span(span.start, span.start + len(replacement))
    shift = len(replacement) - len(span)
    pron = first.pronoun_span
    if pron.start >= span.end:
        pron = Span(pron.start + shift, pron.end + shift)
    second = make_half(
        sentence=new_surfaces, pronoun_span=pron,
        target_a=first.target_a, target_b=first.target_b,
        question="", correct_answer=flip_answer(first.correct_answer),
        special_word_span=new_span)
    annotated = AnnotatedSentence(tokens=second.sentence,
                                  relations=tuple(_build_relations(list(second.sentence))))
    question = generate_question(annotated, pron)
    if question is None:
        return None
    return replace(second, question=question)


# ---------------------------------------------------------------------------
# Draft building and ranking
# ---------------------------------------------------------------------------

def _subject_tag(s: AnnotatedSentence) -> str:
    subjects = [r.dependent for r in s.relations if r.label == "subj"
                and s.tokens[r.dependent].pos_tag in ("NOUN", "PROPN")]
    if subjects:
        return s.tokens[subjects[0]].surface.lower()
    spans = noun_spans(s.tokens)
    if spans:
        return span_head(s.tokens, spans[0]).surface.lower()
    return "unknown"


def _target_text(s: AnnotatedSentence, span: Span) -> str:
    words = [t.surface for t in s.tokens[span.start:span.end]]
    if span.start > 0 and s.tokens[span.start - 1].pos_tag == "DET":
        words.insert(0, s.tokens[span.start - 1].surface.lower())
    return " ".join(words)


def _semi_priority(s: AnnotatedSentence,
                   corpus_counts: Mapping[str, int] | None) -> tuple[bool, bool, float]:
    spans = noun_spans(s.tokens)
    best = 0.0
    best_triples = False
    found = False
    for i in range(len(spans)):
        for j in range(i + 1, len(spans)):
            ha, hb = span_head(s.tokens, spans[i]), span_head(s.tokens, spans[j])
            if not (genders_compatible(ha.gender, hb.gender)
                    and numbers_compatible(ha.number, hb.number)):
                continue
            total = (mitkov_score(spans[i], s, corpus_counts)
                     + mitkov_score(spans[j], s, corpus_counts))
            triples = in_triple(spans[i], s) and in_triple(spans[j], s)
            if not found or (triples, total) > (best_triples, best):
                best, best_triples, found = total, triples, True
    return (False, best_triples, best)


def corpus_head_counts(sentences: Iterable[AnnotatedSentence]) -> Counter[str]:
    counts: Counter[str] = Counter()
    for s in sentences:
        for sp in noun_spans(s.tokens):
            counts[span_head(s.tokens, sp).surface.lower()] += 1
    return counts


def build_drafts(sentences: list[AnnotatedSentence],
                 config: PipelineConfig | None = None,
                 start_id: int = 1) -> list[Draft]:
    """Classify every sentence and emit drafts: full schemas where question
    generation and substitution succeed, halves when only substitution
    fails, semi templates otherwise (and for semi-classified sentences)."""
    config = config or PipelineConfig()
    counts = corpus_head_counts(sentences)
    subs = config.substitutions()
    drafts: list[Draft] = []
    next_id = start_id

    def emit(**kwargs) -> None:
        nonlocal next_id
        drafts.append(Draft(template_id=next_id, **kwargs))
        next_id += 1

    for s in sentences:
        cls = classify_sentence(s)
        if cls == CLASS_REJECTED:
            continue
        if cls == CLASS_SEMI:
            emit(kind=KIND_SEMI, sentence=s, subject_tag=_subject_tag(s),
                 priority_key=_semi_priority(s, counts))
            continue

        def demote_semi() -> None:
            if _has_agreeing_pair(s, noun_spans(s.tokens)):
                emit(kind=KIND_SEMI, sentence=s, subject_tag=_subject_tag(s),
                     priority_key=_semi_priority(s, counts))

        pronoun = schema_pronoun(s)
        if pronoun is None:
            demote_semi()
            continue
        pair = select_target_pair(s, pronoun, counts)
        if pair is None:
            demote_semi()
            continue
        cand_a, cand_b = pair
        priority = (True, cand_a.in_triple and cand_b.in_triple,
                    cand_a.mitkov + cand_b.mitkov)
        question = generate_question(s, pronoun)
        special = find_special_word(s, pronoun) if question is not None else None
        if question is None or special is None:
            demote_semi()
            continue
        first = SchemaHalf(
            sentence=s.tokens, pronoun_span=pronoun,
            target_a=_target_text(s, cand_a.span),
            target_b=_target_text(s, cand_b.span),
            question=question, correct_answer="A",  # crowd selects real answers
            special_word_span=special)
        second = substitute_special_word(first, subs)
        if second is None:
            emit(kind=KIND_HALF, half=first, subject_tag=_subject_tag(s),
                 priority_key=priority)
            continue
        schema = Schema(first=first, second=second,
                        subject_tag=_subject_tag(s), origin="generated")
        emit(kind=KIND_FULL, schema=schema, subject_tag=_subject_tag(s),
             priority_key=priority)
    return drafts


def rank_drafts(drafts: list[Draft], config: PipelineConfig | None = None,
                bias_scores: Mapping[int, float] | None = None) -> list[Draft]:
    """Descending by (unbiased probability, weighted factor score); ties by
    template_id ascending.  Pure permutation of the input."""
    config = config or PipelineConfig()
    bias_scores = bias_scores or {}
    weights = config.factor_weights
    values = [d.priority_key[2] for d in drafts]
    lo, hi = (min(values), max(values)) if values else (0.0, 0.0)

    def norm(x: float) -> float:
        return (x - lo) / (hi - lo) if hi > lo else 0.5

    def key(d: Draft):
        t1, t2, t3 = d.priority_key
        weighted = (weights["agreement"] * t1 + weights["triples"] * t2
                    + weights["mitkov"] * norm(t3))
        return (-bias_scores.get(d.template_id, 0.5), -weighted, d.template_id)

    return sorted(drafts, key=key)


# ---------------------------------------------------------------------------
# Draft serialization (snapshots, queue inspection, `gen` output)
# ---------------------------------------------------------------------------

def draft_to_dict(d: Draft) -> dict:
    obj = {
        "kind": d.kind,
        "template_id": d.template_id,
        "priority_key": [d.priority_key[0], d.priority_key[1], d.priority_key[2]],
        "usage_count": d.usage_count,
        "bias_label": d.bias_label,
        "subject_tag": d.subject_tag,
    }
    if d.kind == KIND_FULL:
        obj["schema"] = encode_schema(d.schema)
    elif d.kind == KIND_HALF:
        obj["half"] = encode_half(d.half)
    else:
        obj["sentence"] = d.sentence.text()
        obj["source_id"] = d.sentence.source_id
    return obj


def draft_from_dict(obj: dict) -> Draft:
    kind = obj["kind"]
    schema = half = sentence = None
    if kind == KIND_FULL:
        schema = decode_schema(obj["schema"])
    elif kind == KIND_HALF:
        half = decode_half(obj["half"])
    else:
        sentence = annotate(obj["sentence"], source_id=obj.get("source_id", ""))
    pk = obj["priority_key"]
    return Draft(kind=kind, template_id=obj["template_id"],
                 priority_key=(bool(pk[0]), bool(pk[1]), float(pk[2])),
                 schema=schema, half=half, sentence=sentence,
                 usage_count=obj["usage_count"], bias_label=obj["bias_label"],
                 subject_tag=obj["subject_tag"])
