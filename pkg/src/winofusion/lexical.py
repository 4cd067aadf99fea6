"""Tokenization and word-level tagging backed by the bundled word tables.

Everything here is deterministic table lookup plus suffix fallbacks; there
is no learned component.  The tag set is coarse on purpose: NOUN, PROPN,
PRON, VERB, ADJ, ADV, DET, ADP, PUNCT, OTHER.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

POS_TAGS = frozenset({"NOUN", "PROPN", "PRON", "VERB", "ADJ", "ADV",
                      "DET", "ADP", "PUNCT", "OTHER"})
NUMBERS = frozenset({"singular", "plural", "unknown"})
GENDERS = frozenset({"masculine", "feminine", "neuter", "either", "unknown"})

# pronoun surface -> (number, gender, animate)
PRONOUN_TABLE: dict[str, tuple[str, str, bool]] = {
    "he": ("singular", "masculine", True),
    "him": ("singular", "masculine", True),
    "himself": ("singular", "masculine", True),
    "his": ("singular", "masculine", True),
    "she": ("singular", "feminine", True),
    "her": ("singular", "feminine", True),
    "herself": ("singular", "feminine", True),
    "hers": ("singular", "feminine", True),
    "it": ("singular", "neuter", False),
    "its": ("singular", "neuter", False),
    "itself": ("singular", "neuter", False),
    "they": ("plural", "either", True),
    "them": ("plural", "either", True),
    "themselves": ("plural", "either", True),
    "their": ("plural", "either", True),
    "theirs": ("plural", "either", True),
    "i": ("singular", "either", True),
    "me": ("singular", "either", True),
    "myself": ("singular", "either", True),
    "we": ("plural", "either", True),
    "us": ("plural", "either", True),
    "ourselves": ("plural", "either", True),
    "you": ("unknown", "either", True),
    "yourself": ("singular", "either", True),
    "yourselves": ("plural", "either", True),
    "who": ("unknown", "either", True),
    "whom": ("unknown", "either", True),
}

# The pronouns a schema may ask the solver to resolve.  Reflexives and
# possessives corefer locally and are never served as the schema pronoun.
DEFINITE_PRONOUNS = frozenset({"he", "she", "it", "they", "him", "her", "them"})

DEFINITE_DETERMINERS = frozenset({"the", "this", "that", "these", "those"})
INDEFINITE_DETERMINERS = frozenset({"a", "an"})
OTHER_DETERMINERS = frozenset({"some", "any", "no", "each", "every",
                               "either", "neither", "both", "all", "another"})
DETERMINERS = DEFINITE_DETERMINERS | INDEFINITE_DETERMINERS | OTHER_DETERMINERS

PREPOSITIONS = frozenset("""
    of in on at by with from to for about into over under after before
    between during against through near across behind beside among along
    around off above below within without toward towards upon inside
    outside beneath despite per until
""".split())

# Clause connectives: clause-link triggers and question-clause openers.
CONNECTIVES = frozenset({"because", "so", "since", "although", "and", "but"})

AUXILIARIES = frozenset("""
    am is are was were be been being has have had having do does did doing
    will would shall should can could may might must
""".split())

SINGULAR_AUXILIARIES = frozenset({"is", "was", "has", "does"})
PLURAL_AUXILIARIES = frozenset({"are", "were", "have", "do"})

_PUNCT_CHARS = set(".,;:!?\"'()[]{}«»“”‘’–—…/\\")

_DATA_PACKAGE = "winofusion.data"


@dataclass(frozen=True, slots=True)
class Span:
    """Half-open token index range [start, end)."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start < 0 or self.end < self.start:
            raise ValueError(f"bad span ({self.start}, {self.end})")

    def __len__(self) -> int:
        return self.end - self.start

    def indices(self) -> range:
        return range(self.start, self.end)

    def overlaps(self, other: "Span") -> bool:
        return self.start < other.end and other.start < self.end


@dataclass(frozen=True, slots=True)
class Token:
    surface: str
    index: int
    pos_tag: str
    number: str
    gender: str

    def __post_init__(self) -> None:
        if not self.surface:
            raise ValueError("token surface must be non-empty")
        if self.pos_tag not in POS_TAGS:
            raise ValueError(f"unknown pos tag {self.pos_tag!r}")


def _read_data(name: str) -> str:
    return resources.files(_DATA_PACKAGE).joinpath(name).read_text("utf-8")


@lru_cache(maxsize=None)
def stopwords() -> frozenset[str]:
    return frozenset(_read_data("stopwords.txt").split())


@lru_cache(maxsize=None)
def pos_lexicon() -> dict[str, tuple[str, str]]:
    table = {}
    for line in _read_data("lexicon.tsv").splitlines():
        word, pos, number = line.split("\t")
        table[word] = (pos, number)
    return table


@lru_cache(maxsize=None)
def gender_gazetteer() -> dict[str, str]:
    table = {}
    for line in _read_data("gender.tsv").splitlines():
        word, gender = line.split("\t")
        table[word] = gender
    return table


@lru_cache(maxsize=None)
def common_words(top: int = 2000) -> frozenset[str]:
    words = _read_data("common_words.txt").split()
    return frozenset(words[:top])


@lru_cache(maxsize=None)
def substitution_lexicon() -> dict[str, tuple[str, ...]]:
    return load_substitution_table(_read_data("substitutions.tsv"))


def load_substitution_table(text: str) -> dict[str, tuple[str, ...]]:
    """Parse a two-column word<TAB>alt1,alt2 substitution table."""
    table: dict[str, tuple[str, ...]] = {}
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        word, _, alts = line.partition("\t")
        table[word.strip()] = tuple(a.strip() for a in alts.split(",") if a.strip())
    return table


def normalize_text(text: str) -> str:
    """NFC-normalize and collapse all whitespace runs to single spaces."""
    return " ".join(unicodedata.normalize("NFC", text).split())


def tokenize(text: str) -> list[str]:
    """Whitespace-split, then peel leading/trailing punctuation into
    separate tokens.  Internal hyphens and apostrophes stay attached, so
    "under-attack." becomes ["under-attack", "."]."""
    out: list[str] = []
    for chunk in normalize_text(text).split():
        lead: list[str] = []
        while chunk and chunk[0] in _PUNCT_CHARS:
            lead.append(chunk[0])
            chunk = chunk[1:]
        trail: list[str] = []
        while chunk and chunk[-1] in _PUNCT_CHARS:
            trail.append(chunk[-1])
            chunk = chunk[:-1]
        out.extend(lead)
        if chunk:
            out.append(chunk)
        out.extend(reversed(trail))
    return out


def is_punct(surface: str) -> bool:
    return bool(surface) and all(c in _PUNCT_CHARS for c in surface)


def _noun_gender(lower: str) -> str:
    gaz = gender_gazetteer()
    if lower in gaz:
        return gaz[lower]
    if len(lower) > 4 and lower.endswith(("ist", "ists", "ian", "ians")):
        return "either"
    return "neuter"


def _propn_gender(lower: str) -> str:
    return gender_gazetteer().get(lower, "unknown")


def tag_tokens(surfaces: list[str]) -> list[Token]:
    """Assign pos/number/gender to each surface.

    Lookup order: punctuation, closed classes (pronoun, determiner,
    preposition), the bundled lexicon, then the suffix fallbacks
    (-ly; -ed/-ing after an auxiliary; capitalized mid-sentence; -s/-es),
    and finally OTHER.
    """
    lexicon = pos_lexicon()
    tokens: list[Token] = []
    for i, surface in enumerate(surfaces):
        lower = surface.lower()
        pos, number, gender = None, "unknown", "unknown"

        if is_punct(surface):
            pos = "PUNCT"
        elif lower in PRONOUN_TABLE:
            pos = "PRON"
            number, gender, _ = PRONOUN_TABLE[lower]
        elif lower in DETERMINERS:
            pos = "DET"
        elif lower in PREPOSITIONS:
            pos = "ADP"
        elif surface in lexicon or lower in lexicon:
            pos, number = lexicon.get(surface) or lexicon[lower]
            if pos == "NOUN":
                gender = _noun_gender(lower)
            elif pos == "PROPN":
                gender = _propn_gender(lower)
        elif lower.endswith("ly") and len(lower) > 3:
            pos = "ADV"
        elif (lower.endswith(("ed", "ing")) and i > 0
              and surfaces[i - 1].lower() in AUXILIARIES):
            pos = "VERB"
        elif surface[:1].isupper() and i > 0:
            pos, number = "PROPN", "singular"
            gender = _propn_gender(lower)
        elif lower.endswith("s") and len(lower) > 2:
            pos, number = "NOUN", "plural"
            stem = lower[:-2] if lower.endswith("es") else lower[:-1]
            gender = _noun_gender(stem)
        else:
            pos = "OTHER"

        tokens.append(Token(surface=surface, index=i, pos_tag=pos,
                            number=number, gender=gender))
    return tokens


def tag_text(text: str) -> list[Token]:
    return tag_tokens(tokenize(text))


def content_words(text: str) -> set[str]:
    """Case-folded surfaces that are neither stopwords, punctuation, nor
    determiners/prepositions.  The relatedness check and the bias model
    both run on these."""
    stops = stopwords()
    out = set()
    for tok in tag_text(text):
        lower = tok.surface.lower()
        if tok.pos_tag in ("DET", "ADP", "PUNCT"):
            continue
        if lower in stops:
            continue
        out.add(lower)
    return out


def genders_compatible(a: str, b: str) -> bool:
    """Two genders agree when equal or when either side is "either".
    "unknown" never agrees (conservative)."""
    if a == "unknown" or b == "unknown":
        return False
    return a == b or a == "either" or b == "either"


def numbers_compatible(a: str, b: str) -> bool:
    if a == "unknown" or b == "unknown":
        return False
    return a == b
