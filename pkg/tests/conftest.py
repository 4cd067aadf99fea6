from __future__ import annotations

import random
from importlib import resources

import pytest

from winofusion.config import Config
from winofusion.engine import Platform
from winofusion.lexical import Span
from winofusion.schema import Schema, make_half

MARTIAL_FIRST = ("The martial artist defended himself from the drug dealer "
                 "because he was violent .")
MARTIAL_SECOND = ("The martial artist defended himself from the drug dealer "
                  "because he was under-attack .")


@pytest.fixture
def martial_artist_schema() -> Schema:
    """Normalized two-half fixture: the special word flips the answer from
    the drug dealer to the martial artist."""
    first = make_half(MARTIAL_FIRST.split(), Span(10, 11), "The martial artist",
                      "the drug dealer", "Who was violent?", "B", Span(12, 13))
    second = make_half(MARTIAL_SECOND.split(), Span(10, 11), "The martial artist",
                       "the drug dealer", "Who was under-attack?", "A", Span(12, 13))
    return Schema(first=first, second=second, subject_tag="artist",
                  origin="generated")


@pytest.fixture(scope="session")
def corpus_text() -> str:
    return resources.files("winofusion.data").joinpath("corpus.txt").read_text("utf-8")


@pytest.fixture(scope="session")
def corpus_bytes(corpus_text) -> bytes:
    return corpus_text.encode("utf-8")


class TickingClock:
    """Deterministic clock advancing a fixed step per call."""

    def __init__(self, start: float = 1_764_388_800.0, step: float = 7.0):
        # start falls on a Saturday (UTC)
        self.now = start
        self.step = step

    def __call__(self) -> float:
        self.now += self.step
        return self.now


@pytest.fixture
def clock() -> TickingClock:
    return TickingClock()


def make_platform(tmp_path=None, seed: int = 11, clock=None, **config_kwargs) -> Platform:
    config = Config(rng_seed=seed, snapshot_every=config_kwargs.pop("snapshot_every", 200),
                    **config_kwargs)
    return Platform(config=config, storage_dir=tmp_path,
                    clock=clock or TickingClock())


@pytest.fixture
def platform(tmp_path, clock) -> Platform:
    return make_platform(tmp_path / "store", clock=clock)


def seed_with_first_draw_below(threshold: float) -> int:
    return next(s for s in range(10_000)
                if random.Random(s).random() < threshold)


def seed_with_first_draw_at_least(threshold: float) -> int:
    return next(s for s in range(10_000)
                if random.Random(s).random() >= threshold)
