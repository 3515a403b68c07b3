"""Shared test fixtures and document generators."""

import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from binjson import Real

REPO_ROOT = Path(__file__).resolve().parent.parent
CORPUS_DIR = REPO_ROOT / "corpus"


def reals():
    return st.builds(
        Real,
        st.sampled_from([1, -1]),
        st.integers(min_value=0, max_value=(1 << 63) - 1).map(str),
        st.integers(min_value=-200, max_value=200),
    )


def json_values(max_depth=4):
    scalars = st.one_of(
        st.none(),
        st.booleans(),
        st.integers(min_value=-(1 << 63), max_value=(1 << 63) - 1),
        reals(),
        st.text(max_size=12),
    )
    return st.recursive(
        scalars,
        lambda children: st.one_of(
            st.lists(children, max_size=6),
            st.dictionaries(st.text(max_size=8), children, max_size=6),
        ),
        max_leaves=25,
    )


# Word stock for the mass random generator: repetition exercises the
# string pool, the unicode entries exercise multi-byte lengths.
_WORDS = (
    "", "a", "id", "name", "value", "nested", "x", "yz", "long-token-here",
    "répété", "data", "ше", "配置", "flag", "k1", "k2", "deep/path/segment",
)


def random_document(rng, depth=6, width=8):
    """Cheap random document for mass round-trip loops.

    Leaf-heavy by construction so a million draws stay fast, but every
    draw respects the depth and width bounds.
    """
    roll = rng.random()
    if depth <= 0 or roll < 0.55:
        kind = rng.randrange(6)
        if kind == 0:
            return None
        if kind == 1:
            return rng.random() < 0.5
        if kind == 2:
            return rng.randrange(-(1 << 63), 1 << 63)
        if kind == 3:
            return rng.randrange(-100, 100)
        if kind == 4:
            mantissa = rng.randrange(-(10 ** 6), 10 ** 6)
            return Real(1 if mantissa >= 0 else -1, str(abs(mantissa)) or "0", rng.randrange(-8, 8)) if mantissa else 0
        word = rng.choice(_WORDS)
        return word + (str(rng.randrange(100)) if rng.random() < 0.3 else "")
    if roll < 0.8:
        return [random_document(rng, depth - 1, width) for _ in range(rng.randrange(width + 1))]
    out = {}
    for _ in range(rng.randrange(width + 1)):
        key = rng.choice(_WORDS) + (str(rng.randrange(30)) if rng.random() < 0.4 else "")
        out[key] = random_document(rng, depth - 1, width)
    return out


@pytest.fixture
def rng():
    return random.Random(0xB17)
