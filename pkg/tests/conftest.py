import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cohprobe.coherence import builtin_corpus
from cohprobe.gbasis import complete_to_degree
from cohprobe.linalg import QQ, PrimeField

FAST = PrimeField(32003)


@pytest.fixture(scope="session")
def fast_field():
    return FAST


@pytest.fixture(scope="session")
def corpus_fast():
    """label -> presentation over F32003."""
    return {e.label: e for e in builtin_corpus(FAST)}


@pytest.fixture(scope="session")
def corpus_q():
    return {e.label: e for e in builtin_corpus(QQ)}


@pytest.fixture(scope="session")
def tgb_fast(corpus_fast):
    """label -> completed basis at D=10 over F32003, shared across tests."""
    cache = {}

    def get(label, D=10):
        key = (label, D)
        if key not in cache:
            cache[key] = complete_to_degree(corpus_fast[label].presentation, D)
        return cache[key]

    return get
