import random

import pytest

from sdescrack import ngrams, sdes


@pytest.fixture(scope="session")
def corpus():
    return ngrams.load_default_corpus()


@pytest.fixture(scope="session")
def reference():
    return ngrams.load_reference_tables((2,))


@pytest.fixture(scope="session")
def english_attack_case(corpus):
    """A fixed 1000-char message encrypted under a known key."""
    rng = random.Random(4242)
    start = rng.randrange(len(corpus) - 1000)
    message = corpus[start : start + 1000]
    true_key = rng.randrange(sdes.KEY_SPACE)
    return message, true_key, sdes.encrypt_bytes(message, true_key)
