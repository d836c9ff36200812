"""Letter n-gram statistics and the cost function that scores candidate keys.

A candidate key is scored by decrypting the ciphertext and comparing the
unigram/bigram/trigram frequencies of the result against reference English
frequencies: cost = alpha*L1(uni) + beta*L1(bi) + gamma*L1(tri), where each
L1 runs over the union of observed n-grams with absent entries counted as
zero. Lower is better. The default weighting is bigram-only.

Statistics are case-insensitive over A-Z; every other byte is dropped and
the surviving letter stream is treated as contiguous.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .sdes import decrypt_bytes

ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"

_DATA_DIR = Path(__file__).resolve().parent / "data"
_TABLE_FILES = {1: "unigrams.tsv", 2: "bigrams.tsv", 3: "trigrams.tsv"}

_LOWER_TO_UPPER = bytes(
    b - 32 if ord("a") <= b <= ord("z") else b for b in range(256)
)
_NON_LETTERS = bytes(
    b for b in range(256) if not (65 <= b <= 90 or 97 <= b <= 122)
)


def normalize_letters(text: bytes | str) -> bytes:
    """Uppercase A-Z stream of ``text`` with all other bytes removed."""
    if isinstance(text, str):
        text = text.encode("utf-8", "ignore")
    return text.translate(_LOWER_TO_UPPER, _NON_LETTERS)


@dataclass
class NGramTable:
    """Relative frequencies of fixed-length letter windows.

    ``freq`` maps n-grams (uppercase strings of length ``order``) to values
    in [0, 1]; a non-empty table sums to 1 within float error.
    """

    order: int
    freq: dict[str, float]

    def total(self) -> float:
        return math.fsum(self.freq.values())


@lru_cache(maxsize=None)
def _ngram_for_code(code: int, order: int) -> str:
    letters = []
    for _ in range(order):
        code, rem = divmod(code, 26)
        letters.append(ALPHABET[rem])
    return "".join(reversed(letters))


def _count_table(letters: bytes, order: int) -> NGramTable:
    if len(letters) < order:
        return NGramTable(order, {})
    arr = np.frombuffer(letters, dtype=np.uint8).astype(np.int64) - 65
    codes = arr[: len(arr) - order + 1].copy()
    for i in range(1, order):
        codes *= 26
        codes += arr[i : len(arr) - order + 1 + i]
    counts = np.bincount(codes, minlength=26**order)
    total = int(counts.sum())
    nonzero = np.flatnonzero(counts)
    freq = {
        _ngram_for_code(int(c), order): int(counts[c]) / total for c in nonzero
    }
    return NGramTable(order, freq)


def ingest_corpus(text: bytes | str, order: int) -> NGramTable:
    """Build a reference frequency table from a training corpus."""
    if order not in (1, 2, 3):
        raise ValueError(f"order must be 1, 2 or 3, got {order}")
    letters = normalize_letters(text)
    if not letters:
        raise ValueError("corpus contains no letters")
    return _count_table(letters, order)


def observe(text: bytes | str, order: int) -> NGramTable:
    """Frequency table of a decrypted candidate message.

    Same mechanics as ingest_corpus, but letterless text yields an empty
    table (its L1 distance to any reference is then the full reference
    mass).
    """
    if order not in (1, 2, 3):
        raise ValueError(f"order must be 1, 2 or 3, got {order}")
    return _count_table(normalize_letters(text), order)


def l1_distance(a: NGramTable, b: NGramTable) -> float:
    """Sum of |a - b| over the union of n-grams, absent entries as zero."""
    if a.order != b.order:
        raise ValueError(f"order mismatch: {a.order} vs {b.order}")

    def diffs():
        for key, value in a.freq.items():
            yield abs(value - b.freq.get(key, 0.0))
        for key, value in b.freq.items():
            if key not in a.freq:
                yield value

    # fsum makes the result independent of iteration order, so the
    # distance is exactly symmetric.
    return math.fsum(diffs())


@dataclass(frozen=True)
class CostWeights:
    """Weights of the unigram/bigram/trigram terms; must sum to 1."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        if min(self.alpha, self.beta, self.gamma) < 0:
            raise ValueError("weights must be non-negative")
        if abs(self.alpha + self.beta + self.gamma - 1.0) > 1e-9:
            raise ValueError("weights must sum to 1")

    def orders(self) -> tuple[int, ...]:
        """The n-gram orders that actually contribute."""
        return tuple(
            order
            for order, w in ((1, self.alpha), (2, self.beta), (3, self.gamma))
            if w > 0
        )


#: Default per the bigram-only weighting (trigram scoring is cubic in the
#: alphabet size and the unigram term adds little discrimination).
BIGRAM_ONLY = CostWeights(0.0, 1.0, 0.0)


def weighted_cost(
    reference: dict[int, NGramTable],
    observed: dict[int, NGramTable],
    alpha: float,
    beta: float,
    gamma: float,
) -> float:
    """Weighted sum of per-order L1 distances; no weight validation."""
    total = 0.0
    for order, weight in ((1, alpha), (2, beta), (3, gamma)):
        if weight == 0:
            continue
        try:
            ref, obs = reference[order], observed[order]
        except KeyError:
            raise ValueError(
                f"order-{order} table required for a nonzero weight"
            ) from None
        total += weight * l1_distance(ref, obs)
    return total


def cost(
    reference: dict[int, NGramTable],
    observed: dict[int, NGramTable],
    weights: CostWeights,
) -> float:
    """Suitability of a candidate decryption: lower is more English-like."""
    return weighted_cost(
        reference, observed, weights.alpha, weights.beta, weights.gamma
    )


def score_key(
    key: int,
    ciphertext: bytes,
    reference: dict[int, NGramTable],
    weights: CostWeights = BIGRAM_ONLY,
) -> float:
    """Cost of decrypting ``ciphertext`` with ``key``."""
    if not ciphertext:
        raise ValueError("ciphertext is empty")
    plain = decrypt_bytes(ciphertext, key)
    observed = {order: observe(plain, order) for order in weights.orders()}
    return cost(reference, observed, weights)


class KeyScorer:
    """Memoized score_key against one fixed ciphertext.

    ``calls`` counts every score request (the honest work measure for
    search algorithms); the memo just avoids recomputing the pure score.
    A memo dict may be shared across scorers for the same ciphertext.
    """

    def __init__(
        self,
        ciphertext: bytes,
        reference: dict[int, NGramTable],
        weights: CostWeights = BIGRAM_ONLY,
        memo: dict[int, float] | None = None,
    ):
        if not ciphertext:
            raise ValueError("ciphertext is empty")
        self.ciphertext = bytes(ciphertext)
        self.reference = reference
        self.weights = weights
        self.calls = 0
        self._memo = {} if memo is None else memo

    def score(self, key: int) -> float:
        self.calls += 1
        value = self._memo.get(key)
        if value is None:
            value = score_key(key, self.ciphertext, self.reference, self.weights)
            self._memo[key] = value
        return value


def write_table(table: NGramTable, path: str | Path) -> None:
    """Write one `<ngram>\\t<frequency>` row per entry, sorted, no header."""
    lines = [
        f"{ngram}\t{value!r}\n" for ngram, value in sorted(table.freq.items())
    ]
    Path(path).write_text("".join(lines), encoding="utf-8", newline="\n")


def read_table(path: str | Path) -> NGramTable:
    """Load a TSV table; validates symbols and that frequencies sum to 1."""
    path = Path(path)
    freq: dict[str, float] = {}
    order = 0
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            ngram, value = line.split("\t")
        except ValueError:
            raise ValueError(f"{path}:{lineno}: expected `<ngram>\\t<frequency>`")
        if order == 0:
            order = len(ngram)
        if len(ngram) != order or any(c not in ALPHABET for c in ngram):
            raise ValueError(f"{path}:{lineno}: bad n-gram {ngram!r}")
        freq[ngram] = float(value)
    if not freq:
        raise ValueError(f"{path}: empty table")
    if min(freq.values()) < 0:
        raise ValueError(f"{path}: negative frequency")
    if abs(math.fsum(freq.values()) - 1.0) > 1e-6:
        raise ValueError(f"{path}: frequencies do not sum to 1")
    return NGramTable(order, freq)


@lru_cache(maxsize=1)
def load_default_corpus() -> bytes:
    return (_DATA_DIR / "corpus.txt").read_bytes()


@lru_cache(maxsize=None)
def _load_reference_table(order: int) -> NGramTable:
    path = _DATA_DIR / _TABLE_FILES[order]
    if path.exists():
        return read_table(path)
    return ingest_corpus(load_default_corpus(), order)


def load_reference_tables(orders: tuple[int, ...] = (2,)) -> dict[int, NGramTable]:
    """Bundled English reference tables for the requested orders."""
    return {order: _load_reference_table(order) for order in orders}
