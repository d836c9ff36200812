import math

import pytest
from hypothesis import given, strategies as st

from sdescrack import sdes
from sdescrack.ngrams import (
    BIGRAM_ONLY,
    CostWeights,
    KeyScorer,
    NGramTable,
    cost,
    ingest_corpus,
    l1_distance,
    load_default_corpus,
    load_reference_tables,
    normalize_letters,
    observe,
    read_table,
    score_key,
    weighted_cost,
    write_table,
)

_POOL = ["AB", "BA", "BB", "TH", "HE", "ER", "QZ", "ZZ", "ON", "IN"]


@st.composite
def bigram_tables(draw):
    grams = draw(st.lists(st.sampled_from(_POOL), min_size=1, max_size=8, unique=True))
    counts = [draw(st.integers(min_value=1, max_value=50)) for _ in grams]
    total = sum(counts)
    return NGramTable(2, {g: c / total for g, c in zip(grams, counts)})


class TestNormalize:
    def test_drops_non_letters_and_uppercases(self):
        assert normalize_letters(b"He said: 42 things!") == b"HESAIDTHINGS"

    def test_str_input(self):
        assert normalize_letters("a-b-c") == b"ABC"

    def test_stream_is_contiguous_after_filtering(self):
        # windows may join letters that were separated by dropped bytes
        table = observe(b"A B", 2)
        assert table.freq == {"AB": 1.0}


class TestIngestAndObserve:
    def test_single_symbol_corpus(self):
        assert ingest_corpus(b"AAAA", 1).freq == {"A": 1.0}

    def test_hand_counted_bigrams(self):
        table = ingest_corpus(b"ABAB", 2)
        assert table.freq == {"AB": 2 / 3, "BA": 1 / 3}

    def test_trigrams(self):
        assert ingest_corpus(b"ABCABC", 3).freq == {
            "ABC": 2 / 4,
            "BCA": 1 / 4,
            "CAB": 1 / 4,
        }

    def test_no_letters_raises(self):
        with pytest.raises(ValueError):
            ingest_corpus(b"123 456 !!!", 2)

    def test_bad_order_rejected(self):
        with pytest.raises(ValueError):
            ingest_corpus(b"ABC", 4)

    def test_observe_no_letters_gives_empty_table(self):
        assert observe(b"123", 2).freq == {}

    def test_observe_shorter_than_order_gives_empty_table(self):
        assert observe(b"A", 2).freq == {}

    @given(st.binary(min_size=0, max_size=300), st.sampled_from([1, 2, 3]))
    def test_observed_tables_normalized(self, data, order):
        table = observe(data, order)
        if table.freq:
            assert abs(table.total() - 1.0) < 1e-9
            assert all(len(g) == order for g in table.freq)
            assert all(v > 0 for v in table.freq.values())

    def test_english_reference_ranking(self):
        table = load_reference_tables((2,))[2]
        assert table.freq["TH"] > table.freq.get("QZ", 0.0)
        assert table.freq["TH"] > table.freq["AA"]


class TestCost:
    def test_identical_tables_cost_zero(self):
        ref = {2: ingest_corpus(b"THE CAT SAT", 2)}
        assert cost(ref, ref, BIGRAM_ONLY) == 0.0

    def test_disjoint_unigrams(self):
        ref = {1: NGramTable(1, {"A": 1.0})}
        obs = {1: NGramTable(1, {"B": 1.0})}
        assert cost(ref, obs, CostWeights(1, 0, 0)) == 2.0

    def test_hand_summed_bigram_example(self):
        ref = {2: NGramTable(2, {"AB": 0.6, "BA": 0.4})}
        obs = {2: NGramTable(2, {"AB": 0.5, "BB": 0.5})}
        # union of keys: |0.6-0.5| + |0.4-0| + |0-0.5|
        expected = abs(0.6 - 0.5) + abs(0.4 - 0.0) + abs(0.0 - 0.5)
        assert abs(cost(ref, obs, BIGRAM_ONLY) - expected) < 1e-12

    def test_empty_observed_costs_full_reference_mass(self):
        ref = {2: ingest_corpus(b"THE CAT", 2)}
        obs = {2: observe(b"123", 2)}
        assert abs(cost(ref, obs, BIGRAM_ONLY) - 1.0) < 1e-9

    def test_missing_table_for_nonzero_weight(self):
        ref = {2: NGramTable(2, {"AB": 1.0})}
        with pytest.raises(ValueError):
            cost(ref, {}, BIGRAM_ONLY)

    def test_zero_weight_order_may_be_absent(self):
        ref = {2: NGramTable(2, {"AB": 1.0})}
        obs = {2: NGramTable(2, {"AB": 1.0})}
        assert cost(ref, obs, BIGRAM_ONLY) == 0.0

    @given(bigram_tables(), bigram_tables())
    def test_symmetric(self, a, b):
        assert l1_distance(a, b) == l1_distance(b, a)

    @given(bigram_tables(), bigram_tables(), bigram_tables())
    def test_triangle_inequality(self, a, b, c):
        assert l1_distance(a, c) <= l1_distance(a, b) + l1_distance(b, c) + 1e-12

    @given(bigram_tables(), bigram_tables())
    def test_bounded_by_two(self, a, b):
        w = CostWeights(0.0, 1.0, 0.0)
        assert 0.0 <= cost({2: a}, {2: b}, w) <= 2.0 + 1e-12

    @given(bigram_tables(), bigram_tables())
    def test_doubling_beta_doubles_bigram_term(self, a, b):
        once = weighted_cost({2: a}, {2: b}, 0.0, 1.0, 0.0)
        twice = weighted_cost({2: a}, {2: b}, 0.0, 2.0, 0.0)
        assert twice == 2.0 * once

    def test_order_mismatch_rejected(self):
        with pytest.raises(ValueError):
            l1_distance(NGramTable(1, {"A": 1.0}), NGramTable(2, {"AB": 1.0}))


class TestCostWeights:
    def test_must_sum_to_one(self):
        with pytest.raises(ValueError):
            CostWeights(0.5, 0.6, 0.0)

    def test_must_be_non_negative(self):
        with pytest.raises(ValueError):
            CostWeights(-0.5, 1.5, 0.0)

    def test_orders(self):
        assert CostWeights(0.25, 0.75, 0.0).orders() == (1, 2)
        assert BIGRAM_ONLY.orders() == (2,)


class TestScoreKey:
    def test_true_key_recovers_message_statistics(self, reference, english_attack_case):
        message, true_key, ciphertext = english_attack_case
        expected = cost(reference, {2: observe(message, 2)}, BIGRAM_ONLY)
        assert score_key(true_key, ciphertext, reference) == expected
        assert 0.0 < expected < 1.0

    def test_deterministic(self, reference, english_attack_case):
        _, _, ciphertext = english_attack_case
        a = score_key(123, ciphertext, reference)
        b = score_key(123, ciphertext, reference)
        assert a == b

    def test_empty_ciphertext_rejected(self, reference):
        with pytest.raises(ValueError):
            score_key(0, b"", reference)

    def test_true_key_in_bottom_decile_of_exhaustive_scan(
        self, reference, english_attack_case
    ):
        _, true_key, ciphertext = english_attack_case
        scores = sorted(
            (score_key(k, ciphertext, reference), k) for k in range(sdes.KEY_SPACE)
        )
        rank = [k for _, k in scores].index(true_key) + 1
        assert rank <= sdes.KEY_SPACE // 10


class TestKeyScorer:
    def test_counts_every_call_and_memoizes(self, reference, english_attack_case):
        _, _, ciphertext = english_attack_case
        scorer = KeyScorer(ciphertext, reference)
        first = scorer.score(7)
        again = scorer.score(7)
        assert first == again == score_key(7, ciphertext, reference)
        assert scorer.calls == 2

    def test_shared_memo_keeps_counters_separate(self, reference, english_attack_case):
        _, _, ciphertext = english_attack_case
        memo = {}
        a = KeyScorer(ciphertext, reference, memo=memo)
        b = KeyScorer(ciphertext, reference, memo=memo)
        a.score(5)
        assert b.score(5) == a.score(5)
        assert (a.calls, b.calls) == (2, 1)


class TestTableIO:
    def test_round_trip(self, tmp_path):
        table = ingest_corpus(b"THE CAT SAT ON THE MAT", 2)
        path = tmp_path / "t.tsv"
        write_table(table, path)
        loaded = read_table(path)
        assert loaded.order == table.order
        assert loaded.freq == table.freq

    def test_sum_validated_on_load(self, tmp_path):
        path = tmp_path / "bad.tsv"
        path.write_text("AB\t0.5\nBA\t0.4\n")
        with pytest.raises(ValueError):
            read_table(path)

    def test_bad_symbols_rejected(self, tmp_path):
        path = tmp_path / "bad.tsv"
        path.write_text("A1\t1.0\n")
        with pytest.raises(ValueError):
            read_table(path)

    def test_empty_rejected(self, tmp_path):
        path = tmp_path / "empty.tsv"
        path.write_text("")
        with pytest.raises(ValueError):
            read_table(path)

    def test_shipped_tables_regenerate_from_corpus(self, tmp_path, corpus):
        from sdescrack.ngrams import _DATA_DIR

        for order, name in ((1, "unigrams.tsv"), (2, "bigrams.tsv")):
            regenerated = tmp_path / name
            write_table(ingest_corpus(corpus, order), regenerated)
            assert regenerated.read_bytes() == (_DATA_DIR / name).read_bytes()

    def test_corpus_is_big_enough(self, corpus):
        assert len(corpus) >= 100_000
        assert len(normalize_letters(corpus)) >= 50_000


def test_reference_loader_builds_missing_orders():
    tables = load_reference_tables((1, 2, 3))
    assert set(tables) == {1, 2, 3}
    assert all(abs(t.total() - 1.0) < 1e-9 for t in tables.values())
    corpus_table = ingest_corpus(load_default_corpus(), 3)
    assert tables[3].freq == corpus_table.freq
