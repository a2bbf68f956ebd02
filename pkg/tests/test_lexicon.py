import random

import pytest

import helpers
from bilex import (
    EmptyCorpusError,
    LexiconFormatError,
    LexiconIntegrityError,
    Method,
    WordNotFoundError,
    accumulate,
    accumulate_sharded,
    build_lexicon,
    prune,
    query,
    read_lexicon,
    write_lexicon,
)
from bilex.lexicon import format_score


@pytest.fixture(scope="module")
def three_cpe():
    store = helpers.store_from(helpers.THREE_PAIR_CORPUS)
    return build_lexicon(store, Method("cpe", 5000), 2, "en", "fr")


def random_lexicon(rng, method=None):
    raw = helpers.random_corpus(rng)
    store = helpers.store_from(raw)
    method = method or Method(rng.choice(["cooc", "pmi", "cpe"]),
                              m=rng.choice([0, 3, 5000]))
    return build_lexicon(store, method, rng.randint(1, 12))


class TestBuild:
    def test_cpe_example(self, three_cpe):
        entry = three_cpe.entries["apple"]
        assert [t for t, _ in entry] == ["pomme", "la"]
        assert entry[0][1] == 1.0 - 1.0 / 3.0
        assert entry[1][1] == 0.0

    def test_cooc_tie_break_example(self):
        store = helpers.store_from(helpers.THREE_PAIR_CORPUS)
        lex = build_lexicon(store, Method("cooc"), 1)
        assert lex.entries["apple"] == [("la", 1.0)]

    def test_k_larger_than_candidates(self):
        store = helpers.store_from(helpers.THREE_PAIR_CORPUS)
        lex = build_lexicon(store, Method("cooc"), 50)
        assert len(lex.entries["apple"]) == 2  # only la, pomme co-seen
        assert len(lex.entries["the"]) == 4

    def test_covers_every_source_word(self):
        rng = random.Random(31)
        for _ in range(20):
            raw = helpers.random_corpus(rng)
            store = helpers.store_from(raw)
            lex = build_lexicon(store, Method("cpe"), 10)
            assert set(lex.entries) == set(store.src_vocab.words)
            for translations in lex.entries.values():
                assert 1 <= len(translations) <= 10
                targets = [t for t, _ in translations]
                assert len(set(targets)) == len(targets)

    def test_entries_in_source_id_order(self):
        store = helpers.store_from(helpers.THREE_PAIR_CORPUS)
        lex = build_lexicon(store, Method("pmi"), 3)
        assert list(lex.entries) == store.src_vocab.words

    def test_empty_store_rejected(self):
        with pytest.raises(EmptyCorpusError, match="empty corpus"):
            build_lexicon(accumulate([]), Method("cpe"), 10)

    def test_bad_k_rejected(self):
        store = helpers.store_from(helpers.THREE_PAIR_CORPUS)
        with pytest.raises(ValueError):
            build_lexicon(store, Method("cpe"), 0)

    def test_pruned_store_may_drop_candidateless_sources(self):
        # "b" survives min_count=2 but its only target does not
        store = helpers.store_from(
            [(["b"], ["u"]), (["b"], ["v"]), (["a"], ["x"]), (["a"], ["x"])])
        pruned = prune(store, 2)
        lex = build_lexicon(pruned, Method("cooc"), 5)
        assert "a" in lex.entries
        assert "b" not in lex.entries


class TestScoreFormat:
    def test_nine_significant_digits(self):
        assert format_score(2 / 3) == "6.66666667e-01"
        assert format_score(0.0) == "0.00000000e+00"
        assert format_score(-0.0) == "0.00000000e+00"
        assert format_score(-1.0986122886681098) == "-1.09861229e+00"

    def test_parse_format_fixed_point(self):
        rng = random.Random(32)
        for _ in range(200):
            value = rng.uniform(-5, 5) * 10 ** rng.randint(-8, 8)
            once = format_score(value)
            assert format_score(float(once)) == once


class TestRoundTrip:
    def test_write_read_structural(self, tmp_path, three_cpe):
        path = tmp_path / "lex.tsv"
        write_lexicon(three_cpe, path)
        loaded = read_lexicon(path)
        assert loaded.src_lang == "en" and loaded.tgt_lang == "fr"
        assert loaded.method == three_cpe.method
        assert loaded.k == three_cpe.k
        assert loaded.build_meta.n_pairs == 3
        assert list(loaded.entries) == list(three_cpe.entries)
        for source, translations in three_cpe.entries.items():
            got = loaded.entries[source]
            assert [t for t, _ in got] == [t for t, _ in translations]
            for (_, a), (_, b) in zip(got, translations):
                assert format_score(a) == format_score(b)

    def test_write_read_write_byte_identical(self, tmp_path):
        rng = random.Random(33)
        for i in range(10):
            lex = random_lexicon(rng)
            p1 = tmp_path / f"a{i}.tsv"
            p2 = tmp_path / f"b{i}.tsv"
            write_lexicon(lex, p1)
            write_lexicon(read_lexicon(p1), p2)
            assert p1.read_bytes() == p2.read_bytes()

    def test_identical_lexicons_identical_bytes(self, tmp_path, three_cpe):
        write_lexicon(three_cpe, tmp_path / "x.tsv")
        write_lexicon(three_cpe, tmp_path / "y.tsv")
        assert (tmp_path / "x.tsv").read_bytes() == (tmp_path / "y.tsv").read_bytes()

    def test_thread_count_does_not_change_bytes(self, tmp_path):
        rng = random.Random(34)
        raw = helpers.random_corpus(rng, max_pairs=60)
        paths = []
        for threads in (1, 8):
            store = accumulate_sharded(helpers.to_pairs(raw),
                                       threads=threads, chunk_size=7)
            lex = build_lexicon(store, Method("cpe"), 10)
            path = tmp_path / f"t{threads}.tsv"
            write_lexicon(lex, path)
            paths.append(path)
        assert paths[0].read_bytes() == paths[1].read_bytes()


class TestReadValidation:
    def write(self, tmp_path, lines):
        path = tmp_path / "lex.tsv"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    HEADER = ("#word2word-lexicon\tv1\tsrc=en\ttgt=fr\tmethod=cpe"
              "\tm=5000\tk=10\tn_pairs=3")

    def test_bad_magic(self, tmp_path):
        path = self.write(tmp_path, ["#something-else\tv1", "a\t1\tb\t0.0"])
        with pytest.raises(LexiconFormatError, match="magic"):
            read_lexicon(path)

    def test_bad_version(self, tmp_path):
        path = self.write(tmp_path, [self.HEADER.replace("\tv1\t", "\tv2\t")])
        with pytest.raises(LexiconFormatError):
            read_lexicon(path)

    def test_unknown_method(self, tmp_path):
        path = self.write(tmp_path, [self.HEADER.replace("method=cpe", "method=tfidf")])
        with pytest.raises(LexiconFormatError, match="tfidf"):
            read_lexicon(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "lex.tsv"
        path.write_text("", encoding="utf-8")
        with pytest.raises(LexiconFormatError, match="empty"):
            read_lexicon(path)

    def test_rank_gap(self, tmp_path):
        path = self.write(tmp_path, [self.HEADER,
                                     "a\t1\tx\t1.0", "a\t3\ty\t0.5"])
        with pytest.raises(LexiconIntegrityError, match=":3"):
            read_lexicon(path)

    def test_rank_not_starting_at_one(self, tmp_path):
        path = self.write(tmp_path, [self.HEADER, "a\t2\tx\t1.0"])
        with pytest.raises(LexiconIntegrityError, match=":2"):
            read_lexicon(path)

    def test_duplicate_source_block(self, tmp_path):
        path = self.write(tmp_path, [self.HEADER,
                                     "a\t1\tx\t1.0",
                                     "b\t1\ty\t1.0",
                                     "a\t1\tz\t0.5"])
        with pytest.raises(LexiconIntegrityError, match="contiguous"):
            read_lexicon(path)

    def test_duplicate_rank(self, tmp_path):
        path = self.write(tmp_path, [self.HEADER,
                                     "a\t1\tx\t1.0", "a\t1\ty\t0.5"])
        with pytest.raises(LexiconIntegrityError):
            read_lexicon(path)

    def test_duplicate_target(self, tmp_path):
        path = self.write(tmp_path, [self.HEADER,
                                     "a\t1\tx\t1.0", "a\t2\tx\t0.5"])
        with pytest.raises(LexiconIntegrityError, match="duplicate translation"):
            read_lexicon(path)

    def test_truncated_record(self, tmp_path):
        path = self.write(tmp_path, [self.HEADER, "a\t1\tx\t1.0", "b\t1\ty"])
        with pytest.raises(LexiconIntegrityError, match=":3"):
            read_lexicon(path)

    def test_rank_exceeding_k(self, tmp_path):
        header = self.HEADER.replace("k=10", "k=1")
        path = self.write(tmp_path, [header, "a\t1\tx\t1.0", "a\t2\ty\t0.5"])
        with pytest.raises(LexiconIntegrityError, match="exceeds k"):
            read_lexicon(path)

    def test_bad_score(self, tmp_path):
        path = self.write(tmp_path, [self.HEADER, "a\t1\tx\tnot-a-number"])
        with pytest.raises(LexiconIntegrityError, match=":2"):
            read_lexicon(path)


class TestQuery:
    def test_basic(self, three_cpe):
        assert query(three_cpe, "apple", 1) == [("pomme", 1.0 - 1.0 / 3.0)]

    def test_n_truncation_and_order(self, three_cpe):
        full = query(three_cpe, "apple", 10)
        assert [t for t, _ in full] == ["pomme", "la"]
        assert query(three_cpe, "apple", 1) == full[:1]

    def test_unknown_word_distinguishable(self, three_cpe):
        with pytest.raises(WordNotFoundError, match="zzz"):
            query(three_cpe, "zzz", 1)

    def test_n_must_be_positive(self, three_cpe):
        with pytest.raises(ValueError):
            query(three_cpe, "apple", 0)

    def test_every_kept_source_token_queryable(self, tmp_path):
        rng = random.Random(35)
        raw = helpers.random_corpus(rng)
        store = helpers.store_from(raw)
        lex = build_lexicon(store, Method("cooc"), 10)
        for src_tokens, _ in raw:
            for token in src_tokens:
                assert query(lex, token, 1)

    def test_concurrent_queries_safe(self, three_cpe):
        from concurrent.futures import ThreadPoolExecutor
        words = ["apple", "juice", "dog", "the"] * 50
        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(lambda w: query(three_cpe, w, 2), words))
        for word, result in zip(words, results):
            assert result == query(three_cpe, word, 2)
