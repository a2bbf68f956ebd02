import logging

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bilex import (
    GENERIC,
    PRETOKENIZED,
    CorpusIOError,
    TokenizerConfig,
    open_parallel_stream,
    tokenize,
)

GEN = TokenizerConfig()
PRE = TokenizerConfig(mode=PRETOKENIZED)


class TestTokenize:
    def test_trailing_punct_split(self):
        assert tokenize("the apple.", GEN) == ["the", "apple", "."]

    def test_empty_input(self):
        assert tokenize("", GEN) == []
        assert tokenize("   ", GEN) == []

    def test_pretokenized_whitespace_runs_only(self):
        assert tokenize("Don't  stop", PRE) == ["Don't", "stop"]
        assert tokenize("a.b c,", PRE) == ["a.b", "c,"]

    def test_interior_punctuation_kept(self):
        assert tokenize("don't e-mail", GEN) == ["don't", "e-mail"]

    def test_leading_and_trailing_peeled_in_order(self):
        assert tokenize("(a).", GEN) == ["(", "a", ")", "."]
        assert tokenize("«quoted»", GEN) == ["«", "quoted", "»"]

    def test_all_punctuation_run(self):
        assert tokenize("...", GEN) == [".", ".", "."]

    def test_non_punctuation_symbols_kept(self):
        # currency signs and digits are not category P
        assert tokenize('"$100"', GEN) == ['"', "$100", '"']

    def test_case_preserved_by_default(self):
        assert tokenize("Thank Charles", GEN) == ["Thank", "Charles"]

    def test_lowercase_option(self):
        cfg = TokenizerConfig(lowercase=True)
        assert tokenize("Thank Charles.", cfg) == ["thank", "charles", "."]

    def test_tabs_and_multiple_spaces(self):
        assert tokenize("a\tb  c", GEN) == ["a", "b", "c"]

    def test_bad_mode_rejected(self):
        with pytest.raises(ValueError):
            TokenizerConfig(mode="fancy")

    def test_deterministic(self):
        line = "Some words, «with» punct-uation... don't"
        assert tokenize(line, GEN) == tokenize(line, GEN)

    @given(st.text(max_size=80))
    @settings(max_examples=300, deadline=None)
    def test_no_whitespace_in_tokens(self, line):
        line = line.replace("\n", " ").replace("\r", " ")
        for cfg in (GEN, PRE, TokenizerConfig(lowercase=True)):
            for tok in tokenize(line, cfg):
                assert tok
                assert not any(ch.isspace() for ch in tok)

    @given(st.text(max_size=80))
    @settings(max_examples=300, deadline=None)
    def test_generic_idempotent(self, line):
        line = line.replace("\n", " ").replace("\r", " ")
        tokens = tokenize(line, GEN)
        assert tokenize(" ".join(tokens), GEN) == tokens


def write_lines(path, lines, newline="\n"):
    path.write_bytes(
        ("".join(line + newline for line in lines)).encode("utf-8"))


class TestParallelStream:
    def test_basic_pairs(self, tmp_path):
        write_lines(tmp_path / "s", ["a b", "c"])
        write_lines(tmp_path / "t", ["x", "y z"])
        stream, stats = open_parallel_stream(tmp_path / "s", tmp_path / "t", GEN)
        pairs = list(stream)
        assert [(p.source_tokens, p.target_tokens, p.line_number) for p in pairs] == [
            (("a", "b"), ("x",), 1),
            (("c",), ("y", "z"), 2),
        ]
        assert (stats.empty_side, stats.over_length, stats.malformed) == (0, 0, 0)
        assert stats.total_read == 2

    def test_empty_side_dropped(self, tmp_path):
        write_lines(tmp_path / "s", ["a", ""])
        write_lines(tmp_path / "t", ["x", "y"])
        stream, stats = open_parallel_stream(tmp_path / "s", tmp_path / "t", GEN)
        pairs = list(stream)
        assert len(pairs) == 1
        assert stats.empty_side == 1
        assert stats.total_read == 2

    def test_length_mismatch_truncates(self, tmp_path, caplog):
        write_lines(tmp_path / "s", ["a", "b", "c"])
        write_lines(tmp_path / "t", ["x", "y"])
        stream, stats = open_parallel_stream(tmp_path / "s", tmp_path / "t", GEN)
        with caplog.at_level(logging.WARNING):
            pairs = list(stream)
        assert len(pairs) == 2
        assert stats.malformed == 1
        assert stats.total_read == 3
        assert any("malformed" in r.message for r in caplog.records)

    def test_over_length_dropped(self, tmp_path):
        cfg = TokenizerConfig(max_tokens_per_side=2)
        write_lines(tmp_path / "s", ["a b c", "d e"])
        write_lines(tmp_path / "t", ["x", "y"])
        stream, stats = open_parallel_stream(tmp_path / "s", tmp_path / "t", cfg)
        pairs = list(stream)
        assert [p.source_tokens for p in pairs] == [("d", "e")]
        assert stats.over_length == 1

    def test_crlf_stripped(self, tmp_path):
        write_lines(tmp_path / "s", ["a b", "c"], newline="\r\n")
        write_lines(tmp_path / "t", ["x", "y"], newline="\r\n")
        stream, _ = open_parallel_stream(tmp_path / "s", tmp_path / "t", GEN)
        pairs = list(stream)
        assert pairs[0].source_tokens == ("a", "b")
        assert pairs[1].target_tokens == ("y",)

    def test_invalid_utf8_line_is_malformed(self, tmp_path):
        (tmp_path / "s").write_bytes(b"ok\n\xff\xfe broken\nalso ok\n")
        write_lines(tmp_path / "t", ["x", "y", "z"])
        stream, stats = open_parallel_stream(tmp_path / "s", tmp_path / "t", GEN)
        pairs = list(stream)
        assert [p.line_number for p in pairs] == [1, 3]
        assert stats.malformed == 1
        assert stats.total_read == 3

    def test_missing_file_fatal(self, tmp_path):
        write_lines(tmp_path / "s", ["a"])
        stream, _ = open_parallel_stream(tmp_path / "s", tmp_path / "missing", GEN)
        with pytest.raises(CorpusIOError, match="missing"):
            list(stream)

    def test_stream_twice_identical(self, tmp_path):
        write_lines(tmp_path / "s", ["a b", "", "c d e"])
        write_lines(tmp_path / "t", ["x", "y", "z"])
        runs = []
        for _ in range(2):
            stream, stats = open_parallel_stream(tmp_path / "s", tmp_path / "t", GEN)
            runs.append((list(stream), stats))
        assert runs[0][0] == runs[1][0]
        assert runs[0][1] == runs[1][1]

    def test_stats_account_for_every_slot(self, tmp_path):
        cfg = TokenizerConfig(max_tokens_per_side=3)
        write_lines(tmp_path / "s", ["a", "", "a b c d", "e", "f"])
        write_lines(tmp_path / "t", ["x", "y", "z", ""])
        stream, stats = open_parallel_stream(tmp_path / "s", tmp_path / "t", cfg)
        pairs = list(stream)
        dropped = stats.empty_side + stats.over_length + stats.malformed
        assert stats.total_read == len(pairs) + dropped
        assert stats.total_read >= dropped
