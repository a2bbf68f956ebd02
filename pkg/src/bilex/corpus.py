"""Parsing of line-aligned parallel corpora into tokenized sentence pairs.

Input is a pair of UTF-8 text files where line i of the source file and
line i of the target file form one sentence pair.  Tokenization is either
"generic" (whitespace split, then leading/trailing punctuation peeled off
as separate tokens) or "pretokenized" (whitespace split only, for text that
went through an external segmenter first).
"""

import logging
import unicodedata
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import CorpusIOError

logger = logging.getLogger(__name__)

GENERIC = "generic"
PRETOKENIZED = "pretokenized"


@dataclass(frozen=True)
class TokenizerConfig:
    mode: str = GENERIC
    lowercase: bool = False
    # Pairs where either side tokenizes to more than this many tokens are
    # dropped by the stream (None = unlimited).  tokenize() itself never
    # truncates.
    max_tokens_per_side: Optional[int] = None

    def __post_init__(self):
        if self.mode not in (GENERIC, PRETOKENIZED):
            raise ValueError(f"unknown tokenizer mode: {self.mode!r}")
        if self.max_tokens_per_side is not None and self.max_tokens_per_side < 1:
            raise ValueError("max_tokens_per_side must be positive")


@dataclass(frozen=True)
class SentencePair:
    source_tokens: tuple
    target_tokens: tuple
    line_number: int


@dataclass
class SkipStats:
    """Why pairs were dropped while streaming.

    total_read counts pair slots examined, i.e. max(source lines, target
    lines); it always equals pairs yielded plus pairs dropped.
    """

    empty_side: int = 0
    over_length: int = 0
    malformed: int = 0
    total_read: int = 0


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def _split_edge_punct(run: str) -> list:
    # Peel Unicode-punctuation characters off both edges, each as its own
    # token; interior punctuation (don't, e-mail) stays attached.
    n = len(run)
    start = 0
    while start < n and _is_punct(run[start]):
        start += 1
    if start == n:
        return list(run)
    end = n
    while end > start and _is_punct(run[end - 1]):
        end -= 1
    out = list(run[:start])
    out.append(run[start:end])
    out.extend(run[end:])
    return out


def tokenize(line: str, config: TokenizerConfig) -> list:
    """Split one line into tokens according to config.

    Generic mode splits on whitespace and peels edge punctuation; in
    pretokenized mode tokens are exactly the maximal runs of
    non-whitespace characters.  Empty input yields an empty list.
    """
    runs = line.split()
    if config.mode == PRETOKENIZED:
        tokens = runs
    else:
        tokens = []
        for run in runs:
            tokens.extend(_split_edge_punct(run))
    if config.lowercase:
        tokens = [t.lower() for t in tokens]
    return tokens


def _iter_decoded_lines(path: str) -> Iterator[Optional[str]]:
    """Yield decoded lines, None for lines that are not valid UTF-8.

    Reads in binary so a single bad line does not kill the stream; strips
    LF and a trailing CR (CRLF input).
    """
    try:
        f = open(path, "rb")
    except OSError as e:
        raise CorpusIOError(f"cannot open corpus file {path}: {e}") from e
    with f:
        for raw in f:
            raw = raw.rstrip(b"\n").rstrip(b"\r")
            try:
                yield raw.decode("utf-8")
            except UnicodeDecodeError:
                yield None


def open_parallel_stream(src_path, tgt_path, config: TokenizerConfig):
    """Stream SentencePairs from two aligned files.

    Returns (iterator, SkipStats).  The stats object is shared with the
    iterator and is complete only once the iterator is exhausted.  Pairs
    are dropped (and counted) when a line is invalid UTF-8, either side
    tokenizes to nothing, or either side exceeds max_tokens_per_side.
    If the files have different line counts the stream stops at the
    shorter one and the missing tail is counted as malformed.
    """
    stats = SkipStats()

    def gen():
        max_len = config.max_tokens_per_side
        src_lines = _iter_decoded_lines(str(src_path))
        tgt_lines = _iter_decoded_lines(str(tgt_path))
        line_no = 0
        while True:
            src = next(src_lines, _EOF)
            tgt = next(tgt_lines, _EOF)
            if src is _EOF and tgt is _EOF:
                break
            line_no += 1
            stats.total_read += 1
            if src is _EOF or tgt is _EOF:
                # unequal file lengths: count the orphan line and keep
                # draining the longer file so total_read reflects it
                stats.malformed += 1
                continue
            if src is None or tgt is None:
                stats.malformed += 1
                continue
            src_tokens = tokenize(src, config)
            tgt_tokens = tokenize(tgt, config)
            if not src_tokens or not tgt_tokens:
                stats.empty_side += 1
                continue
            if max_len is not None and (
                len(src_tokens) > max_len or len(tgt_tokens) > max_len
            ):
                stats.over_length += 1
                continue
            yield SentencePair(tuple(src_tokens), tuple(tgt_tokens), line_no)
        if stats.malformed:
            logger.warning(
                "%s/%s: skipped %d malformed pair(s) (bad UTF-8 or unequal line counts)",
                src_path, tgt_path, stats.malformed,
            )

    return gen(), stats


class _Eof:
    pass


_EOF = _Eof()
