"""Lexicon evaluation against gold dictionaries, plus test-word sampling.

Precision@k counts a gold source word as a hit when any of its gold
translations appears among the word's top-k lexicon translations (exact
string match).  Gold words missing from the lexicon count as misses;
how many were present at all is reported separately as coverage.

Test words are sampled from a corpus side's word distribution after
temperature smoothing (weight = count^(1/T); T>1 flattens the
distribution toward rare words), drawing without replacement with a
seeded generator so runs are reproducible.
"""

import logging
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from .counts import CountStore
from .errors import CorpusIOError, GoldDictionaryError, SamplerError
from .lexicon import Lexicon

logger = logging.getLogger(__name__)

SOURCE_SIDE = "source"
TARGET_SIDE = "target"


@dataclass
class GoldDictionary:
    # source word -> set of acceptable translations; dict order is first
    # appearance order in the file
    entries: Dict[str, Set[str]]

    def __len__(self):
        return len(self.entries)


@dataclass
class EvalReport:
    k_values: List[int]
    precision: Dict[int, float]
    n_test: int
    n_in_lexicon: int
    coverage: float
    n_degenerate_pairs: int  # gold pairs whose source equals its target


@dataclass(frozen=True)
class SamplerConfig:
    n: int = 2000
    temperature: float = 1.25
    # permitted codepoint ranges, inclusive; None = no character filter
    charset: Optional[Tuple[Tuple[int, int], ...]] = None
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not self.temperature > 0:
            raise ValueError("temperature must be > 0")
        if self.charset is not None and len(self.charset) == 0:
            raise ValueError("charset must be non-empty when given")


def load_gold(path) -> GoldDictionary:
    """Read a gold dictionary: one `source target` pair per line.

    Fields are separated by any whitespace.  Duplicate pairs collapse;
    lines that do not have exactly two fields are rejected with a warning
    listing their line numbers.  A file with zero valid pairs is fatal.
    """
    try:
        f = open(path, "rb")
    except OSError as e:
        raise CorpusIOError(f"cannot open gold dictionary {path}: {e}") from e
    entries: Dict[str, Set[str]] = {}
    rejected: List[int] = []
    with f:
        for lineno, raw in enumerate(f, 1):
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError:
                rejected.append(lineno)
                continue
            fields = line.split()
            if len(fields) != 2:
                rejected.append(lineno)
                continue
            source, target = fields
            entries.setdefault(source, set()).add(target)
    if rejected:
        logger.warning(
            "%s: rejected %d line(s) without exactly two fields: %s",
            path, len(rejected), ", ".join(map(str, rejected)))
    if not entries:
        raise GoldDictionaryError(f"{path}: empty gold dictionary")
    return GoldDictionary(entries)


def precision_at_k(lex: Lexicon, gold: GoldDictionary,
                   k_values: Sequence[int]) -> EvalReport:
    """P@k over all gold source words; out-of-lexicon words are misses."""
    if not k_values:
        raise ValueError("k_values must be non-empty")
    ks = list(k_values)
    for k in ks:
        if k < 1:
            raise ValueError("every k must be >= 1")
    n_test = len(gold.entries)
    if n_test == 0:
        raise GoldDictionaryError("empty gold dictionary")
    hits = {k: 0 for k in ks}
    n_in_lexicon = 0
    n_degenerate = 0
    for source, gold_targets in gold.entries.items():
        if source in gold_targets:
            n_degenerate += 1
        translations = lex.entries.get(source)
        if translations is None:
            continue
        n_in_lexicon += 1
        for k in ks:
            if any(t in gold_targets for t, _ in translations[:k]):
                hits[k] += 1
    return EvalReport(
        k_values=ks,
        precision={k: hits[k] / n_test for k in ks},
        n_test=n_test,
        n_in_lexicon=n_in_lexicon,
        coverage=n_in_lexicon / n_test,
        n_degenerate_pairs=n_degenerate,
    )


def summary_line(report: EvalReport) -> str:
    """Machine-readable one-liner: `P@1=<f> P@5=<f> coverage=<f> n=<int>`."""
    parts = [f"P@{k}={report.precision[k]:.9f}" for k in report.k_values]
    parts.append(f"coverage={report.coverage:.9f}")
    parts.append(f"n={report.n_test}")
    return " ".join(parts)


def format_report(report: EvalReport) -> str:
    lines = [f"test words:      {report.n_test}"]
    lines.append(f"in lexicon:      {report.n_in_lexicon}"
                 f" (coverage {report.coverage:.9f})")
    lines.append(f"degenerate gold: {report.n_degenerate_pairs} (source = target)")
    for k in report.k_values:
        lines.append(f"P@{k}: {report.precision[k]:.9f}")
    return "\n".join(lines)


def _in_charset(word: str, ranges: Tuple[Tuple[int, int], ...]) -> bool:
    return all(any(lo <= ord(ch) <= hi for lo, hi in ranges) for ch in word)


def eligible_weights(store: CountStore, side: str,
                     cfg: SamplerConfig) -> List[Tuple[str, float]]:
    """(word, smoothed weight) for every charset-eligible word, id order."""
    if side == SOURCE_SIDE:
        vocab, counts = store.src_vocab, store.src_count
    elif side == TARGET_SIDE:
        vocab, counts = store.tgt_vocab, store.tgt_count
    else:
        raise ValueError(f"side must be 'source' or 'target', got {side!r}")
    exponent = 1.0 / cfg.temperature
    out = []
    for idx, word in enumerate(vocab):
        if cfg.charset is not None and not _in_charset(word, cfg.charset):
            continue
        out.append((word, counts[idx] ** exponent))
    return out


def sample_test_words(store: CountStore, side: str,
                      cfg: SamplerConfig) -> List[str]:
    """Draw cfg.n distinct words, weight ~ count^(1/T), without replacement.

    Draws are sequential (draw, remove, renormalize implicitly) from the
    generator seeded with cfg.seed, so the output is a pure function of
    (store, cfg).  If fewer than cfg.n words are eligible, all of them
    are returned (in draw order) with a warning.
    """
    pool = eligible_weights(store, side, cfg)
    if not pool:
        raise SamplerError(
            f"no {side} words eligible under charset {cfg.charset!r}")
    if len(pool) < cfg.n:
        logger.warning(
            "only %d eligible %s words for a sample of %d; returning all",
            len(pool), side, cfg.n)
    words = [w for w, _ in pool]
    weights = np.array([wt for _, wt in pool], dtype=np.float64)
    rng = random.Random(cfg.seed)
    n_draws = min(cfg.n, len(pool))
    out = []
    for _ in range(n_draws):
        cum = np.cumsum(weights)
        total = cum[-1]
        if total <= 0.0:
            break
        r = rng.random() * total
        idx = int(np.searchsorted(cum, r, side="right"))
        if idx >= len(words):  # r rounded up onto total: take last live word
            idx = int(np.nonzero(weights)[0][-1])
        out.append(words[idx])
        weights[idx] = 0.0
    return out
