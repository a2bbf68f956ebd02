"""The lexicon artifact: build it from counts, write/read it, query it.

File format v1 (UTF-8, LF): a tab-separated header line

    #word2word-lexicon<TAB>v1<TAB>src=<label><TAB>tgt=<label><TAB>method=<cooc|pmi|cpe><TAB>m=<int><TAB>k=<int><TAB>n_pairs=<int>

followed by one record per translation:

    <source-word><TAB><rank 1-based><TAB><target-word><TAB><score>

Records for one source word are contiguous with ranks 1..r (no gaps).
Scores are printed with exactly 9 significant digits in exponent
notation, so equal lexicons serialize byte-identically and a
write/read/write cycle is a fixed point.
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

from . import __version__
from .counts import CountStore
from .errors import (
    CorpusIOError,
    EmptyCorpusError,
    LexiconFormatError,
    LexiconIntegrityError,
    WordNotFoundError,
)
from .scoring import METHOD_KINDS, Method, score_with, top_k

MAGIC = "#word2word-lexicon"
FORMAT_VERSION = "v1"


@dataclass(frozen=True)
class BuildMeta:
    n_pairs: int
    tool_version: str = __version__


@dataclass(eq=False)
class Lexicon:
    src_lang: str
    tgt_lang: str
    method: Method
    k: int
    # source word -> [(target word, score)] in rank order; insertion order
    # of the dict is source-vocabulary id order for built lexicons
    entries: Dict[str, List[Tuple[str, float]]]
    build_meta: BuildMeta


def build_lexicon(
    store: CountStore,
    method: Method,
    k: int,
    src_lang: str = "src",
    tgt_lang: str = "tgt",
) -> Lexicon:
    """Score every source word and keep its top-k translations.

    Entries are emitted in source id order, which is the canonical
    single-threaded vocabulary order, so the result does not depend on
    how counting was parallelized.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if store.n_pairs == 0 or len(store.src_vocab) == 0:
        raise EmptyCorpusError("empty corpus")
    tgt_words = store.tgt_vocab.words
    entries: Dict[str, List[Tuple[str, float]]] = {}
    for x in range(len(store.src_vocab)):
        ranked = top_k(score_with(store, x, method), k, store)
        if not ranked:
            # possible only on pruned stores where every co-seen target
            # was dropped; an empty entry is not representable, skip it
            continue
        entries[store.src_vocab.word_of(x)] = [
            (tgt_words[y], score) for y, score in ranked
        ]
    return Lexicon(
        src_lang=src_lang,
        tgt_lang=tgt_lang,
        method=method,
        k=k,
        entries=entries,
        build_meta=BuildMeta(n_pairs=store.n_pairs),
    )


def format_score(score: float) -> str:
    # + 0.0 folds -0.0 into 0.0 so equal scores format identically
    return f"{score + 0.0:.8e}"


def _check_label(label: str, what: str) -> str:
    if not label or any(ch in label for ch in "\t\n\r"):
        raise ValueError(f"{what} label must be non-empty without tabs/newlines")
    return label


def write_lexicon(lex: Lexicon, path) -> None:
    """Serialize in format v1; identical lexicons give identical bytes."""
    header = "\t".join([
        MAGIC,
        FORMAT_VERSION,
        f"src={_check_label(lex.src_lang, 'source')}",
        f"tgt={_check_label(lex.tgt_lang, 'target')}",
        f"method={lex.method.kind}",
        f"m={lex.method.m}",
        f"k={lex.k}",
        f"n_pairs={lex.build_meta.n_pairs}",
    ])
    try:
        f = open(path, "w", encoding="utf-8", newline="\n")
    except OSError as e:
        raise CorpusIOError(f"cannot write lexicon {path}: {e}") from e
    with f:
        f.write(header + "\n")
        for source, translations in lex.entries.items():
            for rank, (target, score) in enumerate(translations, 1):
                f.write(f"{source}\t{rank}\t{target}\t{format_score(score)}\n")


def _parse_header(line: str, path) -> Tuple[str, str, Method, int, int]:
    fields = line.rstrip("\n").split("\t")
    if not fields or fields[0] != MAGIC:
        raise LexiconFormatError(f"{path}: not a lexicon file (bad magic line)")
    if len(fields) != 8 or fields[1] != FORMAT_VERSION:
        raise LexiconFormatError(
            f"{path}: unsupported lexicon version or malformed header")
    kv = {}
    for field in fields[2:]:
        key, sep, value = field.partition("=")
        if not sep:
            raise LexiconFormatError(f"{path}: malformed header field {field!r}")
        kv[key] = value
    try:
        kind = kv["method"]
        if kind not in METHOD_KINDS:
            raise LexiconFormatError(f"{path}: unknown method {kind!r}")
        method = Method(kind, int(kv["m"]))
        return kv["src"], kv["tgt"], method, int(kv["k"]), int(kv["n_pairs"])
    except (KeyError, ValueError) as e:
        raise LexiconFormatError(f"{path}: malformed header: {e}") from e


def read_lexicon(path) -> Lexicon:
    """Parse a v1 lexicon file, validating record structure."""
    try:
        f = open(path, "r", encoding="utf-8", newline="\n")
    except OSError as e:
        raise CorpusIOError(f"cannot read lexicon {path}: {e}") from e
    with f:
        header = f.readline()
        if not header:
            raise LexiconFormatError(f"{path}: empty file")
        src_lang, tgt_lang, method, k, n_pairs = _parse_header(header, path)
        entries: Dict[str, List[Tuple[str, float]]] = {}
        current = None
        seen_targets = set()
        for lineno, line in enumerate(f, 2):
            fields = line.rstrip("\n").split("\t")
            if len(fields) != 4:
                raise LexiconIntegrityError(
                    f"{path}:{lineno}: expected 4 fields, got {len(fields)}")
            source, rank_s, target, score_s = fields
            try:
                rank = int(rank_s)
                score = float(score_s)
            except ValueError as e:
                raise LexiconIntegrityError(f"{path}:{lineno}: {e}") from e
            if source != current:
                if source in entries:
                    raise LexiconIntegrityError(
                        f"{path}:{lineno}: records for {source!r} are not contiguous")
                if rank != 1:
                    raise LexiconIntegrityError(
                        f"{path}:{lineno}: first rank for {source!r} is {rank}, not 1")
                current = source
                entries[source] = []
                seen_targets = set()
            else:
                expected = len(entries[source]) + 1
                if rank != expected:
                    raise LexiconIntegrityError(
                        f"{path}:{lineno}: rank {rank} for {source!r}, expected {expected}")
            if rank > k:
                raise LexiconIntegrityError(
                    f"{path}:{lineno}: rank {rank} exceeds k={k}")
            if target in seen_targets:
                raise LexiconIntegrityError(
                    f"{path}:{lineno}: duplicate translation {target!r} for {source!r}")
            seen_targets.add(target)
            entries[source].append((target, score))
    return Lexicon(
        src_lang=src_lang,
        tgt_lang=tgt_lang,
        method=method,
        k=k,
        entries=entries,
        build_meta=BuildMeta(n_pairs=n_pairs),
    )


def query(lex: Lexicon, word: str, n: int) -> List[Tuple[str, float]]:
    """First n translations of word, in stored rank order.

    Raises WordNotFoundError for unknown words; a known word always has
    at least one translation, so the miss case is never an empty list.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    translations = lex.entries.get(word)
    if translations is None:
        raise WordNotFoundError(word)
    return translations[:n]
