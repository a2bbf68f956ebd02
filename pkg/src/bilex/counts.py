"""Count statistics over a parallel corpus, in one streaming pass.

All scoring methods work off the same CountStore: per-word sentence
frequencies #(x) and #(y), cross-lingual co-occurrences #(x,y), and
source-source co-occurrences #(x,x').  Counting uses presence semantics:
a word (or word pair) is counted at most once per sentence pair, no
matter how often it repeats inside the sentence.

Counting can be sharded: accumulate disjoint chunks of the stream
independently, then merge the partial stores in stream order.  In-order
merging reproduces the vocabulary ids of a single-threaded pass exactly,
so builds are byte-deterministic regardless of thread count.
"""

import collections
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

from .corpus import SentencePair
from .errors import CorpusIOError, WordNotFoundError


class Vocab:
    """Insertion-ordered bijection between words and dense ids 0,1,2,..."""

    __slots__ = ("words", "index")

    def __init__(self, words: Optional[Iterable[str]] = None):
        self.words: List[str] = []
        self.index: Dict[str, int] = {}
        if words:
            for w in words:
                self.add(w)

    def add(self, word: str) -> int:
        idx = self.index.get(word)
        if idx is None:
            idx = len(self.words)
            self.index[word] = idx
            self.words.append(word)
        return idx

    def get(self, word: str) -> Optional[int]:
        return self.index.get(word)

    def id_of(self, word: str) -> int:
        idx = self.index.get(word)
        if idx is None:
            raise WordNotFoundError(word)
        return idx

    def word_of(self, idx: int) -> str:
        return self.words[idx]

    def __len__(self):
        return len(self.words)

    def __contains__(self, word: str):
        return word in self.index

    def __iter__(self):
        return iter(self.words)

    def __eq__(self, other):
        return isinstance(other, Vocab) and self.words == other.words

    def __hash__(self):
        return id(self)


@dataclass(eq=False)
class CountStore:
    """Immutable-once-built count tables for one parallel corpus.

    cross[x][y] = number of sentence pairs containing source word x and
    target word y.  src_src holds the symmetric table #(x,x') with only
    the canonical half stored (a <= b); the diagonal entry (x,x) equals
    #(x) by construction.  Use src_src_count() for symmetric lookups.
    """

    src_vocab: Vocab = field(default_factory=Vocab)
    tgt_vocab: Vocab = field(default_factory=Vocab)
    n_pairs: int = 0
    src_count: List[int] = field(default_factory=list)
    tgt_count: List[int] = field(default_factory=list)
    cross: Dict[int, Dict[int, int]] = field(default_factory=dict)
    src_src: Dict[int, Dict[int, int]] = field(default_factory=dict)

    def cross_count(self, x: int, y: int) -> int:
        row = self.cross.get(x)
        return row.get(y, 0) if row else 0

    def src_src_count(self, a: int, b: int) -> int:
        if a > b:
            a, b = b, a
        row = self.src_src.get(a)
        return row.get(b, 0) if row else 0

    def src_frequency(self, x: int) -> int:
        return self.src_count[x]

    def tgt_frequency(self, y: int) -> int:
        return self.tgt_count[y]


class _Builder:
    """Mutable accumulator behind accumulate/merge; not part of the API."""

    def __init__(self):
        self.src_vocab = Vocab()
        self.tgt_vocab = Vocab()
        self.n_pairs = 0
        self.src_count: List[int] = []
        self.tgt_count: List[int] = []
        self.cross: Dict[int, Dict[int, int]] = {}
        self.src_src: Dict[int, Dict[int, int]] = {}

    def add_pair(self, pair: SentencePair) -> None:
        src_add = self.src_vocab.add
        tgt_add = self.tgt_vocab.add
        # register in token order so ids follow first appearance
        src_ids = [src_add(t) for t in pair.source_tokens]
        tgt_ids = [tgt_add(t) for t in pair.target_tokens]
        src_count = self.src_count
        tgt_count = self.tgt_count
        while len(src_count) < len(self.src_vocab):
            src_count.append(0)
        while len(tgt_count) < len(self.tgt_vocab):
            tgt_count.append(0)

        self.n_pairs += 1
        sset = sorted(set(src_ids))
        tset = set(tgt_ids)
        for y in tset:
            tgt_count[y] += 1
        cross = self.cross
        for x in sset:
            src_count[x] += 1
            row = cross.get(x)
            if row is None:
                row = cross[x] = {}
            for y in tset:
                row[y] = row.get(y, 0) + 1
        src_src = self.src_src
        for i, a in enumerate(sset):
            arow = src_src.get(a)
            if arow is None:
                arow = src_src[a] = {}
            for b in itertools.islice(sset, i, None):
                arow[b] = arow.get(b, 0) + 1

    def absorb(self, other: CountStore) -> None:
        """Fold a finished store into this builder (stream-order merge)."""
        self.n_pairs += other.n_pairs
        smap = [self.src_vocab.add(w) for w in other.src_vocab]
        tmap = [self.tgt_vocab.add(w) for w in other.tgt_vocab]
        while len(self.src_count) < len(self.src_vocab):
            self.src_count.append(0)
        while len(self.tgt_count) < len(self.tgt_vocab):
            self.tgt_count.append(0)
        for old, c in enumerate(other.src_count):
            self.src_count[smap[old]] += c
        for old, c in enumerate(other.tgt_count):
            self.tgt_count[tmap[old]] += c
        cross = self.cross
        for x, orow in other.cross.items():
            row = cross.get(smap[x])
            if row is None:
                row = cross[smap[x]] = {}
            for y, c in orow.items():
                ny = tmap[y]
                row[ny] = row.get(ny, 0) + c
        src_src = self.src_src
        for a, orow in other.src_src.items():
            for b, c in orow.items():
                na, nb = smap[a], smap[b]
                if na > nb:
                    na, nb = nb, na
                arow = src_src.get(na)
                if arow is None:
                    arow = src_src[na] = {}
                arow[nb] = arow.get(nb, 0) + c

    def finish(self) -> CountStore:
        return CountStore(
            src_vocab=self.src_vocab,
            tgt_vocab=self.tgt_vocab,
            n_pairs=self.n_pairs,
            src_count=self.src_count,
            tgt_count=self.tgt_count,
            cross=self.cross,
            src_src=self.src_src,
        )


def accumulate(pairs: Iterable[SentencePair]) -> CountStore:
    """Count a stream of sentence pairs into a fresh CountStore."""
    b = _Builder()
    for pair in pairs:
        b.add_pair(pair)
    return b.finish()


def merge(left: CountStore, right: CountStore) -> CountStore:
    """Combine two stores as if their streams had been concatenated.

    Word-keyed counts sum pointwise; ids follow left's vocabulary with
    right-only words appended in right's id order.
    """
    b = _Builder()
    b.absorb(left)
    b.absorb(right)
    return b.finish()


def accumulate_sharded(
    pairs: Iterable[SentencePair],
    threads: int = 1,
    chunk_size: int = 4096,
) -> CountStore:
    """Chunk the stream, count chunks on a thread pool, merge in order.

    Produces exactly the same store (ids included) as accumulate() on the
    unchunked stream, for any thread count.
    """
    if threads <= 1:
        return accumulate(pairs)

    def chunks():
        it = iter(pairs)
        while True:
            block = list(itertools.islice(it, chunk_size))
            if not block:
                return
            yield block

    b = _Builder()
    pending = collections.deque()
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for block in chunks():
            pending.append(pool.submit(accumulate, block))
            # keep a bounded window in flight so the stream is not slurped
            while len(pending) > 2 * threads:
                b.absorb(pending.popleft().result())
        while pending:
            b.absorb(pending.popleft().result())
    return b.finish()


def prune(store: CountStore, min_count: int) -> CountStore:
    """Drop words with sentence frequency below min_count.

    Surviving words are relabeled to dense ids preserving their relative
    order; every count entry touching a dropped word goes with it.
    n_pairs is unchanged.
    """
    if min_count < 1:
        raise ValueError("min_count must be >= 1")
    if min_count == 1:
        return store

    smap: Dict[int, int] = {}
    src_vocab = Vocab()
    src_count = []
    for old, w in enumerate(store.src_vocab):
        if store.src_count[old] >= min_count:
            smap[old] = src_vocab.add(w)
            src_count.append(store.src_count[old])
    tmap: Dict[int, int] = {}
    tgt_vocab = Vocab()
    tgt_count = []
    for old, w in enumerate(store.tgt_vocab):
        if store.tgt_count[old] >= min_count:
            tmap[old] = tgt_vocab.add(w)
            tgt_count.append(store.tgt_count[old])

    cross: Dict[int, Dict[int, int]] = {}
    for x, row in store.cross.items():
        if x not in smap:
            continue
        new_row = {tmap[y]: c for y, c in row.items() if y in tmap}
        if new_row:
            cross[smap[x]] = new_row
    src_src: Dict[int, Dict[int, int]] = {}
    for a, row in store.src_src.items():
        if a not in smap:
            continue
        new_row = {smap[b]: c for b, c in row.items() if b in smap}
        if new_row:
            src_src[smap[a]] = new_row

    return CountStore(
        src_vocab=src_vocab,
        tgt_vocab=tgt_vocab,
        n_pairs=store.n_pairs,
        src_count=src_count,
        tgt_count=tgt_count,
        cross=cross,
        src_src=src_src,
    )


# ---------------------------------------------------------------------------
# On-disk cache (TSV sections; loading reproduces the store exactly)

_SECTIONS = ("#vocab-src", "#vocab-tgt", "#counts-src", "#counts-tgt",
             "#cross", "#srcsrc")


def save_counts(store: CountStore, path) -> None:
    """Write the store as sectioned TSV; deterministic byte-for-byte."""
    try:
        f = open(path, "w", encoding="utf-8", newline="\n")
    except OSError as e:
        raise CorpusIOError(f"cannot write counts cache {path}: {e}") from e
    with f:
        f.write("#vocab-src\n")
        for i, w in enumerate(store.src_vocab):
            f.write(f"{i}\t{w}\n")
        f.write("#vocab-tgt\n")
        for i, w in enumerate(store.tgt_vocab):
            f.write(f"{i}\t{w}\n")
        f.write("#counts-src\n")
        for i, c in enumerate(store.src_count):
            f.write(f"{i}\t{c}\n")
        f.write("#counts-tgt\n")
        for i, c in enumerate(store.tgt_count):
            f.write(f"{i}\t{c}\n")
        f.write("#cross\n")
        for x in sorted(store.cross):
            row = store.cross[x]
            for y in sorted(row):
                f.write(f"{x}\t{y}\t{row[y]}\n")
        f.write("#srcsrc\n")
        for a in sorted(store.src_src):
            row = store.src_src[a]
            for b in sorted(row):
                f.write(f"{a}\t{b}\t{row[b]}\n")
        f.write(f"#meta n_pairs={store.n_pairs}\n")


def load_counts(path) -> CountStore:
    """Read a cache written by save_counts."""
    try:
        f = open(path, "r", encoding="utf-8", newline="\n")
    except OSError as e:
        raise CorpusIOError(f"cannot read counts cache {path}: {e}") from e

    store = CountStore()
    src_words: Dict[int, str] = {}
    tgt_words: Dict[int, str] = {}
    src_count: Dict[int, int] = {}
    tgt_count: Dict[int, int] = {}
    n_pairs = None
    section = None
    with f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                if line.startswith("#meta"):
                    section = "#meta"
                    try:
                        n_pairs = int(line.split("n_pairs=", 1)[1])
                    except (IndexError, ValueError):
                        raise CorpusIOError(
                            f"{path}:{lineno}: bad meta line {line!r}")
                elif line in _SECTIONS:
                    section = line
                else:
                    raise CorpusIOError(f"{path}:{lineno}: unknown section {line!r}")
                continue
            fields = line.split("\t")
            try:
                if section == "#vocab-src":
                    src_words[int(fields[0])] = fields[1]
                elif section == "#vocab-tgt":
                    tgt_words[int(fields[0])] = fields[1]
                elif section == "#counts-src":
                    src_count[int(fields[0])] = int(fields[1])
                elif section == "#counts-tgt":
                    tgt_count[int(fields[0])] = int(fields[1])
                elif section == "#cross":
                    x, y, c = int(fields[0]), int(fields[1]), int(fields[2])
                    store.cross.setdefault(x, {})[y] = c
                elif section == "#srcsrc":
                    a, b, c = int(fields[0]), int(fields[1]), int(fields[2])
                    store.src_src.setdefault(a, {})[b] = c
                else:
                    raise CorpusIOError(f"{path}:{lineno}: data before any section")
            except (IndexError, ValueError) as e:
                raise CorpusIOError(f"{path}:{lineno}: bad record {line!r}") from e
    if n_pairs is None:
        raise CorpusIOError(f"{path}: missing #meta n_pairs section")
    for i in range(len(src_words)):
        if i not in src_words:
            raise CorpusIOError(f"{path}: source vocab ids are not dense")
        store.src_vocab.add(src_words[i])
    for i in range(len(tgt_words)):
        if i not in tgt_words:
            raise CorpusIOError(f"{path}: target vocab ids are not dense")
        store.tgt_vocab.add(tgt_words[i])
    store.src_count = [src_count.get(i, 0) for i in range(len(src_words))]
    store.tgt_count = [tgt_count.get(i, 0) for i in range(len(tgt_words))]
    store.n_pairs = n_pairs
    return store
