"""Translation scoring over a CountStore.

Three methods, all driven by the same counts:

* co-occurrence: score(y) = #(x,y) / #(x), i.e. p(y|x)
* PMI (reduced): score(y) = ln(#(x,y) / #(y)); the -ln #(x) term is
  constant per source word and dropped, so rankings are unaffected
* CPE: p(y|x) minus a correction that explains away confounding
  collocates of x: sum over x' of p(y|x') * p(x'|x), where x' ranges
  over the top-m source words co-occurring with x (x itself excluded,
  since seeing x again adds no effect)

Candidates for a source word x are exactly the target words co-seen with
x at least once; anything else scores <= 0 under every method and is not
worth materializing.

The CPE correction is evaluated as a sparse row-vector times the
p(y|x') matrix (scipy), with confounder weights applied in ascending-id
order, so scores are bit-reproducible for a given store.
"""

import math
import threading
import weakref
from dataclasses import dataclass
from typing import Dict, List, Tuple, Union

import numpy as np
import scipy.sparse as sp

from .counts import CountStore
from .errors import WordNotFoundError

COOC = "cooc"
PMI = "pmi"
CPE = "cpe"
METHOD_KINDS = (COOC, PMI, CPE)

DEFAULT_M = 5000
DEFAULT_K = 10


@dataclass(frozen=True)
class Method:
    kind: str
    m: int = DEFAULT_M  # confounder budget; consulted by cpe only

    def __post_init__(self):
        if self.kind not in METHOD_KINDS:
            raise ValueError(f"unknown method: {self.kind!r}")
        if self.m < 0:
            raise ValueError("m must be >= 0")


@dataclass
class ScoreVector:
    source_id: int
    entries: Dict[int, float]  # target id -> score; support = co-seen targets


RankedList = List[Tuple[int, float]]


# ---------------------------------------------------------------------------
# Per-store numeric cache.  A finished CountStore is immutable, so the
# derived CSR structures are built once and shared by all scoring calls.

class _StoreCache:
    def __init__(self, store: CountStore):
        S = len(store.src_vocab)
        T = len(store.tgt_vocab)
        self.S = S
        self.T = T
        self.src_count = np.asarray(store.src_count, dtype=np.int64)
        self.tgt_count = np.asarray(store.tgt_count, dtype=np.int64)

        sizes = np.zeros(S, dtype=np.int64)
        col_blocks = []
        val_blocks = []
        for x in range(S):
            row = store.cross.get(x)
            if not row:
                continue
            items = sorted(row.items())
            sizes[x] = len(items)
            arr = np.asarray(items, dtype=np.int64)
            col_blocks.append(arr[:, 0])
            val_blocks.append(arr[:, 1])
        self.cross_indptr = np.concatenate(([0], np.cumsum(sizes)))
        if col_blocks:
            self.cross_cols = np.concatenate(col_blocks)
            self.cross_vals = np.concatenate(val_blocks)
        else:
            self.cross_cols = np.zeros(0, dtype=np.int64)
            self.cross_vals = np.zeros(0, dtype=np.int64)

        # p(y|x') rows as float CSR, for the CPE correction product
        q_data = self.cross_vals / np.repeat(
            np.maximum(self.src_count, 1), sizes)
        self.q = sp.csr_matrix(
            (q_data, self.cross_cols.astype(np.int32), self.cross_indptr),
            shape=(S, T))

        # symmetric source-source table, mirrored from the stored half
        ua_blocks = []
        ub_blocks = []
        uc_blocks = []
        for a in range(S):
            row = store.src_src.get(a)
            if not row:
                continue
            items = sorted(row.items())
            arr = np.asarray(items, dtype=np.int64)
            ua_blocks.append(np.full(len(items), a, dtype=np.int64))
            ub_blocks.append(arr[:, 0])
            uc_blocks.append(arr[:, 1])
        if ua_blocks:
            ua = np.concatenate(ua_blocks)
            ub = np.concatenate(ub_blocks)
            uc = np.concatenate(uc_blocks)
            off = ua != ub
            ra = np.concatenate((ua, ub[off]))
            ca = np.concatenate((ub, ua[off]))
            va = np.concatenate((uc, uc[off]))
        else:
            ra = ca = va = np.zeros(0, dtype=np.int64)
        sym = sp.csr_matrix(
            (va, (ra, ca)), shape=(S, S), dtype=np.int64)
        sym.sort_indices()
        self.sym_indptr = sym.indptr
        self.sym_ids = sym.indices
        self.sym_cnts = sym.data

    def cross_row(self, x: int):
        lo, hi = self.cross_indptr[x], self.cross_indptr[x + 1]
        return self.cross_cols[lo:hi], self.cross_vals[lo:hi]

    def sym_row(self, x: int):
        lo, hi = self.sym_indptr[x], self.sym_indptr[x + 1]
        return self.sym_ids[lo:hi], self.sym_cnts[lo:hi]


_caches = weakref.WeakKeyDictionary()
_cache_lock = threading.Lock()


def _cache(store: CountStore) -> _StoreCache:
    cache = _caches.get(store)
    if cache is None:
        with _cache_lock:
            cache = _caches.get(store)
            if cache is None:
                cache = _StoreCache(store)
                _caches[store] = cache
    return cache


def _resolve_src(store: CountStore, x: Union[int, str]) -> int:
    if isinstance(x, str):
        return store.src_vocab.id_of(x)  # raises WordNotFoundError
    if not 0 <= x < len(store.src_vocab):
        raise WordNotFoundError(f"source id {x}")
    return x


# ---------------------------------------------------------------------------
# Scorers

def score_cooccurrence(store: CountStore, x: Union[int, str]) -> ScoreVector:
    """score(y) = #(x,y) / #(x); ranking equals ranking by raw #(x,y)."""
    x = _resolve_src(store, x)
    cx = store.src_count[x]
    row = store.cross.get(x) or {}
    return ScoreVector(x, {y: c / cx for y, c in row.items()})


def score_pmi(store: CountStore, x: Union[int, str]) -> ScoreVector:
    """Reduced PMI: ln(#(x,y) / #(y)).

    Computed as one log of the ratio (not ln a - ln b) so that equal
    ratios produce bit-identical scores and rank ties deterministically.
    """
    x = _resolve_src(store, x)
    row = store.cross.get(x) or {}
    tc = store.tgt_count
    return ScoreVector(x, {y: math.log(c / tc[y]) for y, c in row.items()})


def _confounders(store: CountStore, x: int, m: int):
    """(ids, counts) of top-m co-occurring source words, x excluded.

    Order: count descending, id ascending.
    """
    cache = _cache(store)
    ids, cnts = cache.sym_row(x)
    keep = ids != x  # the diagonal carries #(x,x) = #(x); never a confounder
    ids, cnts = ids[keep], cnts[keep]
    if m == 0:
        return ids[:0], cnts[:0]
    if len(ids) > m:
        order = np.lexsort((ids, -cnts))[:m]
    else:
        order = np.lexsort((ids, -cnts))
    return ids[order], cnts[order]


def select_confounders(store: CountStore, x: Union[int, str], m: int) -> List[int]:
    """Top-m source words by #(x,x'), ties by id; x itself never appears."""
    if m < 0:
        raise ValueError("m must be >= 0")
    x = _resolve_src(store, x)
    ids, _ = _confounders(store, x, m)
    return ids.tolist()


def score_cpe(store: CountStore, x: Union[int, str], m: int = DEFAULT_M) -> ScoreVector:
    """score(y) = p(y|x) - sum over confounders x' of p(y|x') * p(x'|x).

    The correction weights p(x'|x) = #(x,x')/#(x) are not renormalized
    after truncating to m confounders, so m=0 reduces exactly to the
    co-occurrence scores.  Scores may be negative.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    x = _resolve_src(store, x)
    cache = _cache(store)
    cand_ids, cand_cnts = cache.cross_row(x)
    if len(cand_ids) == 0:
        return ScoreVector(x, {})
    cx = store.src_count[x]
    p_yx = cand_cnts / cx
    conf_ids, conf_cnts = _confounders(store, x, m)
    if len(conf_ids) == 0:
        scores = p_yx
    else:
        # apply weights in ascending-id order: summation order is then a
        # function of the store alone, keeping scores reproducible
        asc = np.argsort(conf_ids)
        conf_ids = conf_ids[asc]
        w = conf_cnts[asc] / cx
        wrow = sp.csr_matrix(
            (w, conf_ids.astype(np.int32), np.array([0, len(w)])),
            shape=(1, cache.S))
        corr = wrow @ cache.q
        buf = np.zeros(cache.T)
        buf[corr.indices] = corr.data
        scores = p_yx - buf[cand_ids]
    return ScoreVector(x, dict(zip(cand_ids.tolist(), scores.tolist())))


_SCORERS = {
    COOC: lambda store, x, m: score_cooccurrence(store, x),
    PMI: lambda store, x, m: score_pmi(store, x),
    CPE: lambda store, x, m: score_cpe(store, x, m),
}


def score_with(store: CountStore, x: Union[int, str], method: Method) -> ScoreVector:
    return _SCORERS[method.kind](store, x, method.m)


def top_k(scores: ScoreVector, k: int, store: CountStore) -> RankedList:
    """Best-k entries under the total order (score desc, #(y) desc, id asc)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    tc = store.tgt_count
    ranked = sorted(scores.entries.items(),
                    key=lambda item: (-item[1], -tc[item[0]], item[0]))
    return ranked[:k]
