"""bilex: top-k bilingual lexicon extraction from parallel corpora.

Pipeline: parse a line-aligned parallel corpus into tokenized sentence
pairs, accumulate (co-)occurrence counts, score candidate translations
per source word (co-occurrence, PMI, or confounder-corrected CPE), and
keep the top-k per word.  Lexicons serialize to a portable TSV format
and can be evaluated with precision@k against gold dictionaries.
"""

__version__ = "0.1.0"

from .corpus import (  # noqa: E402
    GENERIC,
    PRETOKENIZED,
    SentencePair,
    SkipStats,
    TokenizerConfig,
    open_parallel_stream,
    tokenize,
)
from .counts import (  # noqa: E402
    CountStore,
    Vocab,
    accumulate,
    accumulate_sharded,
    load_counts,
    merge,
    prune,
    save_counts,
)
from .errors import (  # noqa: E402
    BilexError,
    CorpusIOError,
    EmptyCorpusError,
    GoldDictionaryError,
    LexiconFormatError,
    LexiconIntegrityError,
    SamplerError,
    WordNotFoundError,
)
from .evaluation import (  # noqa: E402
    EvalReport,
    GoldDictionary,
    SamplerConfig,
    format_report,
    load_gold,
    precision_at_k,
    sample_test_words,
    summary_line,
)
from .lexicon import (  # noqa: E402
    BuildMeta,
    Lexicon,
    build_lexicon,
    query,
    read_lexicon,
    write_lexicon,
)
from .scoring import (  # noqa: E402
    COOC,
    CPE,
    DEFAULT_K,
    DEFAULT_M,
    PMI,
    Method,
    ScoreVector,
    score_cooccurrence,
    score_cpe,
    score_pmi,
    score_with,
    select_confounders,
    top_k,
)

__all__ = [
    "__version__",
    "GENERIC", "PRETOKENIZED", "SentencePair", "SkipStats", "TokenizerConfig",
    "open_parallel_stream", "tokenize",
    "CountStore", "Vocab", "accumulate", "accumulate_sharded", "load_counts",
    "merge", "prune", "save_counts",
    "BilexError", "CorpusIOError", "EmptyCorpusError", "GoldDictionaryError",
    "LexiconFormatError", "LexiconIntegrityError", "SamplerError",
    "WordNotFoundError",
    "EvalReport", "GoldDictionary", "SamplerConfig", "format_report",
    "load_gold", "precision_at_k", "sample_test_words", "summary_line",
    "BuildMeta", "Lexicon", "build_lexicon", "query", "read_lexicon",
    "write_lexicon",
    "COOC", "CPE", "DEFAULT_K", "DEFAULT_M", "PMI", "Method", "ScoreVector",
    "score_cooccurrence", "score_cpe", "score_pmi", "score_with",
    "select_confounders", "top_k",
]
