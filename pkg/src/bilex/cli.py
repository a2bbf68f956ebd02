"""Command-line interface: build, query, evaluate, sample.

Exit codes: 0 success; 1 query ran but some words were not found;
2 usage or flag validation errors; 3 I/O and file-format errors
(including empty corpora and empty gold dictionaries).

Data goes to stdout, diagnostics (skip statistics, build metadata,
human-readable evaluation report, warnings) to stderr.
"""

import argparse
import os
import sys

from . import __version__
from .corpus import GENERIC, PRETOKENIZED, TokenizerConfig, open_parallel_stream
from .counts import accumulate_sharded, prune
from .errors import BilexError, WordNotFoundError
from .evaluation import (
    SamplerConfig,
    format_report,
    load_gold,
    precision_at_k,
    sample_test_words,
    summary_line,
)
from .lexicon import build_lexicon, query, read_lexicon, write_lexicon
from .scoring import DEFAULT_K, DEFAULT_M, Method

EXIT_OK = 0
EXIT_MISS = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _positive(kind, minimum=1):
    def convert(text):
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{kind} must be an integer")
        if value < minimum:
            raise argparse.ArgumentTypeError(f"{kind} must be >= {minimum}")
        return value
    return convert


def _add_tokenizer_flags(p):
    p.add_argument("--pretokenized", action="store_true",
                   help="input is already tokenized; split on whitespace only")
    p.add_argument("--lowercase", action="store_true",
                   help="lowercase all tokens")
    p.add_argument("--max-len", type=_positive("--max-len"), default=None,
                   metavar="N", help="drop pairs where either side has more "
                   "than N tokens")


def _tokenizer_config(args) -> TokenizerConfig:
    return TokenizerConfig(
        mode=PRETOKENIZED if args.pretokenized else GENERIC,
        lowercase=args.lowercase,
        max_tokens_per_side=args.max_len,
    )


def _count_corpus(args, parser):
    config = _tokenizer_config(args)
    stream, stats = open_parallel_stream(args.src, args.tgt, config)
    store = accumulate_sharded(stream, threads=args.threads)
    return store, stats


def _print_skip_stats(stats):
    print(f"pairs_used={stats.total_read - stats.empty_side - stats.over_length - stats.malformed} "
          f"total_read={stats.total_read} empty_side={stats.empty_side} "
          f"over_length={stats.over_length} malformed={stats.malformed}",
          file=sys.stderr)


def cmd_build(args, parser) -> int:
    store, stats = _count_corpus(args, parser)
    if args.min_count > 1:
        store = prune(store, args.min_count)
    method = Method(args.method, args.m)
    lex = build_lexicon(store, method, args.k,
                        src_lang=args.src_lang, tgt_lang=args.tgt_lang)
    write_lexicon(lex, args.out)
    _print_skip_stats(stats)
    print(f"method={method.kind} m={method.m} k={args.k} "
          f"n_pairs={store.n_pairs} sources={len(lex.entries)} "
          f"tool_version={__version__} out={args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_query(args, parser) -> int:
    lex = read_lexicon(args.lexicon)
    missing = False
    for word in args.words:
        stored = lex.entries.get(word)
        if stored is None:
            print(f"{word}\t<NOT FOUND>")
            missing = True
            continue
        translations = query(lex, word, args.n if args.n is not None else len(stored))
        print(f"{word}\t" + ",".join(t for t, _ in translations))
    return EXIT_MISS if missing else EXIT_OK


def cmd_evaluate(args, parser) -> int:
    try:
        k_values = [int(k) for k in args.k.split(",") if k]
    except ValueError:
        parser.error(f"--k expects a comma-separated list of integers, got {args.k!r}")
    if not k_values or any(k < 1 for k in k_values):
        parser.error("--k values must be positive integers")
    lex = read_lexicon(args.lexicon)
    gold = load_gold(args.gold)
    report = precision_at_k(lex, gold, k_values)
    print(format_report(report), file=sys.stderr)
    print(summary_line(report))
    return EXIT_OK


def _parse_charset(text):
    # comma-separated inclusive hex ranges, e.g. "AC00-D7A3,1100-11FF"
    ranges = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        lo, sep, hi = part.partition("-")
        try:
            lo_cp = int(lo, 16)
            hi_cp = int(hi, 16) if sep else lo_cp
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"bad charset range {part!r}; expected hex like AC00-D7A3")
        if hi_cp < lo_cp:
            raise argparse.ArgumentTypeError(f"empty charset range {part!r}")
        ranges.append((lo_cp, hi_cp))
    if not ranges:
        raise argparse.ArgumentTypeError("charset must contain at least one range")
    return tuple(ranges)


def cmd_sample(args, parser) -> int:
    store, _ = _count_corpus(args, parser)
    cfg = SamplerConfig(n=args.n, temperature=args.temperature,
                        charset=args.charset, seed=args.seed)
    for word in sample_test_words(store, args.side, cfg):
        print(word)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bilex",
        description="Extract and evaluate top-k bilingual lexicons from "
                    "line-aligned parallel corpora.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a lexicon from a parallel corpus")
    p.add_argument("--src", required=True, help="source-language text file")
    p.add_argument("--tgt", required=True, help="target-language text file")
    p.add_argument("--src-lang", default="src", help="source language label")
    p.add_argument("--tgt-lang", default="tgt", help="target language label")
    p.add_argument("--method", choices=["cooc", "pmi", "cpe"], default="cpe")
    p.add_argument("--k", type=_positive("--k"), default=DEFAULT_K,
                   help="translations kept per source word (default %(default)s)")
    p.add_argument("--m", type=_positive("--m", 0), default=DEFAULT_M,
                   help="confounders corrected per word for cpe (default %(default)s)")
    p.add_argument("--min-count", type=_positive("--min-count"), default=1,
                   help="drop words seen in fewer sentence pairs (default %(default)s)")
    p.add_argument("--threads", type=_positive("--threads"),
                   default=os.cpu_count() or 1,
                   help="counting worker threads (default: machine parallelism)")
    _add_tokenizer_flags(p)
    p.add_argument("--out", required=True, help="output lexicon path")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", help="look up translations in a lexicon file")
    p.add_argument("lexicon", help="lexicon file")
    p.add_argument("words", nargs="+", help="words to look up")
    p.add_argument("-n", type=_positive("-n"), default=None,
                   help="translations to print per word (default: all stored)")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("evaluate", help="precision@k against a gold dictionary")
    p.add_argument("lexicon", help="lexicon file")
    p.add_argument("gold", help="gold dictionary file (source target per line)")
    p.add_argument("--k", default="1,5",
                   help="comma-separated k values (default %(default)s)")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sample", help="sample test words from a corpus")
    p.add_argument("--src", required=True, help="source-language text file")
    p.add_argument("--tgt", required=True, help="target-language text file")
    p.add_argument("--side", choices=["source", "target"], default="source")
    p.add_argument("--n", type=_positive("--n"), default=2000,
                   help="words to sample (default %(default)s)")
    p.add_argument("--temperature", type=float, default=1.25,
                   help="smoothing temperature (default %(default)s)")
    p.add_argument("--seed", type=int, default=0,
                   help="random seed (default %(default)s)")
    p.add_argument("--charset", type=_parse_charset, default=None,
                   help="permitted codepoints as hex ranges, e.g. AC00-D7A3")
    p.add_argument("--threads", type=_positive("--threads"),
                   default=os.cpu_count() or 1,
                   help="counting worker threads")
    _add_tokenizer_flags(p)
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "temperature", None) is not None and not args.temperature > 0:
        parser.error("--temperature must be > 0")
    try:
        return args.func(args, parser)
    except BilexError as e:
        print(f"bilex: error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
