"""Shared test utilities: tiny corpora and random corpus generation."""

import random

from bilex import SentencePair, accumulate

# the apple/juice/dog corpus used throughout: CPE separates "pomme" from
# the stop-word-like "la" while raw co-occurrence ties them
THREE_PAIR_CORPUS = [
    (["the", "apple"], ["la", "pomme"]),
    (["the", "juice"], ["la", "jus"]),
    (["the", "dog"], ["la", "chien"]),
]


def to_pairs(raw):
    return [
        SentencePair(tuple(src), tuple(tgt), i + 1)
        for i, (src, tgt) in enumerate(raw)
    ]


def store_from(raw):
    return accumulate(to_pairs(raw))


def random_corpus(rng: random.Random, max_pairs=40, max_len=8,
                  src_vocab=20, tgt_vocab=20):
    """Random raw corpus with a skewed (roughly Zipfian) word distribution."""
    src_words = [f"s{i}" for i in range(src_vocab)]
    tgt_words = [f"t{i}" for i in range(tgt_vocab)]
    src_weights = [1.0 / (i + 1) for i in range(src_vocab)]
    tgt_weights = [1.0 / (i + 1) for i in range(tgt_vocab)]
    n = rng.randint(1, max_pairs)
    raw = []
    for _ in range(n):
        src = rng.choices(src_words, weights=src_weights, k=rng.randint(1, max_len))
        tgt = rng.choices(tgt_words, weights=tgt_weights, k=rng.randint(1, max_len))
        raw.append((src, tgt))
    return raw


def write_corpus(tmp_path, raw, prefix="corpus"):
    src_path = tmp_path / f"{prefix}.src"
    tgt_path = tmp_path / f"{prefix}.tgt"
    src_path.write_text(
        "\n".join(" ".join(s) for s, _ in raw) + "\n", encoding="utf-8")
    tgt_path.write_text(
        "\n".join(" ".join(t) for _, t in raw) + "\n", encoding="utf-8")
    return src_path, tgt_path
