"""Exception types shared across the package.

The CLI maps these onto exit codes: word misses from `query` are a soft
failure (exit 1), bad flag values are usage errors (exit 2), and everything
below that touches files or file contents exits 3.
"""


class BilexError(Exception):
    """Base class for all errors raised by this package."""


class CorpusIOError(BilexError):
    """A corpus, lexicon, or gold file could not be read or written."""


class EmptyCorpusError(BilexError):
    """No usable sentence pairs survived corpus parsing."""


class WordNotFoundError(BilexError, LookupError):
    """A queried word is not present in the vocabulary or lexicon."""

    def __init__(self, word: str):
        super().__init__(f"word not found: {word!r}")
        self.word = word


class LexiconFormatError(BilexError):
    """A lexicon file has a bad magic line or unsupported version."""


class LexiconIntegrityError(BilexError):
    """A lexicon file is structurally broken (rank gaps, duplicates, truncation)."""


class GoldDictionaryError(BilexError):
    """A gold dictionary file is unreadable or contains no valid pairs."""


class SamplerError(BilexError):
    """Test-word sampling cannot proceed (e.g. charset filters out everything)."""
