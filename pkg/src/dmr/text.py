"""Tokenization and sentence-boundary helpers.

One tokenizer is used everywhere: lowercased alphanumeric runs, with
whitespace and punctuation acting as separators. It is deliberately
dependency-free and deterministic so that token counts, chunk boundaries,
and hashing features are stable across runs and platforms.
"""

from __future__ import annotations

import re
from typing import List, Tuple

_TOKEN_RE = re.compile(r"[A-Za-z0-9]+")
_SENTENCE_END_CHARS = frozenset(".!?")


def tokenize(text: str) -> List[str]:
    """Split text into lowercased alphanumeric tokens."""
    return [m.group().lower() for m in _TOKEN_RE.finditer(text)]


def token_spans(text: str) -> List[Tuple[int, int]]:
    """Character (start, end) span of each token, in order."""
    return [m.span() for m in _TOKEN_RE.finditer(text)]


def token_count(text: str) -> int:
    """Number of tokens produced by :func:`tokenize`."""
    return sum(1 for _ in _TOKEN_RE.finditer(text))


def sentence_boundaries(text: str) -> List[bool]:
    """Per-token flag: True when a sentence ends right after that token.

    A sentence end is any '.', '!' or '?' occurring in the gap between a
    token and the next one (or after the last token). The list has one
    entry per token; the last entry is always True.
    """
    spans = token_spans(text)
    flags = []
    for i, (_, end) in enumerate(spans):
        gap_end = spans[i + 1][0] if i + 1 < len(spans) else len(text)
        gap = text[end:gap_end]
        flags.append(any(c in _SENTENCE_END_CHARS for c in gap))
    if flags:
        flags[-1] = True
    return flags


def normalize_for_match(text: str) -> str:
    """Canonical form for exact-string overlap checks: lowercase, collapsed whitespace."""
    return " ".join(text.lower().split())
