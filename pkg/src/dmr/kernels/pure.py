"""NumPy fallback for the hashing kernels.

Bit-for-bit identical to the compiled backend in ``_hashing.pyx``: both
sides use FNV-1a over UTF-8 bytes for token hashing and splitmix64 as the
mixer, all in wrapping 64-bit arithmetic. Any change here must be mirrored
there (``tests/test_kernels.py`` enforces agreement).
"""

from __future__ import annotations

from functools import lru_cache
from typing import List, Sequence

import numpy as np

BACKEND_NAME = "pure"

_MASK64 = (1 << 64) - 1
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_SHINGLE_INIT = 0x51E03DAF3B2C9A47


def _splitmix64(x: int) -> int:
    z = (x + _GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


def _splitmix64_np(x: np.ndarray) -> np.ndarray:
    z = x + np.uint64(_GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


@lru_cache(maxsize=1 << 20)
def _token_hash(token: str, seed_key: int) -> int:
    h = _FNV_OFFSET ^ seed_key
    for b in token.encode("utf-8"):
        h = ((h ^ b) * _FNV_PRIME) & _MASK64
    return _splitmix64(h)


def token_ids(tokens: Sequence[str], seed: int) -> np.ndarray:
    """Stable 64-bit id per token under the given seed."""
    seed_key = _splitmix64(seed & _MASK64)
    return np.fromiter(
        (_token_hash(t, seed_key) for t in tokens), dtype=np.uint64, count=len(tokens)
    )


def feature_hash(
    tokens: Sequence[str], dim: int, seed: int, use_bigrams: bool = True
) -> np.ndarray:
    """Signed unigram(+bigram) counts hashed into `dim` buckets.

    Returns raw counts as float64; callers normalize.
    """
    if dim < 1:
        raise ValueError("dim must be positive")
    vec = np.zeros(dim, dtype=np.float64)
    ids = token_ids(tokens, seed)
    feats = [ids]
    if use_bigrams and len(ids) >= 2:
        feats.append(_splitmix64_np((ids[:-1] * np.uint64(_FNV_PRIME)) ^ ids[1:]))
    for f in feats:
        if len(f) == 0:
            continue
        buckets = (f % np.uint64(dim)).astype(np.intp)
        signs = np.where((f >> np.uint64(63)).astype(bool), -1.0, 1.0)
        np.add.at(vec, buckets, signs)
    return vec


def shingle_hashes(ids: np.ndarray, shingle: int) -> np.ndarray:
    """Hash of every `shingle`-gram of token ids (one fold if too short)."""
    if shingle < 1:
        raise ValueError("shingle size must be positive")
    n = len(ids)
    if n == 0:
        raise ValueError("cannot shingle an empty token sequence")
    ids = np.ascontiguousarray(ids, dtype=np.uint64)
    width = min(shingle, n)
    m = n - width + 1
    acc = np.full(m, _SHINGLE_INIT, dtype=np.uint64)
    for j in range(width):
        acc = _splitmix64_np((acc * np.uint64(_FNV_PRIME)) ^ ids[j : j + m])
    return acc


def minhash_signature(
    ids: np.ndarray, num_perm: int, seed: int, shingle: int = 3
) -> np.ndarray:
    """MinHash signature of the token-id sequence's shingle set."""
    if num_perm < 1:
        raise ValueError("num_perm must be positive")
    sh = shingle_hashes(ids, shingle)
    base = _splitmix64((seed & _MASK64) ^ 0xA5A5A5A5A5A5A5A5)
    keys = _splitmix64_np(np.uint64(base) + np.arange(1, num_perm + 1, dtype=np.uint64))
    # (num_perm, n_shingles) broadcast; chunk the shingle axis to bound memory
    sig = np.full(num_perm, _MASK64, dtype=np.uint64)
    step = max(1, (1 << 20) // num_perm)
    for lo in range(0, len(sh), step):
        block = _splitmix64_np(sh[np.newaxis, lo : lo + step] ^ keys[:, np.newaxis])
        np.minimum(sig, block.min(axis=1), out=sig)
    return sig


def hash_token_list(tokens: List[str], seed: int) -> int:
    """Order-sensitive 64-bit hash of a whole token sequence."""
    seed_key = _splitmix64(seed & _MASK64)
    h = _FNV_OFFSET ^ seed_key
    for t in tokens:
        h = _splitmix64((h * _FNV_PRIME) ^ _token_hash(t, seed_key))
    return h
