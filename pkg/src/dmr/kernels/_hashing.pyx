# cython: language_level=3
"""Compiled hashing kernels (token ids, feature hashing, MinHash).

Output must stay bit-identical to ``dmr.kernels.pure``; the shared test
suite runs both backends against each other.
"""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport uint64_t

cnp.import_array()

BACKEND_NAME = "cython"

cdef uint64_t FNV_OFFSET = 0xCBF29CE484222325ULL
cdef uint64_t FNV_PRIME = 0x100000001B3ULL
cdef uint64_t GAMMA = 0x9E3779B97F4A7C15ULL
cdef uint64_t MIX1 = 0xBF58476D1CE4E5B9ULL
cdef uint64_t MIX2 = 0x94D049BB133111EBULL
cdef uint64_t SHINGLE_INIT = 0x51E03DAF3B2C9A47ULL
cdef uint64_t MINHASH_SALT = 0xA5A5A5A5A5A5A5A5ULL


cdef inline uint64_t splitmix64(uint64_t x) nogil:
    cdef uint64_t z = x + GAMMA
    z = (z ^ (z >> 30)) * MIX1
    z = (z ^ (z >> 27)) * MIX2
    return z ^ (z >> 31)


cdef inline uint64_t fnv1a(const unsigned char* data, Py_ssize_t n, uint64_t seed_key) nogil:
    cdef uint64_t h = FNV_OFFSET ^ seed_key
    cdef Py_ssize_t i
    for i in range(n):
        h = (h ^ <uint64_t>data[i]) * FNV_PRIME
    return splitmix64(h)


def token_ids(tokens, seed):
    """Stable 64-bit id per token under the given seed."""
    cdef uint64_t seed_key = splitmix64(<uint64_t>(seed & 0xFFFFFFFFFFFFFFFF))
    cdef Py_ssize_t n = len(tokens)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] out = np.empty(n, dtype=np.uint64)
    cdef Py_ssize_t i
    cdef bytes raw
    for i in range(n):
        raw = tokens[i].encode("utf-8")
        out[i] = fnv1a(<const unsigned char*>raw, len(raw), seed_key)
    return out


def feature_hash(tokens, dim, seed, use_bigrams=True):
    """Signed unigram(+bigram) counts hashed into `dim` buckets."""
    if dim < 1:
        raise ValueError("dim must be positive")
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] ids = token_ids(tokens, seed)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vec = np.zeros(dim, dtype=np.float64)
    cdef uint64_t d = <uint64_t>dim
    cdef Py_ssize_t n = ids.shape[0]
    cdef Py_ssize_t i
    cdef uint64_t f
    cdef bint bigrams = bool(use_bigrams)
    with nogil:
        for i in range(n):
            f = ids[i]
            vec[<Py_ssize_t>(f % d)] += -1.0 if (f >> 63) else 1.0
        if bigrams:
            for i in range(n - 1):
                f = splitmix64((ids[i] * FNV_PRIME) ^ ids[i + 1])
                vec[<Py_ssize_t>(f % d)] += -1.0 if (f >> 63) else 1.0
    return vec


def shingle_hashes(ids, shingle):
    """Hash of every `shingle`-gram of token ids (one fold if too short)."""
    if shingle < 1:
        raise ValueError("shingle size must be positive")
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] arr = np.ascontiguousarray(ids, dtype=np.uint64)
    cdef Py_ssize_t n = arr.shape[0]
    if n == 0:
        raise ValueError("cannot shingle an empty token sequence")
    cdef Py_ssize_t width = min(<Py_ssize_t>shingle, n)
    cdef Py_ssize_t m = n - width + 1
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] acc = np.empty(m, dtype=np.uint64)
    cdef Py_ssize_t i, j
    cdef uint64_t h
    with nogil:
        for i in range(m):
            h = SHINGLE_INIT
            for j in range(width):
                h = splitmix64((h * FNV_PRIME) ^ arr[i + j])
            acc[i] = h
    return acc


def minhash_signature(ids, num_perm, seed, shingle=3):
    """MinHash signature of the token-id sequence's shingle set."""
    if num_perm < 1:
        raise ValueError("num_perm must be positive")
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] sh = shingle_hashes(ids, shingle)
    cdef uint64_t base = splitmix64(
        <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF) ^ MINHASH_SALT
    )
    cdef Py_ssize_t p = <Py_ssize_t>num_perm
    cdef Py_ssize_t m = sh.shape[0]
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] sig = np.empty(p, dtype=np.uint64)
    cdef Py_ssize_t i, k
    cdef uint64_t key, best, v
    with nogil:
        for i in range(p):
            key = splitmix64(base + <uint64_t>(i + 1))
            best = 0xFFFFFFFFFFFFFFFFULL
            for k in range(m):
                v = splitmix64(sh[k] ^ key)
                if v < best:
                    best = v
            sig[i] = best
    return sig


def hash_token_list(tokens, seed):
    """Order-sensitive 64-bit hash of a whole token sequence."""
    cdef uint64_t seed_key = splitmix64(<uint64_t>(seed & 0xFFFFFFFFFFFFFFFF))
    cdef uint64_t h = FNV_OFFSET ^ seed_key
    cdef bytes raw
    for t in tokens:
        raw = t.encode("utf-8")
        h = splitmix64((h * FNV_PRIME) ^ fnv1a(<const unsigned char*>raw, len(raw), seed_key))
    return h
