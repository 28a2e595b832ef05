"""Exact, MinHash-LSH, and embedding-based near deduplication.

All three keep the earliest record, never reorder survivors, and report
each removal as `(removed_id, kept_id, reason)`.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from dmr import text as textmod
from dmr.corpus import Corpus, Passage
from dmr.errors import ConfigError, EmptyInputError
from dmr.kernels import minhash_signature, token_ids

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Removal:
    removed_id: str
    kept_id: str
    reason: str

    def to_record(self) -> dict:
        return {"removed_id": self.removed_id, "kept_id": self.kept_id, "reason": self.reason}


@dataclass(frozen=True)
class DedupResult:
    corpus: Corpus
    removals: Tuple[Removal, ...]


def dedup_exact(corpus: Corpus, key: str = "text_hash") -> DedupResult:
    """Drop passages whose `key` (url or text hash) was seen before."""
    if len(corpus) == 0:
        raise EmptyInputError("corpus is empty")
    if key not in ("url", "text_hash"):
        raise ConfigError(f"unknown dedup key {key!r}")

    seen: Dict[str, str] = {}
    survivors: List[Passage] = []
    removals: List[Removal] = []
    for p in corpus:
        if key == "url":
            if p.url is None:
                survivors.append(p)
                continue
            k = p.url
        else:
            k = hashlib.sha256(p.text.encode("utf-8")).hexdigest()
        if k in seen:
            removals.append(Removal(p.id, seen[k], f"exact:{key}"))
        else:
            seen[k] = p.id
            survivors.append(p)
    return DedupResult(Corpus.from_passages(survivors), tuple(removals))


def dedup_near_lsh(
    corpus: Corpus,
    jaccard_threshold: float,
    bands: int = 16,
    rows: int = 8,
    seed: int = 0,
    shingle: int = 3,
    num_perm: Optional[int] = None,
) -> DedupResult:
    """Remove near-duplicates found by MinHash banding.

    Banding proposes candidate pairs; a candidate is removed when the
    signature-estimated Jaccard reaches the threshold. Passages with no
    tokens cannot be shingled and are always kept.
    """
    if len(corpus) == 0:
        raise EmptyInputError("corpus is empty")
    if not 0.0 < jaccard_threshold <= 1.0:
        raise ConfigError("jaccard_threshold must be in (0, 1]")
    if bands < 1 or rows < 1:
        raise ConfigError("bands and rows must be positive")
    if num_perm is None:
        num_perm = bands * rows
    if num_perm != bands * rows:
        raise ConfigError(
            f"signature length {num_perm} does not equal bands*rows = {bands * rows}"
        )

    buckets: Dict[Tuple[int, bytes], List[int]] = {}
    sigs: Dict[int, np.ndarray] = {}
    survivors: List[Passage] = []
    removals: List[Removal] = []

    for pos, p in enumerate(corpus.passages):
        tokens = textmod.tokenize(p.text)
        if not tokens:
            survivors.append(p)
            continue
        sig = minhash_signature(token_ids(tokens, seed), num_perm, seed, shingle)
        keys = [(b, sig[b * rows : (b + 1) * rows].tobytes()) for b in range(bands)]

        kept_by: Optional[int] = None
        candidates = sorted({c for k in keys for c in buckets.get(k, [])})
        for cand in candidates:
            est = float(np.mean(sigs[cand] == sig))
            if est >= jaccard_threshold:
                kept_by = cand
                break
        if kept_by is not None:
            removals.append(Removal(p.id, corpus.passages[kept_by].id, "lsh"))
            continue

        sigs[pos] = sig
        survivors.append(p)
        for k in keys:
            buckets.setdefault(k, []).append(pos)

    return DedupResult(Corpus.from_passages(survivors), tuple(removals))


def dedup_near_embedding(
    corpus: Corpus, embedder, cosine_threshold: float = 0.9
) -> DedupResult:
    """Remove the later member of every pair with cosine above the threshold.

    Exact all-pairs scan over survivors (no ANN index); adequate below
    ~1e5 passages. Token-less passages cannot be embedded and are kept.
    """
    if len(corpus) == 0:
        raise EmptyInputError("corpus is empty")

    survivors: List[Passage] = []
    removals: List[Removal] = []
    kept_vecs: List[np.ndarray] = []
    kept_ids: List[str] = []
    matrix = np.zeros((0, 0))

    for p in corpus.passages:
        if p.token_count == 0:
            survivors.append(p)
            continue
        vec = np.asarray(embedder.embed_passage(p).values, dtype=np.float64)
        norm = float(np.linalg.norm(vec))
        if norm == 0.0:
            survivors.append(p)
            continue
        unit = vec / norm

        kept_by: Optional[str] = None
        if kept_vecs:
            if matrix.shape[0] != len(kept_vecs):
                matrix = np.vstack(kept_vecs)
            sims = matrix @ unit
            hits = np.nonzero(sims > cosine_threshold)[0]
            if hits.size:
                kept_by = kept_ids[int(hits[0])]
        if kept_by is not None:
            removals.append(Removal(p.id, kept_by, "embedding"))
            continue

        survivors.append(p)
        kept_vecs.append(unit)
        kept_ids.append(p.id)

    return DedupResult(Corpus.from_passages(survivors), tuple(removals))
