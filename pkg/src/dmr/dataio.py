"""JSON-lines and TREC-format readers/writers for every pipeline artifact.

All writers are atomic (write to a temp file, then rename) and emit keys in
sorted order so that identical inputs produce byte-identical files.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from dmr.corpus import (
    Corpus,
    Document,
    Passage,
    PassageSource,
    Query,
    QueryPassagePair,
    SearchIntent,
)
from dmr.errors import DataError


def _dumps(record: dict) -> str:
    return json.dumps(record, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def write_jsonl(path, records: Iterable[dict]) -> int:
    """Atomically write records as JSON lines; returns the record count."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            for rec in records:
                fh.write(_dumps(rec))
                fh.write("\n")
                count += 1
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return count


def read_jsonl(path) -> Iterator[dict]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                yield json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path}:{lineno}: invalid JSON ({exc})") from None


def _require(rec: dict, key: str, path, lineno_hint: str = "") -> object:
    if key not in rec:
        raise DataError(f"{path}{lineno_hint}: record missing {key!r}")
    return rec[key]


def read_documents(path) -> List[Document]:
    docs = []
    for rec in read_jsonl(path):
        docs.append(
            Document(
                id=str(_require(rec, "id", path)),
                text=str(_require(rec, "text", path)),
                url=rec.get("url"),
            )
        )
    return docs


def read_passages(path) -> List[Passage]:
    passages = []
    for rec in read_jsonl(path):
        source = PassageSource(rec.get("source", "pdf_chunk"))
        passages.append(
            Passage.make(
                id=str(_require(rec, "id", path)),
                text=str(_require(rec, "text", path)),
                source=source,
                url=rec.get("url"),
            )
        )
    return passages


def write_passages(path, passages: Sequence[Passage]) -> int:
    def records():
        for p in passages:
            rec = {"id": p.id, "text": p.text, "source": p.source.value}
            if p.url is not None:
                rec["url"] = p.url
            yield rec

    return write_jsonl(path, records())


def read_corpus(path) -> Corpus:
    return Corpus.from_passages(read_passages(path))


def read_queries(path) -> List[Query]:
    queries = []
    for rec in read_jsonl(path):
        queries.append(
            Query(
                id=str(_require(rec, "id", path)),
                text=str(_require(rec, "text", path)),
                intent=SearchIntent.from_tag(str(_require(rec, "intent", path))),
            )
        )
    return queries


def write_queries(path, queries: Sequence[Query]) -> int:
    return write_jsonl(
        path, ({"id": q.id, "text": q.text, "intent": q.intent.value} for q in queries)
    )


def write_pairs(path, pairs: Sequence[QueryPassagePair]) -> int:
    return write_jsonl(
        path,
        (
            {
                "query_id": p.query.id,
                "query": p.query.text,
                "intent": p.query.intent.value,
                "positive_id": p.positive.id,
                "positive": p.positive.text,
            }
            for p in pairs
        ),
    )


def read_pairs(path, source: PassageSource = PassageSource.LLM_GENERATED) -> List[QueryPassagePair]:
    pairs = []
    for rec in read_jsonl(path):
        intent = SearchIntent.from_tag(str(_require(rec, "intent", path)))
        query = Query(
            id=str(_require(rec, "query_id", path)),
            text=str(_require(rec, "query", path)),
            intent=intent,
        )
        positive = Passage.make(
            id=str(_require(rec, "positive_id", path)),
            text=str(_require(rec, "positive", path)),
            source=source,
        )
        pairs.append(QueryPassagePair(query=query, positive=positive))
    return pairs


# --- vector stores -----------------------------------------------------------


def write_vectors(path, dim: int, items: Iterable[Tuple[str, Sequence[float]]]) -> int:
    def records():
        yield {"dim": int(dim)}
        for vid, vec in items:
            yield {"id": vid, "vector": [float(x) for x in vec]}

    return write_jsonl(path, records()) - 1


def read_vectors(path) -> Tuple[int, Dict[str, List[float]]]:
    rows = read_jsonl(path)
    try:
        header = next(rows)
    except StopIteration:
        raise DataError(f"{path}: empty vector file") from None
    if "dim" not in header:
        raise DataError(f"{path}: first record must declare 'dim'")
    dim = int(header["dim"])
    vectors: Dict[str, List[float]] = {}
    for rec in rows:
        vec = list(map(float, _require(rec, "vector", path)))
        if len(vec) != dim:
            raise DataError(
                f"{path}: vector for {rec.get('id')!r} has dim {len(vec)}, expected {dim}"
            )
        vectors[str(_require(rec, "id", path))] = vec
    return dim, vectors


# --- TREC-style qrels and run files ------------------------------------------


def read_qrels(path) -> Dict[Tuple[str, str], int]:
    """Whitespace-separated `query_id 0 passage_id relevance` lines."""
    qrels: Dict[Tuple[str, str], int] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 4:
                raise DataError(f"{path}:{lineno}: expected 4 fields, got {len(parts)}")
            qid, _, pid, rel = parts
            qrels[(qid, pid)] = int(rel)
    return qrels


def write_qrels(path, qrels: Dict[Tuple[str, str], int]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            for (qid, pid), rel in sorted(qrels.items()):
                fh.write(f"{qid} 0 {pid} {rel}\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_run(path, run: Dict[str, List[Tuple[str, float]]]) -> None:
    """`query_id passage_id rank score` lines, queries in sorted order."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            for qid in sorted(run):
                for rank, (pid, score) in enumerate(run[qid], 1):
                    fh.write(f"{qid} {pid} {rank} {score:.10g}\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_run(path) -> Dict[str, List[Tuple[str, float]]]:
    run: Dict[str, List[Tuple[str, float]]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 4:
                raise DataError(f"{path}:{lineno}: expected 4 fields, got {len(parts)}")
            qid, pid, _rank, score = parts
            run.setdefault(qid, []).append((pid, float(score)))
    return run


def write_json(path, obj: dict) -> None:
    """Atomic pretty-printed JSON document with sorted keys."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(obj, fh, sort_keys=True, ensure_ascii=False, indent=2)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_json(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
