"""Core data model: search intents, passages, queries, corpora, chunking."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from dmr import text as textmod
from dmr.errors import DataError, EmptyInputError
from dmr.kernels import hash_token_list


class SearchIntent(enum.Enum):
    """The six supported search intents, each with its query instruction."""

    QA = "QA"
    QAdoc = "QAdoc"
    Twitter = "Twitter"
    FactCheck = "FactCheck"
    NLI = "NLI"
    STS = "STS"

    @property
    def instruction_text(self) -> str:
        return _INSTRUCTIONS[self]

    @classmethod
    def from_tag(cls, tag: str) -> "SearchIntent":
        try:
            return cls(tag)
        except ValueError:
            raise DataError(f"unknown search intent {tag!r}") from None


_INSTRUCTIONS: Dict[SearchIntent, str] = {
    SearchIntent.QA: (
        "Given the question, retrieve most relevant passage that best answers the question"
    ),
    SearchIntent.QAdoc: (
        "Given the question, retrieve most relevant document that answers the question"
    ),
    SearchIntent.Twitter: (
        "Given the user query, retrieve the most relevant Twitter text that meets the request"
    ),
    SearchIntent.FactCheck: (
        "Given the claim, retrieve most relevant document that supports or refutes the claim"
    ),
    SearchIntent.NLI: (
        "Given the premise, retrieve most relevant hypothesis that is entailed by the premise"
    ),
    SearchIntent.STS: "Given the sentence, retrieve the sentence with the same meaning",
}


class PassageSource(enum.Enum):
    PDF_CHUNK = "pdf_chunk"
    LLM_GENERATED = "llm_generated"
    GD_DATASET = "gd_dataset"
    SYNTHETIC_TEST = "synthetic_test"


@dataclass(frozen=True)
class Document:
    """A raw ingested document (plain text, one record per source file line)."""

    id: str
    text: str
    url: Optional[str] = None


@dataclass(frozen=True)
class Passage:
    id: str
    text: str
    token_count: int
    source: PassageSource
    url: Optional[str] = None

    @classmethod
    def make(
        cls,
        id: str,
        text: str,
        source: PassageSource = PassageSource.PDF_CHUNK,
        url: Optional[str] = None,
    ) -> "Passage":
        """Build a passage with its token count computed from the text."""
        return cls(id=id, text=text, token_count=textmod.token_count(text), source=source, url=url)


@dataclass(frozen=True)
class Query:
    id: str
    text: str
    intent: SearchIntent


@dataclass(frozen=True)
class QueryPassagePair:
    query: Query
    positive: Passage


@dataclass(frozen=True)
class Corpus:
    """Immutable ordered passage collection with id lookup."""

    passages: Tuple[Passage, ...]
    _index: Dict[str, int] = field(repr=False, compare=False, default_factory=dict)

    @classmethod
    def from_passages(cls, passages: Sequence[Passage]) -> "Corpus":
        index: Dict[str, int] = {}
        for pos, p in enumerate(passages):
            if p.id in index:
                raise DataError(f"duplicate passage id {p.id!r} in corpus")
            index[p.id] = pos
        return cls(passages=tuple(passages), _index=index)

    def __len__(self) -> int:
        return len(self.passages)

    def __iter__(self) -> Iterator[Passage]:
        return iter(self.passages)

    def __contains__(self, passage_id: str) -> bool:
        return passage_id in self._index

    def get(self, passage_id: str) -> Passage:
        try:
            return self.passages[self._index[passage_id]]
        except KeyError:
            raise DataError(f"passage id {passage_id!r} not in corpus") from None

    def position(self, passage_id: str) -> int:
        try:
            return self._index[passage_id]
        except KeyError:
            raise DataError(f"passage id {passage_id!r} not in corpus") from None

    def ids(self) -> List[str]:
        return [p.id for p in self.passages]


def chunk_document(
    doc: str, max_tokens: int, doc_id: Optional[str] = None
) -> List[Passage]:
    """Split a document into passages of at most `max_tokens` tokens.

    Cuts are placed between tokens, preferring the last sentence boundary
    inside the window; the emitted chunk texts partition the original
    character stream, so the concatenated token streams reproduce the
    document's token stream exactly.
    """
    if max_tokens < 1:
        raise DataError("max_tokens must be >= 1")
    spans = textmod.token_spans(doc)
    if not spans:
        raise EmptyInputError("document has no tokens")
    flags = textmod.sentence_boundaries(doc)
    n = len(spans)
    if doc_id is None:
        doc_id = f"doc-{hash_token_list(textmod.tokenize(doc), 0):016x}"

    cuts: List[int] = []  # exclusive token index ending each chunk
    start = 0
    while start < n:
        window_end = min(start + max_tokens, n)
        if window_end == n:
            cuts.append(n)
            break
        cut = window_end
        for i in range(window_end - 1, start - 1, -1):
            if flags[i]:
                cut = i + 1
                break
        cuts.append(cut)
        start = cut

    passages = []
    char_start = 0
    for k, cut in enumerate(cuts):
        char_end = spans[cut][0] if cut < n else len(doc)
        chunk_text = doc[char_start:char_end]
        passages.append(
            Passage.make(id=f"{doc_id}#c{k}", text=chunk_text, source=PassageSource.PDF_CHUNK)
        )
        char_start = char_end
    return passages
