"""Vector-space document retrieval.

Documents are indexed by stemmed content terms with log-scaled term
frequencies; queries carry the expansion weights. Scores are cosine
similarities, so they always land in [0, 1].
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .errors import (
    DuplicateDocId,
    EmptyCorpus,
    IndexFormatError,
    InputError,
)
from .expansion import ExpandedQuery
from .textnorm import StopList, remove_stop_words, split_sentences, tokenize

INDEX_VERSION = 1


@dataclass(frozen=True)
class Document:
    doc_id: str
    text: str


@dataclass(frozen=True)
class ScoredDoc:
    doc_id: str
    score: float


@dataclass(frozen=True)
class Passage:
    doc_id: str
    sentence_index: int
    text: str


@dataclass(frozen=True)
class Index:
    """Inverted index: term -> {doc_id: tf weight}, plus document norms."""

    doc_ids: tuple[str, ...]
    postings: Mapping[str, Mapping[str, float]]
    doc_norms: Mapping[str, float]

    @property
    def doc_count(self) -> int:
        return len(self.doc_ids)

    def idf(self, term: str) -> float:
        df = len(self.postings.get(term, {}))
        if df == 0:
            return 0.0
        return math.log(self.doc_count / df)


def content_terms(text: str, stops: StopList) -> list[str]:
    """Stemmed tokens of a text with stop words removed."""
    return [tok.stem for tok in remove_stop_words(tokenize(text), stops)]


def _tf_weight(count: int) -> float:
    return 1.0 + math.log(count)


def build_index(corpus: Sequence[Document], stops: StopList) -> Index:
    if not corpus:
        raise EmptyCorpus("cannot index an empty corpus")
    seen: set[str] = set()
    postings: dict[str, dict[str, float]] = {}
    doc_ids: list[str] = []
    for doc in corpus:
        if doc.doc_id in seen:
            raise DuplicateDocId(f"duplicate document id {doc.doc_id!r}")
        seen.add(doc.doc_id)
        doc_ids.append(doc.doc_id)
        counts: dict[str, int] = {}
        for term in content_terms(doc.text, stops):
            counts[term] = counts.get(term, 0) + 1
        for term, count in counts.items():
            postings.setdefault(term, {})[doc.doc_id] = _tf_weight(count)

    n = len(doc_ids)
    norms_sq: dict[str, float] = {doc_id: 0.0 for doc_id in doc_ids}
    for term, row in postings.items():
        idf = math.log(n / len(row))
        for doc_id, tf in row.items():
            norms_sq[doc_id] += (tf * idf) ** 2
    doc_norms = {doc_id: math.sqrt(v) for doc_id, v in norms_sq.items()}
    return Index(doc_ids=tuple(doc_ids), postings=postings, doc_norms=doc_norms)


def retrieve(
    index: Index,
    query: ExpandedQuery | Mapping[str, float],
    k: int = 10,
) -> list[ScoredDoc]:
    """Top-k documents by cosine similarity.

    Zero-score documents are excluded; score ties order by document id.
    """
    if k < 1:
        raise InputError(f"k must be at least 1, got {k}")
    weights = query.weights() if isinstance(query, ExpandedQuery) else dict(query)
    qvec = {}
    for term, weight in weights.items():
        idf = index.idf(term)
        if idf > 0.0 and weight > 0.0:
            qvec[term] = weight * idf
    qnorm = math.sqrt(sum(v * v for v in qvec.values()))
    if qnorm == 0.0:
        return []

    dots: dict[str, float] = {}
    for term, qv in qvec.items():
        idf = index.idf(term)
        for doc_id, tf in index.postings[term].items():
            dots[doc_id] = dots.get(doc_id, 0.0) + qv * tf * idf
    scored = [
        ScoredDoc(doc_id, dot / (qnorm * index.doc_norms[doc_id]))
        for doc_id, dot in dots.items()
        if dot > 0.0 and index.doc_norms[doc_id] > 0.0
    ]
    scored.sort(key=lambda sd: (-sd.score, sd.doc_id))
    return scored[:k]


def select_passages(
    corpus: Mapping[str, str],
    ranked: Sequence[ScoredDoc],
    m: int = 3,
) -> list[Passage]:
    """Sentences of the top-m ranked documents, with provenance."""
    if m < 1:
        raise InputError(f"m must be at least 1, got {m}")
    passages: list[Passage] = []
    for sd in ranked[:m]:
        text = corpus.get(sd.doc_id)
        if text is None:
            continue
        for idx, sent in enumerate(split_sentences(text)):
            passages.append(Passage(sd.doc_id, idx, sent))
    return passages


def load_corpus(path: str | Path) -> list[Document]:
    """Load documents from a directory of .txt files or a JSONL file.

    Directory mode uses file name stems as document ids; JSONL mode
    expects one {"id": ..., "text": ...} object per line.
    """
    path = Path(path)
    docs: list[Document] = []
    if path.is_dir():
        for file in sorted(path.glob("*.txt")):
            docs.append(Document(file.stem, file.read_text(encoding="utf-8")))
        if not docs:
            raise EmptyCorpus(f"no .txt documents under {path}")
        return docs
    if not path.is_file():
        raise EmptyCorpus(f"corpus path {path} does not exist")
    for lineno, line in enumerate(
        path.read_text(encoding="utf-8").splitlines(), start=1
    ):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise IndexFormatError(f"{path}:{lineno}: bad JSON: {exc}") from exc
        if not isinstance(obj, dict) or "id" not in obj or "text" not in obj:
            raise IndexFormatError(
                f"{path}:{lineno}: expected an object with 'id' and 'text'"
            )
        docs.append(Document(str(obj["id"]), str(obj["text"])))
    if not docs:
        raise EmptyCorpus(f"no documents in {path}")
    return docs


def save_index(index: Index, path: str | Path) -> None:
    payload = {
        "version": INDEX_VERSION,
        "n": index.doc_count,
        "postings": {t: dict(row) for t, row in index.postings.items()},
        "norms": dict(index.doc_norms),
    }
    text = json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=1)
    Path(path).write_text(text + "\n", encoding="utf-8")


def load_index(path: str | Path) -> Index:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise IndexFormatError(f"cannot read index {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise IndexFormatError(f"index {path} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict) or payload.get("version") != INDEX_VERSION:
        raise IndexFormatError(
            f"index {path} has unsupported version {payload.get('version')!r}"
        )
    try:
        n = payload["n"]
        postings = payload["postings"]
        norms = payload["norms"]
    except KeyError as exc:
        raise IndexFormatError(f"index {path} is missing field {exc}") from exc
    if n != len(norms):
        raise IndexFormatError(
            f"index {path} says {n} documents but stores {len(norms)} norms"
        )
    for term, row in postings.items():
        for doc_id in row:
            if doc_id not in norms:
                raise IndexFormatError(
                    f"index {path} references unknown document {doc_id!r}"
                )
    return Index(
        doc_ids=tuple(sorted(norms)),
        postings=postings,
        doc_norms=norms,
    )
