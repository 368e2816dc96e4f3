"""Corpus ingestion, word frequencies, and seeded concordance sampling.

A corpus file is line-delimited: either JSON records with fields
``id``, ``collection``, ``text``, or plain text (one document per line,
collection "default").  The built index is immutable and safe to query
from multiple threads.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import IngestError
from .tokenization import (
    DEFAULT_TOKENIZER,
    TokenizerConfig,
    sentence_spans,
    token_spans,
)


@dataclass(frozen=True)
class Document:
    doc_id: str
    collection: str
    text: str


@dataclass(frozen=True)
class CollectionCount:
    collection: str
    count: int
    percent: float


@dataclass(frozen=True)
class HistogramBin:
    """Count-space bin [lo, hi) and how many distinct tokens fall in it."""

    lo: float
    hi: float
    tokens: int


@dataclass(frozen=True)
class FrequencyReport:
    token: str
    total_count: int
    per_collection: tuple[CollectionCount, ...]
    rank: int | None
    distribution: tuple[HistogramBin, ...]
    token_bin: int | None


@dataclass(frozen=True)
class ConcordanceLine:
    doc_id: str
    collection: str
    sentence: str
    char_span: tuple[int, int]


@dataclass(frozen=True)
class _Sentence:
    doc_idx: int
    text: str


@dataclass(frozen=True)
class _Posting:
    """One token occurrence: sentence id plus char span inside the sentence."""

    sentence: int
    position: int
    start: int
    end: int


class CorpusIndex:
    """Inverted index over tagged documents with materialized frequencies."""

    def __init__(self, docs: Sequence[Document], tokenizer: TokenizerConfig):
        if not docs:
            raise IngestError("empty corpus: nothing to index")
        self.docs = tuple(docs)
        self.tokenizer = tokenizer
        self.content_hash = ""
        self.collections: tuple[str, ...] = tuple(
            sorted({d.collection for d in docs})
        )

        sentences: list[_Sentence] = []
        postings: dict[str, list[_Posting]] = {}
        counts: dict[str, int] = {}
        by_collection: dict[str, dict[str, int]] = {}
        total = 0
        for doc_idx, doc in enumerate(self.docs):
            coll_counts = by_collection.setdefault(doc.collection, {})
            for raw_sent, _offset in sentence_spans(doc.text):
                # store the NFC form so token char spans index into it
                sent_text = tokenizer.normalize_text(raw_sent)
                sent_id = len(sentences)
                sentences.append(_Sentence(doc_idx, sent_text))
                for pos, span in enumerate(token_spans(sent_text, tokenizer)):
                    token = span.text
                    postings.setdefault(token, []).append(
                        _Posting(sent_id, pos, span.start, span.end)
                    )
                    counts[token] = counts.get(token, 0) + 1
                    coll_counts[token] = coll_counts.get(token, 0) + 1
                    total += 1

        self._sentences = sentences
        self._postings = postings
        self.counts = counts
        self._by_collection = by_collection
        self.total_tokens = total
        self._edges = _histogram_edges(max(counts.values())) if counts else [1.0, 2.0]
        self._bin_tokens = [0] * (len(self._edges) - 1)
        for c in counts.values():
            self._bin_tokens[self._bin_of(c)] += 1

    def sentences_tokens(self):
        """Yield each sentence as a list of normalized tokens, in order."""
        for sent in self._sentences:
            yield [s.text for s in token_spans(sent.text, self.tokenizer)]

    # -- frequencies ---------------------------------------------------------

    def count(self, token: str) -> int:
        return self.counts.get(self.tokenizer.normalize(token), 0)

    def percentile(self, token: str) -> float | None:
        """Share of distinct tokens with count <= this token's count, 0-100."""
        c = self.count(token)
        if c == 0:
            return None
        below = sum(1 for v in self.counts.values() if v <= c)
        return 100.0 * below / len(self.counts)

    def frequency(self, token: str) -> FrequencyReport:
        key = self.tokenizer.normalize(token)
        total = self.counts.get(key, 0)
        distribution = tuple(
            HistogramBin(self._edges[i], self._edges[i + 1], self._bin_tokens[i])
            for i in range(len(self._bin_tokens))
        )
        if total == 0:
            return FrequencyReport(key, 0, (), None, distribution, None)
        per_coll = []
        for coll, coll_counts in self._by_collection.items():
            c = coll_counts.get(key, 0)
            if c:
                per_coll.append(CollectionCount(coll, c, 100.0 * c / total))
        per_coll.sort(key=lambda cc: (-cc.count, cc.collection))
        # competition ranking: ties share the smaller rank
        rank = 1 + sum(1 for v in self.counts.values() if v > total)
        return FrequencyReport(
            key, total, tuple(per_coll), rank, distribution, self._bin_of(total)
        )

    def _bin_of(self, count: int) -> int:
        for i in range(len(self._edges) - 1):
            if self._edges[i] <= count < self._edges[i + 1]:
                return i
        return len(self._edges) - 2

    # -- concordance ---------------------------------------------------------

    def concordance(
        self,
        token: str,
        max_lines: int = 5,
        collections: Iterable[str] | None = None,
        seed: int | None = None,
    ) -> list[ConcordanceLine]:
        """Uniform sample (without replacement) of sentences containing token.

        A sentence appears at most once even when the token repeats inside
        it; the char_span points at the first occurrence.  Same seed, same
        sample; seed None draws fresh randomness.
        """
        if max_lines < 1:
            raise IngestError("max_lines must be >= 1")
        key = self.tokenizer.normalize(token)
        wanted = set(collections) if collections is not None else None
        matches: list[tuple[int, _Posting]] = []
        seen: set[int] = set()
        for p in self._postings.get(key, ()):
            if p.sentence in seen:
                continue
            seen.add(p.sentence)
            doc = self.docs[self._sentences[p.sentence].doc_idx]
            if wanted is not None and doc.collection not in wanted:
                continue
            matches.append((p.sentence, p))

        sample = _fisher_yates_sample(matches, max_lines, seed)
        lines = []
        for sent_id, posting in sample:
            sent = self._sentences[sent_id]
            doc = self.docs[sent.doc_idx]
            lines.append(
                ConcordanceLine(
                    doc.doc_id,
                    doc.collection,
                    sent.text,
                    (posting.start, posting.end),
                )
            )
        return lines


def _histogram_edges(max_count: int) -> list[float]:
    """20 log10-spaced bin edges over [1, max_count], last bin closed."""
    if max_count <= 1:
        return [1.0, 2.0]
    n_bins = 20
    top = math.log10(max_count)
    edges = [10.0 ** (top * i / n_bins) for i in range(n_bins)]
    edges[0] = 1.0
    edges.append(max_count + 1.0)
    return edges


def _fisher_yates_sample(items: list, k: int, seed: int | None) -> list:
    """First k of a seeded partial Fisher-Yates shuffle."""
    rng = random.Random(seed)
    pool = list(items)
    n = len(pool)
    k = min(k, n)
    for i in range(k):
        j = rng.randrange(i, n)
        pool[i], pool[j] = pool[j], pool[i]
    return pool[:k]


# -- ingestion ----------------------------------------------------------------


def ingest(
    source: str | Path,
    tokenizer: TokenizerConfig = DEFAULT_TOKENIZER,
) -> CorpusIndex:
    """Build a CorpusIndex from a corpus file (JSONL or plain text)."""
    raw = Path(source).read_bytes()
    index = ingest_text(raw.decode("utf-8"), tokenizer)
    index.content_hash = hashlib.sha256(raw).hexdigest()
    return index


def ingest_text(
    text: str, tokenizer: TokenizerConfig = DEFAULT_TOKENIZER
) -> CorpusIndex:
    lines = text.splitlines()
    first = next((ln for ln in lines if ln.strip()), None)
    if first is None:
        raise IngestError("empty corpus: nothing to index")
    docs = (
        _parse_jsonl(lines) if first.lstrip().startswith("{") else _parse_plain(lines)
    )
    index = CorpusIndex(docs, tokenizer)
    index.content_hash = hashlib.sha256(text.encode("utf-8")).hexdigest()
    return index


def _parse_jsonl(lines: list[str]) -> list[Document]:
    docs = []
    seen_ids: set[str] = set()
    for n, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise IngestError(f"malformed JSON: {exc.msg}", record=n) from None
        if not isinstance(rec, dict):
            raise IngestError("record is not an object", record=n)
        try:
            doc_id, collection, body = rec["id"], rec["collection"], rec["text"]
        except KeyError as exc:
            raise IngestError(f"missing field {exc.args[0]!r}", record=n) from None
        if not all(isinstance(v, str) for v in (doc_id, collection, body)):
            raise IngestError("id, collection, text must be strings", record=n)
        if doc_id in seen_ids:
            raise IngestError(f"duplicate doc_id {doc_id!r}", record=n)
        seen_ids.add(doc_id)
        docs.append(Document(doc_id, collection, body))
    return docs


def _parse_plain(lines: list[str]) -> list[Document]:
    return [
        Document(f"line-{n}", "default", line)
        for n, line in enumerate(lines, start=1)
        if line.strip()
    ]
