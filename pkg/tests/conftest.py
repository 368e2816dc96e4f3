"""Shared fixtures: small deterministic stores, corpora, and models."""

from __future__ import annotations

import json
import sys

import numpy as np
import pytest

from biaslens.corpus import ingest_text
from biaslens.embeddings import EmbeddingStore


@pytest.fixture(scope="session")
def tiny_store() -> EmbeddingStore:
    """Hand-placed 2-D geometry used by the worked examples."""
    vocab = ["p", "q", "r", "mid", "ortho"]
    vectors = np.array(
        [
            [1.0, 0.0],
            [-1.0, 0.0],
            [0.0, 1.0],
            [1.5, 0.5],
            [-0.5, 1.5],
        ]
    )
    return EmbeddingStore("tiny", vocab, vectors)


@pytest.fixture(scope="session")
def random_store() -> EmbeddingStore:
    """Seeded 200-token x 20-dim store for neighbor/scoring tests."""
    rng = np.random.default_rng(1234)
    vocab = [f"w{i:03d}" for i in range(200)]
    vectors = rng.standard_normal((200, 20))
    return EmbeddingStore("rand200", vocab, vectors)


@pytest.fixture(scope="session")
def small_corpus():
    docs = [
        {"id": "d1", "collection": "news", "text": "a b a. the cat sat."},
        {"id": "d2", "collection": "fiction", "text": "b c! the cat ran"},
        {"id": "d3", "collection": "news", "text": "cats and the cat"},
    ]
    return ingest_text("\n".join(json.dumps(d) for d in docs))


def corpus_from_sentences(sentences: list[str], collection: str = "default"):
    """One document per sentence, ready for trainer/LM tests."""
    docs = [
        {"id": f"s{i}", "collection": collection, "text": s}
        for i, s in enumerate(sentences)
    ]
    return ingest_text("\n".join(json.dumps(d) for d in docs))


@pytest.fixture(scope="session")
def thousand_doc_corpus():
    """1000 documents over 3 collections with a controlled vocabulary."""
    rng = np.random.default_rng(99)
    words = [f"tok{i}" for i in range(60)]
    collections = ["alpha", "beta", "gamma"]
    lines = []
    for i in range(1000):
        n = int(rng.integers(4, 12))
        body = " ".join(rng.choice(words, size=n))
        lines.append(
            json.dumps(
                {
                    "id": f"doc{i}",
                    "collection": collections[i % 3],
                    "text": body + ".",
                }
            )
        )
    return ingest_text("\n".join(lines))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print the acceptance checklist, one line per criterion."""
    for name in ("tests.test_acceptance", "test_acceptance"):
        mod = sys.modules.get(name)
        if mod is not None and getattr(mod, "RESULTS", None):
            terminalreporter.section("acceptance checklist")
            for label, status in mod.RESULTS:
                terminalreporter.write_line(f"[{status}] {label}")
            break
