"""Bias spaces over word embeddings and the reports built on them.

A bias space is the direction between two opposed extremes, each given as
a seed word list.  Words are scored by cosine against that direction, so
score > 0 means closer to extreme_a.  All values here are immutable.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .corpus import CorpusIndex
from .embeddings import EmbeddingStore
from .errors import (
    EmbeddingMismatchError,
    EmptyListError,
    ListOverlapError,
    PairLengthError,
    ValidationError,
)

METHODS = ("centroid-diff", "pca-pairs")


@dataclass(frozen=True)
class WordList:
    """Named, ordered, duplicate-free list of seed words.

    ``resolved`` and ``missing`` partition ``words`` against one embedding
    store; they are empty until :meth:`resolve` is called.
    """

    name: str
    words: tuple[str, ...]
    resolved: tuple[str, ...] = ()
    missing: tuple[str, ...] = ()
    language: str | None = None
    provenance: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(self.words))
        object.__setattr__(self, "resolved", tuple(self.resolved))
        object.__setattr__(self, "missing", tuple(self.missing))
        if not self.name:
            raise ValidationError("word list needs a name")
        if not self.words:
            raise EmptyListError(f"word list {self.name!r} is empty")
        if len(set(self.words)) != len(self.words):
            dupes = sorted({w for w in self.words if self.words.count(w) > 1})
            raise ValidationError(
                f"duplicate words in list {self.name!r}: {', '.join(dupes)}"
            )

    def resolve(self, store: EmbeddingStore) -> "WordList":
        """Partition words into in-vocab and OOV against ``store``.

        Two distinct words that normalize to the same vocabulary entry are
        rejected: they would silently double-weight one vector.
        """
        resolved: list[str] = []
        missing: list[str] = []
        by_row: dict[int, str] = {}
        for word in self.words:
            row = store.lookup(word)
            if row is None:
                missing.append(word)
                continue
            if row in by_row:
                raise ValidationError(
                    f"words {by_row[row]!r} and {word!r} in list {self.name!r} "
                    "collapse to the same vocabulary entry"
                )
            by_row[row] = word
            resolved.append(word)
        return WordList(
            self.name,
            self.words,
            tuple(resolved),
            tuple(missing),
            self.language,
            self.provenance,
        )


@dataclass(frozen=True, eq=False)
class BiasSpace:
    """Direction from extreme_b toward extreme_a in one embedding."""

    extreme_a: WordList
    extreme_b: WordList
    direction: np.ndarray
    method: str
    store: EmbeddingStore
    unit_seed_vectors: bool = True

    @property
    def embedding_id(self) -> str:
        return self.store.id

    @property
    def key(self) -> str:
        return (
            f"{self.extreme_a.name}|{self.extreme_b.name}"
            f"|{self.method}|{self.store.id}"
        )


@dataclass(frozen=True)
class BiasScore:
    token: str
    score: float
    space: str


@dataclass(frozen=True)
class ScoreReport:
    space: str
    scores: tuple[BiasScore, ...]
    missing: tuple[str, ...]


@dataclass(frozen=True)
class TwoSpacePoint:
    token: str
    x: float
    y: float


@dataclass(frozen=True)
class TwoSpaceReport:
    space_x: str
    space_y: str
    points: tuple[TwoSpacePoint, ...]
    missing: tuple[str, ...]


@dataclass(frozen=True)
class PairAsymmetry:
    """Scores of an a-marked and b-marked form; 0 asymmetry = symmetric."""

    word_a: str
    word_b: str
    score_a: float
    score_b: float
    asymmetry: float


@dataclass(frozen=True)
class PairReport:
    space: str
    pairs: tuple[PairAsymmetry, ...]
    skipped: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class WordDiagnostics:
    word: str
    oov: bool
    count: int | None = None
    percentile: float | None = None
    dispersion: float | None = None


@dataclass(frozen=True)
class SeedDiagnostics:
    list_name: str
    per_word: tuple[WordDiagnostics, ...]
    oov_rate: float
    min_frequency: int | None = None
    median_frequency: float | None = None


@dataclass(frozen=True)
class CompareColumn:
    embedding_id: str
    available: bool
    scores: tuple[BiasScore, ...] = ()
    missing: tuple[str, ...] = ()
    note: str | None = None


@dataclass(frozen=True)
class CompareReport:
    words: tuple[str, ...]
    columns: tuple[CompareColumn, ...]


# -- space construction -------------------------------------------------------


def build_space(
    store: EmbeddingStore,
    a: WordList,
    b: WordList,
    method: str = "centroid-diff",
    unit_seed_vectors: bool = True,
) -> BiasSpace:
    """Build the bias direction between two seed lists.

    centroid-diff: direction = normalize(centroid(a) - centroid(b)), each
    centroid the mean of the list's (by default unit-normalized) vectors.
    pca-pairs: first principal component of aligned per-pair differences,
    sign-fixed so the extreme_a side is positive; requires equal-length
    lists, pairs with an OOV member are skipped.
    """
    if method not in METHODS:
        raise ValidationError(f"unknown method {method!r}; choose from {METHODS}")
    a = a.resolve(store)
    b = b.resolve(store)
    for lst in (a, b):
        if not lst.resolved:
            raise EmptyListError(
                f"list {lst.name!r} has no words in embedding {store.id!r}"
            )
    rows_a = {store.lookup(w) for w in a.resolved}
    rows_b = {store.lookup(w) for w in b.resolved}
    shared = rows_a & rows_b
    if shared:
        tokens = sorted(store.vocab[r] for r in shared)
        raise ListOverlapError(
            f"lists {a.name!r} and {b.name!r} share: {', '.join(tokens)}"
        )

    if method == "centroid-diff":
        direction = _centroid(store, a.resolved, unit_seed_vectors) - _centroid(
            store, b.resolved, unit_seed_vectors
        )
    else:
        direction = _pair_component(store, a, b, unit_seed_vectors)
    norm = float(np.linalg.norm(direction))
    if norm == 0.0:
        raise ValidationError(
            f"lists {a.name!r} and {b.name!r} give a zero direction"
        )
    direction = direction / norm
    direction.setflags(write=False)
    return BiasSpace(a, b, direction, method, store, unit_seed_vectors)


def _centroid(store: EmbeddingStore, words: Sequence[str], unit: bool) -> np.ndarray:
    rows = np.array([store.lookup(w) for w in words])
    vecs = store.vectors[rows]
    if unit:
        vecs = vecs / store.norms[rows][:, None]
    return vecs.mean(axis=0)


def _pair_component(
    store: EmbeddingStore, a: WordList, b: WordList, unit: bool
) -> np.ndarray:
    if len(a.words) != len(b.words):
        raise PairLengthError(
            f"pca-pairs needs equal-length lists, got {len(a.words)} and "
            f"{len(b.words)}"
        )
    diffs = []
    for wa, wb in zip(a.words, b.words):
        if wa in a.missing or wb in b.missing:
            continue
        va = store.unit_vector(wa) if unit else store.vector(wa)
        vb = store.unit_vector(wb) if unit else store.vector(wb)
        diffs.append(va - vb)
    if not diffs:
        raise EmptyListError(
            f"no fully resolved pairs between {a.name!r} and {b.name!r}"
        )
    matrix = np.vstack(diffs)
    _, _, vt = np.linalg.svd(matrix, full_matrices=False)
    component = vt[0]
    lean = _centroid(store, a.resolved, unit) - _centroid(store, b.resolved, unit)
    if float(np.dot(component, lean)) < 0:
        component = -component
    return component


# -- scoring ------------------------------------------------------------------


def _score_token(space: BiasSpace, word: str) -> float:
    store = space.store
    row = store.lookup(word)
    assert row is not None
    return float(np.dot(store.vectors[row], space.direction) / store.norms[row])


def _resolve_tokens(
    store: EmbeddingStore, words: "WordList | Sequence[str]"
) -> tuple[list[str], list[str]]:
    """Lenient split for words of interest: dedupe, partition by vocab.

    Unlike seed-list resolution this never fails; an empty input is an
    empty result.
    """
    tokens = words.words if isinstance(words, WordList) else tuple(words)
    seen: set[str] = set()
    resolved: list[str] = []
    missing: list[str] = []
    for w in tokens:
        if w in seen:
            continue
        seen.add(w)
        (resolved if w in store else missing).append(w)
    return resolved, missing


def score_words(space: BiasSpace, words: "WordList | Sequence[str]") -> ScoreReport:
    """One BiasScore per resolved word; OOV words reported, never fatal."""
    resolved, missing = _resolve_tokens(space.store, words)
    scores = tuple(
        BiasScore(w, _score_token(space, w), space.key) for w in resolved
    )
    return ScoreReport(space.key, scores, tuple(missing))


def score_words_2spaces(
    space_x: BiasSpace, space_y: BiasSpace, words: "WordList | Sequence[str]"
) -> TwoSpaceReport:
    """Same words scored in two spaces built on one embedding."""
    if space_x.store.id != space_y.store.id:
        raise EmbeddingMismatchError(
            f"spaces use different embeddings: {space_x.store.id!r} vs "
            f"{space_y.store.id!r}"
        )
    rx = score_words(space_x, words)
    ry = score_words(space_y, words)
    points = tuple(
        TwoSpacePoint(sx.token, sx.score, sy.score)
        for sx, sy in zip(rx.scores, ry.scores)
    )
    return TwoSpaceReport(space_x.key, space_y.key, points, rx.missing)


def pair_asymmetry(
    space: BiasSpace, pairs: Sequence[tuple[str, str]]
) -> PairReport:
    """Score both forms of each pair; asymmetry = score_a + score_b.

    Pairs with an OOV member are skipped and listed, not fatal.
    """
    out: list[PairAsymmetry] = []
    skipped: list[tuple[str, str]] = []
    for wa, wb in pairs:
        if wa not in space.store or wb not in space.store:
            skipped.append((wa, wb))
            continue
        sa = _score_token(space, wa)
        sb = _score_token(space, wb)
        out.append(PairAsymmetry(wa, wb, sa, sb, sa + sb))
    return PairReport(space.key, tuple(out), tuple(skipped))


# -- diagnostics and comparison -----------------------------------------------


def diagnose_list(
    words: WordList, store: EmbeddingStore, corpus: CorpusIndex | None = None
) -> SeedDiagnostics:
    """Frequency and dispersion diagnostics for a seed list.

    Dispersion is the mean cosine of a word's top-10 neighbors, a cheap
    polysemy proxy (tight neighborhoods suggest one dominant sense).
    Frequency fields stay None without a corpus, and OOV words never
    carry frequency or dispersion.
    """
    resolved = words.resolve(store)
    per_word: list[WordDiagnostics] = []
    counts: list[int] = []
    for word in words.words:
        if word in resolved.missing:
            per_word.append(WordDiagnostics(word, oov=True))
            continue
        neighbors = store.nearest(word, min(10, max(1, len(store) - 1)))
        dispersion = (
            float(np.mean([n.similarity for n in neighbors])) if neighbors else None
        )
        count = percentile = None
        if corpus is not None:
            count = corpus.count(word)
            percentile = corpus.percentile(word)
            counts.append(count)
        per_word.append(
            WordDiagnostics(word, False, count, percentile, dispersion)
        )
    return SeedDiagnostics(
        words.name,
        tuple(per_word),
        oov_rate=len(resolved.missing) / len(words.words),
        min_frequency=min(counts) if counts else None,
        median_frequency=float(statistics.median(counts)) if counts else None,
    )


def compare_embeddings(
    space_spec: tuple[WordList, WordList, str],
    words: "WordList | Sequence[str]",
    stores: Sequence[EmbeddingStore],
) -> CompareReport:
    """Score the same words in the same space across several embeddings.

    Lists are resolved independently per embedding.  An embedding where a
    seed list empties out gets an unavailable column instead of failing
    the whole comparison.
    """
    if len(stores) < 2:
        raise ValidationError("comparison needs at least 2 embeddings")
    a, b, method = space_spec
    columns: list[CompareColumn] = []
    for store in stores:
        try:
            space = build_space(store, a, b, method)
        except EmptyListError as exc:
            columns.append(
                CompareColumn(store.id, available=False, note=str(exc))
            )
            continue
        report = score_words(space, words)
        columns.append(
            CompareColumn(store.id, True, report.scores, report.missing)
        )
    tokens = words.words if isinstance(words, WordList) else tuple(words)
    return CompareReport(tokens, tuple(columns))
