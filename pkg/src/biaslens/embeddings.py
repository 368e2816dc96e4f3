"""Word-embedding store: loading, similarity, exact neighbors, 2-D projection.

The store is immutable after load and safe to share between threads.  All
similarity math is exact full-scan numpy; no approximate indexes.
"""

from __future__ import annotations

import hashlib
import io
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import LoadError, OovError, ValidationError
from .tokenization import TokenizerConfig

_NORMALIZER = TokenizerConfig()


@dataclass(frozen=True)
class Neighbor:
    """A neighbor token with its cosine similarity to the query."""

    token: str
    similarity: float


@dataclass(frozen=True)
class Projection2D:
    """Tokens placed in the plane by PCA over their vectors."""

    points: tuple[tuple[str, float, float], ...]
    explained_variance: tuple[float, float]
    missing: tuple[str, ...] = ()


class EmbeddingStore:
    """Immutable vocabulary + dense vector table with precomputed norms.

    Args:
        store_id: opaque identifier used in reports and API payloads.
        vocab: tokens, one per vector row, already unique.
        vectors: float matrix, one row per token.
        normalize_tokens: when True (default), lookups NFC-normalize and
            lowercase the query token, matching how the vocab was stored.
    """

    def __init__(
        self,
        store_id: str,
        vocab: Sequence[str],
        vectors: np.ndarray,
        normalize_tokens: bool = True,
    ):
        vectors = np.asarray(vectors, dtype=np.float64)
        if vectors.ndim != 2 or vectors.shape[0] != len(vocab):
            raise ValidationError("vectors must be one row per vocab token")
        if vectors.shape[1] < 1:
            raise ValidationError("embedding dimension must be positive")
        if not np.all(np.isfinite(vectors)):
            raise ValidationError("vectors must be finite")
        norms = np.linalg.norm(vectors, axis=1)
        if np.any(norms == 0.0):
            bad = [vocab[i] for i in np.nonzero(norms == 0.0)[0][:5]]
            raise ValidationError(f"zero vector for token(s): {', '.join(bad)}")
        index: dict[str, int] = {}
        for i, token in enumerate(vocab):
            if token in index:
                raise ValidationError(f"duplicate token in vocab: {token!r}")
            index[token] = i

        self.id = store_id
        self.dim = int(vectors.shape[1])
        self.vocab: tuple[str, ...] = tuple(vocab)
        self.vectors = vectors
        self.norms = norms
        self.normalize_tokens = normalize_tokens
        self.dropped_duplicates = 0
        self._index = index
        self._vocab_array = np.array(self.vocab)
        vectors.setflags(write=False)
        norms.setflags(write=False)

    def __len__(self) -> int:
        return len(self.vocab)

    def __contains__(self, token: str) -> bool:
        return self._key(token) in self._index

    def _key(self, token: str) -> str:
        return _NORMALIZER.normalize(token) if self.normalize_tokens else token

    def lookup(self, token: str) -> int | None:
        """Row index for ``token``, or None when absent."""
        return self._index.get(self._key(token))

    def _require(self, token: str) -> int:
        row = self.lookup(token)
        if row is None:
            raise OovError([token])
        return row

    def vector(self, token: str) -> np.ndarray:
        return self.vectors[self._require(token)]

    def unit_vector(self, token: str) -> np.ndarray:
        row = self._require(token)
        return self.vectors[row] / self.norms[row]

    def resolve(self, tokens: Iterable[str]) -> tuple[list[str], list[str]]:
        """Split ``tokens`` into (present, absent) keeping input order."""
        present, absent = [], []
        for token in tokens:
            (present if token in self else absent).append(token)
        return present, absent

    # -- similarity ---------------------------------------------------------

    def cosine(self, u: str, v: str) -> float:
        """Cosine similarity between two stored tokens."""
        i, j = self._require(u), self._require(v)
        return float(
            np.dot(self.vectors[i], self.vectors[j]) / (self.norms[i] * self.norms[j])
        )

    def similarities(self, token: str) -> np.ndarray:
        """Cosine of ``token`` against every row, in vocab order."""
        row = self._require(token)
        q = self.vectors[row]
        return (self.vectors @ q) / (self.norms * self.norms[row])

    def nearest(
        self, token: str, k: int, exclude: Iterable[str] = ()
    ) -> list[Neighbor]:
        """Exact top-k neighbors by cosine, ties broken by token order.

        The query token and any ``exclude`` tokens never appear in the
        result; fewer than k neighbors are returned when the vocabulary
        is exhausted.
        """
        if k < 1:
            raise ValidationError("k must be >= 1")
        row = self._require(token)
        sims = self.similarities(token)
        skip = {row}
        for t in exclude:
            r = self.lookup(t)
            if r is not None:
                skip.add(r)
        # lexsort: primary key descending similarity, secondary ascending token
        order = np.lexsort((self._vocab_array, -sims))
        out: list[Neighbor] = []
        for i in order:
            if int(i) in skip:
                continue
            out.append(Neighbor(self.vocab[i], float(sims[i])))
            if len(out) == k:
                break
        return out

    # -- projection ---------------------------------------------------------

    def project_2d(
        self,
        tokens: Sequence[str],
        include_neighbors: int | None = None,
        skip_oov: bool = False,
    ) -> Projection2D:
        """PCA of the selected rows onto the top-2 principal components.

        Sign convention: each component's largest-magnitude loading is
        positive, so identical input yields bitwise-identical output.
        OOV tokens raise unless ``skip_oov`` is set, in which case they are
        returned in ``missing``.
        """
        seen: dict[str, int] = {}
        missing: list[str] = []
        for token in tokens:
            row = self.lookup(token)
            if row is None:
                if token not in missing:
                    missing.append(token)
            elif token not in seen:
                seen[self.vocab[row]] = row
        if missing and not skip_oov:
            raise OovError(missing)
        if include_neighbors:
            for token in list(seen):
                for nb in self.nearest(token, include_neighbors):
                    seen.setdefault(nb.token, self._index[nb.token])
        if len(seen) < 2:
            raise ValidationError(
                "projection needs at least 2 distinct in-vocabulary tokens"
            )

        names = list(seen)
        X = self.vectors[list(seen.values())]
        centered = X - X.mean(axis=0)
        _, svals, vt = np.linalg.svd(centered, full_matrices=False)
        # pad so dim-1 stores still yield a (flat) second axis
        if svals.shape[0] < 2:
            svals = np.concatenate([svals, [0.0]])
            vt = np.vstack([vt, np.zeros((1, vt.shape[1]))])
        components = vt[:2].copy()
        for j in range(2):
            lead = int(np.argmax(np.abs(components[j])))
            if components[j, lead] < 0:
                components[j] = -components[j]
        coords = centered @ components.T
        ev = (svals[:2] ** 2) / (len(names) - 1)
        points = tuple(
            (name, float(coords[i, 0]), float(coords[i, 1]))
            for i, name in enumerate(names)
        )
        return Projection2D(points, (float(ev[0]), float(ev[1])), tuple(missing))


# -- text word-vector format ------------------------------------------------


def load_embedding(
    source: str | Path | io.TextIOBase,
    limit: int | None = None,
    normalize_tokens: bool = True,
    store_id: str | None = None,
) -> EmbeddingStore:
    """Load a store from the text word-vector format.

    First line ``<vocab_size> <dim>`` (header optional); each following line
    ``<token> <f1> ... <fdim>``.  Duplicate tokens beyond the first are
    dropped with a warning; ``limit`` keeps only the first rows.
    """
    if isinstance(source, (str, Path)):
        path = Path(source)
        text = path.read_text(encoding="utf-8")
        default_id = path.stem
    else:
        text = source.read()
        default_id = "emb-" + hashlib.sha256(text.encode("utf-8")).hexdigest()[:12]

    lines = text.splitlines()
    normalizer = _NORMALIZER if normalize_tokens else None

    start, dim = _parse_header(lines)
    vocab: list[str] = []
    rows: list[np.ndarray] = []
    index: dict[str, int] = {}
    dropped = 0
    for lineno in range(start, len(lines)):
        if limit is not None and len(vocab) >= limit:
            break
        line = lines[lineno]
        if not line.strip():
            continue
        parts = line.split()
        token, values = parts[0], parts[1:]
        if dim is None:
            dim = len(values)
            if dim == 0:
                raise LoadError("row has no vector values", line=lineno + 1)
        if len(values) != dim:
            raise LoadError(
                f"expected {dim} values, found {len(values)}", line=lineno + 1
            )
        try:
            vec = np.array([float(v) for v in values], dtype=np.float64)
        except ValueError:
            raise LoadError("non-numeric vector value", line=lineno + 1) from None
        if not np.all(np.isfinite(vec)):
            raise LoadError("non-finite vector value", line=lineno + 1)
        if not np.any(vec):
            raise LoadError(f"zero vector for token {token!r}", line=lineno + 1)
        if normalizer is not None:
            token = normalizer.normalize(token)
        if token in index:
            dropped += 1
            continue
        index[token] = len(vocab)
        vocab.append(token)
        rows.append(vec)

    if not vocab:
        raise LoadError("no vectors in file", line=1)
    if dropped:
        warnings.warn(f"dropped {dropped} duplicate token(s)", stacklevel=2)
    store = EmbeddingStore(
        store_id or default_id,
        vocab,
        np.vstack(rows),
        normalize_tokens=normalize_tokens,
    )
    store.dropped_duplicates = dropped
    return store


def _parse_header(lines: list[str]) -> tuple[int, int | None]:
    """Return (first data line, declared dim or None)."""
    if not lines:
        raise LoadError("empty file", line=1)
    parts = lines[0].split()
    if len(parts) == 2:
        try:
            vocab_size, dim = int(parts[0]), int(parts[1])
        except ValueError:
            return 0, None
        if vocab_size < 0 or dim < 1:
            raise LoadError("malformed header", line=1)
        return 1, dim
    return 0, None


def save_embedding(store: EmbeddingStore, path: str | Path) -> None:
    """Write the store in the text word-vector format (with header)."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        fh.write(f"{len(store.vocab)} {store.dim}\n")
        for token, row in zip(store.vocab, store.vectors):
            fh.write(token + " " + " ".join(repr(float(x)) for x in row) + "\n")
