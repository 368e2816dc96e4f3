"""Deterministic count-based embedding training: PPMI + truncated SVD.

The pipeline is co-occurrence counting over sentence-bounded symmetric
windows, positive pointwise mutual information with a smoothed context
distribution, then a rank-d SVD.  Everything is reproducible from the
config seed; no stochastic training loop.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np
from scipy import sparse

from .corpus import CorpusIndex
from .embeddings import EmbeddingStore, save_embedding
from .errors import ValidationError

DENSE_SVD_MAX_VOCAB = 2000


@dataclass(frozen=True)
class TrainerConfig:
    """Knobs for the counting and factorization stages.

    window is the number of context tokens counted on each side of the
    target; alpha smooths the context distribution in PPMI; sigma_power
    weights the singular values in the final vectors (0.5 default, 0 and
    1 available for comparison).
    """

    window: int = 5
    min_count: int = 2
    dim: int = 100
    alpha: float = 0.75
    sigma_power: float = 0.5
    svd_iterations: int = 6
    seed: int = 0

    def __post_init__(self):
        if self.window < 1:
            raise ValidationError("window must be >= 1")
        if self.dim < 1:
            raise ValidationError("dim must be >= 1")
        if not 0 < self.alpha <= 1:
            raise ValidationError("alpha must be in (0, 1]")
        if self.sigma_power not in (0.0, 0.5, 1.0):
            raise ValidationError("sigma_power must be 0, 0.5 or 1")
        if self.svd_iterations < 4:
            raise ValidationError("svd_iterations must be >= 4")


@dataclass(frozen=True, eq=False)
class CooccurrenceMatrix:
    """Symmetric within-window pair counts over the kept vocabulary."""

    vocab: tuple[str, ...]
    matrix: sparse.csr_matrix


def count_cooccurrences(corpus: CorpusIndex, cfg: TrainerConfig) -> CooccurrenceMatrix:
    """Count ordered within-window pairs, both directions, per sentence.

    Tokens below min_count are removed from each sentence before
    windowing, so surviving tokens become adjacent.  Windows never cross
    sentence boundaries.
    """
    kept = [t for t, c in corpus.counts.items() if c >= cfg.min_count]
    if not kept:
        raise ValidationError(
            f"no tokens reach min_count={cfg.min_count}; corpus too small"
        )
    kept.sort(key=lambda t: (-corpus.counts[t], t))
    vocab = tuple(kept)
    token_id = {t: i for i, t in enumerate(vocab)}

    pair_counts: dict[tuple[int, int], int] = {}
    for tokens in corpus.sentences_tokens():
        ids = [token_id[t] for t in tokens if t in token_id]
        for pos, wi in enumerate(ids):
            for off in range(1, cfg.window + 1):
                if pos + off >= len(ids):
                    break
                wj = ids[pos + off]
                pair_counts[(wi, wj)] = pair_counts.get((wi, wj), 0) + 1
                pair_counts[(wj, wi)] = pair_counts.get((wj, wi), 0) + 1

    n = len(vocab)
    if pair_counts:
        rows, cols = zip(*pair_counts)
        data = list(pair_counts.values())
    else:
        rows = cols = data = []
    matrix = sparse.csr_matrix(
        (data, (rows, cols)), shape=(n, n), dtype=np.float64
    )
    return CooccurrenceMatrix(vocab, matrix)


def ppmi(counts, alpha: float = 0.75) -> sparse.csr_matrix:
    """Positive PMI with an alpha-smoothed context distribution.

    PPMI[w,c] = max(0, log(p(w,c) / (p(w) * p_a(c)))) where
    p_a(c) = count(c)^alpha / sum_c' count(c')^alpha.  Accepts any
    nonnegative count matrix (sparse or dense).
    """
    if isinstance(counts, CooccurrenceMatrix):
        counts = counts.matrix
    coo = sparse.coo_matrix(counts, dtype=np.float64)
    coo.eliminate_zeros()
    total = coo.sum()
    if total == 0:
        return sparse.csr_matrix(coo.shape, dtype=np.float64)
    csr = coo.tocsr()
    row_sums = np.asarray(csr.sum(axis=1)).ravel()
    col_sums = np.asarray(csr.sum(axis=0)).ravel()
    smoothed = col_sums**alpha
    ctx_p = smoothed / smoothed.sum()

    # log(p(w,c)) - log(p(w)) - log(p_a(c)), only over stored entries
    vals = (
        np.log(coo.data / total)
        - np.log(row_sums[coo.row] / total)
        - np.log(ctx_p[coo.col])
    )
    keep = vals > 0
    return sparse.csr_matrix(
        (vals[keep], (coo.row[keep], coo.col[keep])),
        shape=coo.shape,
        dtype=np.float64,
    )


def _randomized_svd(matrix, k: int, iterations: int, seed: int):
    """Truncated SVD via a seeded range finder with power iterations."""
    n_rows, n_cols = matrix.shape
    rng = np.random.default_rng(seed)
    sketch = min(k + 10, n_cols)
    omega = rng.standard_normal((n_cols, sketch))
    Q, _ = np.linalg.qr(matrix @ omega)
    for _ in range(iterations):
        Z, _ = np.linalg.qr(matrix.T @ Q)
        Q, _ = np.linalg.qr(matrix @ Z)
    B = Q.T @ matrix
    if sparse.issparse(B):
        B = B.toarray()
    Ub, svals, Vt = np.linalg.svd(np.asarray(B), full_matrices=False)
    return (Q @ Ub)[:, :k], svals[:k], Vt[:k]


def _canonical_signs(U: np.ndarray, Vt: np.ndarray):
    """Flip each component so its largest-|.|  U loading is positive."""
    for j in range(U.shape[1]):
        lead = int(np.argmax(np.abs(U[:, j])))
        if U[lead, j] < 0:
            U[:, j] = -U[:, j]
            Vt[j] = -Vt[j]
    return U, Vt


def truncated_svd(matrix, k: int, iterations: int = 6, seed: int = 0):
    """Rank-k SVD, exact and dense below the size cutoff, randomized above.

    Components come back sign-canonicalized so repeated runs agree
    bitwise.
    """
    n = min(matrix.shape)
    k = min(k, n)
    if max(matrix.shape) <= DENSE_SVD_MAX_VOCAB:
        dense = matrix.toarray() if sparse.issparse(matrix) else np.asarray(matrix)
        U, svals, Vt = np.linalg.svd(dense, full_matrices=False)
        U, svals, Vt = U[:, :k], svals[:k], Vt[:k]
    else:
        U, svals, Vt = _randomized_svd(matrix, k, iterations, seed)
    U, Vt = _canonical_signs(U, Vt)
    return U, svals, Vt


@dataclass(frozen=True, eq=False)
class TrainedEmbedding:
    store: EmbeddingStore
    config: TrainerConfig
    corpus_hash: str
    dropped_tokens: tuple[str, ...]


def train(
    corpus: CorpusIndex, cfg: TrainerConfig = TrainerConfig(), store_id: str = "trained"
) -> TrainedEmbedding:
    """Train an embedding: counts -> PPMI -> SVD -> U_d * Sigma_d^p.

    dim larger than the matrix rank is reduced with a warning; rows that
    end up with zero norm (tokens with an all-zero PPMI row) are dropped
    with a warning.
    """
    cooc = count_cooccurrences(corpus, cfg)
    M = ppmi(cooc.matrix, cfg.alpha)
    k = min(cfg.dim, len(cooc.vocab))
    if k < cfg.dim:
        warnings.warn(
            f"dim {cfg.dim} exceeds vocab size {len(cooc.vocab)}; using {k}",
            stacklevel=2,
        )
    U, svals, _ = truncated_svd(M, k, cfg.svd_iterations, cfg.seed)

    # drop numerically dead components (rank deficit)
    if svals.size:
        alive = svals > svals[0] * 1e-12
    else:
        alive = np.zeros(0, dtype=bool)
    if int(alive.sum()) < k:
        warnings.warn(
            f"PPMI matrix rank {int(alive.sum())} below requested dim {k}; reduced",
            stacklevel=2,
        )
        U, svals = U[:, alive], svals[alive]
    if svals.size == 0:
        raise ValidationError("PPMI matrix is empty; nothing to factorize")

    W = U * (svals**cfg.sigma_power)
    norms = np.linalg.norm(W, axis=1)
    dead = norms <= norms.max() * 1e-12
    dropped = tuple(t for t, d in zip(cooc.vocab, dead) if d)
    if dropped:
        warnings.warn(
            f"dropped {len(dropped)} zero-norm row(s) from trained embedding",
            stacklevel=2,
        )
    vocab = [t for t, d in zip(cooc.vocab, dead) if not d]
    store = EmbeddingStore(store_id, vocab, W[~dead])
    return TrainedEmbedding(store, cfg, corpus.content_hash, dropped)


def save_trained(trained: TrainedEmbedding, out_path: str | Path) -> Path:
    """Write vectors in the text format plus a manifest JSON beside it.

    The manifest records config and corpus hash only; no timestamps, so
    reruns are byte-identical.
    """
    out_path = Path(out_path)
    save_embedding(trained.store, out_path)
    manifest = {
        "config": asdict(trained.config),
        "corpus_hash": trained.corpus_hash,
        "vocab_size": len(trained.store),
        "dim": trained.store.dim,
        "dropped_tokens": list(trained.dropped_tokens),
    }
    manifest_path = out_path.with_suffix(out_path.suffix + ".manifest.json")
    manifest_path.write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return manifest_path
