import json

import numpy as np
import pytest
from scipy import sparse

from biaslens.bias import WordList, build_space, score_words
from biaslens.embeddings import load_embedding
from biaslens.errors import ValidationError
from biaslens.trainer import (
    TrainerConfig,
    count_cooccurrences,
    ppmi,
    save_trained,
    train,
    truncated_svd,
)

from .conftest import corpus_from_sentences
from .oracles import hand_cooccurrence, hand_ppmi


def pairs_of(cooc) -> dict[tuple[str, str], int]:
    coo = sparse.coo_matrix(cooc.matrix)
    return {
        (cooc.vocab[i], cooc.vocab[j]): int(v)
        for i, j, v in zip(coo.row, coo.col, coo.data)
    }


# -- co-occurrence counting ---------------------------------------------------


def test_three_token_window_one():
    corpus = corpus_from_sentences(["a b c"])
    cooc = count_cooccurrences(corpus, TrainerConfig(window=1, min_count=1, dim=2))
    assert pairs_of(cooc) == {
        ("a", "b"): 1,
        ("b", "a"): 1,
        ("b", "c"): 1,
        ("c", "b"): 1,
    }


def test_window_saturation():
    corpus = corpus_from_sentences(["a b c d"])
    cooc = count_cooccurrences(corpus, TrainerConfig(window=10, min_count=1, dim=2))
    got = pairs_of(cooc)
    for x in "abcd":
        for y in "abcd":
            if x != y:
                assert got[(x, y)] == 1


def test_min_count_excludes_rare():
    corpus = corpus_from_sentences(["a b a", "a b rare"])
    cooc = count_cooccurrences(corpus, TrainerConfig(window=2, min_count=2, dim=2))
    assert "rare" not in cooc.vocab
    assert set(cooc.vocab) == {"a", "b"}


def test_dropped_tokens_close_the_gap():
    # x appears once; with min_count=2 it is removed BEFORE windowing,
    # so a and b become adjacent and pair at window=1
    corpus = corpus_from_sentences(["a x b", "a b q q"])
    cooc = count_cooccurrences(corpus, TrainerConfig(window=1, min_count=2, dim=2))
    got = pairs_of(cooc)
    assert got[("a", "b")] == 2


def test_sentence_boundary_blocks_pairs():
    corpus = corpus_from_sentences(["a a. b b"])
    cooc = count_cooccurrences(corpus, TrainerConfig(window=5, min_count=1, dim=2))
    got = pairs_of(cooc)
    assert ("a", "b") not in got
    assert ("b", "a") not in got


def test_matrix_symmetric():
    corpus = corpus_from_sentences(["a b c a d", "d c b a", "b d a c c"])
    cooc = count_cooccurrences(corpus, TrainerConfig(window=2, min_count=1, dim=2))
    diff = (cooc.matrix - cooc.matrix.T).toarray()
    assert np.all(diff == 0)


def test_counts_match_hand_oracle():
    rng = np.random.default_rng(42)
    words = list("abcdefg")
    sentences = [
        " ".join(rng.choice(words, size=int(rng.integers(2, 9))))
        for _ in range(40)
    ]
    corpus = corpus_from_sentences(sentences)
    cfg = TrainerConfig(window=3, min_count=2, dim=2)
    cooc = count_cooccurrences(corpus, cfg)
    oracle = hand_cooccurrence(
        [s.split() for s in sentences], window=cfg.window, min_count=cfg.min_count
    )
    assert pairs_of(cooc) == oracle


def test_row_sums_are_context_totals():
    corpus = corpus_from_sentences(["a b c a", "c b a b"])
    cooc = count_cooccurrences(corpus, TrainerConfig(window=2, min_count=1, dim=2))
    oracle = hand_cooccurrence(
        [["a", "b", "c", "a"], ["c", "b", "a", "b"]], window=2, min_count=1
    )
    row_sums = np.asarray(cooc.matrix.sum(axis=1)).ravel()
    for i, t in enumerate(cooc.vocab):
        assert row_sums[i] == sum(v for (w, _), v in oracle.items() if w == t)


def test_vocab_sorted_by_count_then_token():
    corpus = corpus_from_sentences(["b b b c c a a", "z z"])
    cooc = count_cooccurrences(corpus, TrainerConfig(window=1, min_count=1, dim=2))
    assert cooc.vocab == ("b", "a", "c", "z")


def test_empty_vocab_after_min_count():
    corpus = corpus_from_sentences(["a b c"])
    with pytest.raises(ValidationError):
        count_cooccurrences(corpus, TrainerConfig(window=1, min_count=5, dim=2))


# -- PPMI ----------------------------------------------------------------------


def test_ppmi_diagonal_toy_log2():
    counts = np.array([[4.0, 0.0], [0.0, 4.0]])
    M = ppmi(counts, alpha=1.0).toarray()
    assert M[0, 0] == pytest.approx(np.log(2.0), abs=1e-12)
    assert M[1, 1] == pytest.approx(np.log(2.0), abs=1e-12)
    assert M[0, 1] == 0.0


def test_ppmi_independent_uniform_all_zero():
    counts = np.full((3, 3), 7.0)
    assert ppmi(counts, alpha=1.0).nnz == 0


def test_ppmi_never_negative():
    rng = np.random.default_rng(5)
    counts = rng.integers(0, 9, size=(12, 12)).astype(float)
    M = ppmi(counts, alpha=0.75)
    assert (M.data >= 0).all()


def test_ppmi_matches_hand_oracle():
    rng = np.random.default_rng(11)
    words = list("abcde")
    raw = {}
    for w in words:
        for c in words:
            v = int(rng.integers(0, 6))
            if v:
                raw[(w, c)] = v
    dense = np.zeros((5, 5))
    for (w, c), v in raw.items():
        dense[words.index(w), words.index(c)] = v
    for alpha in (1.0, 0.75):
        M = ppmi(dense, alpha=alpha).toarray()
        oracle = hand_ppmi(raw, alpha=alpha)
        for i, w in enumerate(words):
            for j, c in enumerate(words):
                assert M[i, j] == pytest.approx(
                    oracle.get((w, c), 0.0), abs=1e-12
                )


def test_ppmi_monotone_under_fixed_marginals():
    """Moving mass into C[0,0] via a rectangle move (marginals fixed)
    never decreases PPMI[0,0]."""
    base = np.array([[2.0, 6.0], [6.0, 2.0]])
    prev = ppmi(base, alpha=1.0).toarray()[0, 0]
    for d in (1.0, 2.0, 3.0, 4.0):
        moved = base + np.array([[d, -d], [-d, d]])
        cur = ppmi(moved, alpha=1.0).toarray()[0, 0]
        assert cur >= prev - 1e-12
        prev = cur


def test_ppmi_accepts_cooccurrence_wrapper():
    corpus = corpus_from_sentences(["a b a b", "b a b a"])
    cooc = count_cooccurrences(corpus, TrainerConfig(window=1, min_count=1, dim=2))
    direct = ppmi(cooc.matrix, alpha=1.0)
    wrapped = ppmi(cooc, alpha=1.0)
    assert (direct != wrapped).nnz == 0


# -- truncated SVD ---------------------------------------------------------------


def test_svd_reconstruction_improves_with_rank():
    rng = np.random.default_rng(8)
    A = rng.standard_normal((30, 30))
    errs = []
    for k in (2, 5, 10, 20):
        U, s, Vt = truncated_svd(A, k)
        errs.append(np.linalg.norm(A - (U * s) @ Vt))
    assert all(a >= b - 1e-12 for a, b in zip(errs, errs[1:]))


def test_svd_matches_optimal_tail():
    # Eckart-Young: rank-k error (Frobenius) equals the sigma tail
    rng = np.random.default_rng(9)
    A = rng.standard_normal((25, 18))
    full_s = np.linalg.svd(A, compute_uv=False)
    for k in (3, 7):
        U, s, Vt = truncated_svd(A, k)
        err = np.linalg.norm(A - (U * s) @ Vt)
        assert err == pytest.approx(np.linalg.norm(full_s[k:]), abs=1e-9)


def test_randomized_path_recovers_low_rank():
    from biaslens.trainer import _randomized_svd

    rng = np.random.default_rng(21)
    L = rng.standard_normal((80, 5))
    R = rng.standard_normal((5, 60))
    A = L @ R  # exact rank 5
    dense_s = np.linalg.svd(A, compute_uv=False)[:5]
    _, s, _ = _randomized_svd(A, 5, iterations=4, seed=0)
    np.testing.assert_allclose(s, dense_s, atol=1e-8)


def test_svd_sign_canonical_and_deterministic():
    rng = np.random.default_rng(13)
    A = rng.standard_normal((40, 40))
    U1, s1, V1 = truncated_svd(A, 6, seed=3)
    U2, s2, V2 = truncated_svd(A, 6, seed=3)
    assert np.array_equal(U1, U2) and np.array_equal(V1, V2)
    for j in range(U1.shape[1]):
        lead = int(np.argmax(np.abs(U1[:, j])))
        assert U1[lead, j] > 0


# -- train ------------------------------------------------------------------------


def shared_context_corpus():
    sentences = []
    for i in range(30):
        sentences.append(f"x ctx{i % 5} ctx{(i + 1) % 5}")
        sentences.append(f"y ctx{i % 5} ctx{(i + 1) % 5}")
    return corpus_from_sentences(sentences)


def test_identical_context_rows_cosine_one():
    corpus = shared_context_corpus()
    trained = train(corpus, TrainerConfig(window=2, min_count=2, dim=4))
    assert trained.store.cosine("x", "y") == pytest.approx(1.0, abs=1e-6)


def test_training_deterministic():
    corpus = shared_context_corpus()
    cfg = TrainerConfig(window=2, min_count=2, dim=4, seed=7)
    a = train(corpus, cfg)
    b = train(corpus, cfg)
    assert a.store.vocab == b.store.vocab
    np.testing.assert_allclose(a.store.vectors, b.store.vectors, atol=1e-9)


def test_dim_reduced_with_warning():
    corpus = corpus_from_sentences(["a b a b a b", "b a b a"])
    with pytest.warns(UserWarning, match="dim"):
        trained = train(corpus, TrainerConfig(window=1, min_count=1, dim=50))
    assert trained.store.dim <= 2


def test_sigma_power_variants():
    corpus = shared_context_corpus()
    stores = {}
    for p in (0.0, 0.5, 1.0):
        cfg = TrainerConfig(window=2, min_count=2, dim=3, sigma_power=p)
        stores[p] = train(corpus, cfg).store
    assert not np.allclose(stores[0.0].vectors, stores[1.0].vectors)
    # cosine structure survives the weighting only approximately; the
    # shared-context pair stays maximal under every variant
    for store in stores.values():
        assert store.cosine("x", "y") == pytest.approx(1.0, abs=1e-6)


def test_skewed_contexts_pull_probe_word():
    rng = np.random.default_rng(77)
    fills = [f"f{i}" for i in range(10)]
    sentences = []
    for _ in range(150):
        sentences.append(f"probe she her {rng.choice(fills)}")
        sentences.append(f"he him {rng.choice(fills)} {rng.choice(fills)}")
    corpus = corpus_from_sentences(sentences)
    trained = train(corpus, TrainerConfig(window=3, min_count=2, dim=6))
    space = build_space(
        trained.store, WordList("f", ("she", "her")), WordList("m", ("he", "him"))
    )
    score = score_words(space, ["probe"]).scores[0].score
    assert score > 0.1


def test_config_validation():
    with pytest.raises(ValidationError):
        TrainerConfig(window=0)
    with pytest.raises(ValidationError):
        TrainerConfig(sigma_power=0.3)
    with pytest.raises(ValidationError):
        TrainerConfig(svd_iterations=2)
    with pytest.raises(ValidationError):
        TrainerConfig(alpha=0.0)


# -- save/load round trip ------------------------------------------------------------


def test_save_trained_round_trip(tmp_path):
    corpus = shared_context_corpus()
    cfg = TrainerConfig(window=2, min_count=2, dim=4, seed=5)
    trained = train(corpus, cfg, store_id="unit")
    out = tmp_path / "unit.vec"
    save_trained(trained, out)

    loaded = load_embedding(out, store_id="unit")
    assert loaded.vocab == trained.store.vocab
    np.testing.assert_allclose(loaded.vectors, trained.store.vectors, atol=0)

    manifest = json.loads((tmp_path / "unit.vec.manifest.json").read_text())
    assert manifest["config"]["window"] == 2
    assert manifest["config"]["seed"] == 5
    assert manifest["corpus_hash"] == corpus.content_hash
    assert "time" not in json.dumps(manifest).lower()


def test_manifest_stable_across_runs(tmp_path):
    corpus = shared_context_corpus()
    cfg = TrainerConfig(window=2, min_count=2, dim=4)
    blobs = []
    for name in ("one.vec", "two.vec"):
        save_trained(train(corpus, cfg), tmp_path / name)
        blobs.append((tmp_path / f"{name}.manifest.json").read_bytes())
    assert blobs[0] == blobs[1]
