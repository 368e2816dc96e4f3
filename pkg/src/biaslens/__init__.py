"""Bias exploration workbench for word embeddings and sentence scorers.

Four working surfaces, mirroring the exploration workflow:

- corpus: ingest tagged documents, word frequencies, concordance samples
- embeddings: load/train word vectors, neighbors, 2-D projection
- bias: bias spaces from seed word lists, scores, pair asymmetries,
  seed diagnostics, cross-embedding comparison
- lm: fill-the-blank ranking and sentence-pair preference

The same logic is reachable as a library, over HTTP (:mod:`.service`),
and from the command line (:mod:`.cli`).
"""

__version__ = "0.1.0"

from .bias import (
    BiasScore,
    BiasSpace,
    PairAsymmetry,
    SeedDiagnostics,
    WordList,
    build_space,
    compare_embeddings,
    diagnose_list,
    pair_asymmetry,
    score_words,
    score_words_2spaces,
)
from .corpus import ConcordanceLine, CorpusIndex, FrequencyReport, ingest, ingest_text
from .embeddings import (
    EmbeddingStore,
    Neighbor,
    Projection2D,
    load_embedding,
    save_embedding,
)
from .errors import BiaslensError
from .lm import (
    BlankQuery,
    NgramLM,
    PairQuery,
    SentenceScorer,
    compare_pair,
    rank_blank,
    train_lm,
)
from .tokenization import TokenizerConfig, tokenize
from .trainer import TrainerConfig, count_cooccurrences, ppmi, train

__all__ = [
    "__version__",
    "BiaslensError",
    "BiasScore",
    "BiasSpace",
    "BlankQuery",
    "ConcordanceLine",
    "CorpusIndex",
    "EmbeddingStore",
    "FrequencyReport",
    "Neighbor",
    "NgramLM",
    "PairAsymmetry",
    "PairQuery",
    "Projection2D",
    "SeedDiagnostics",
    "SentenceScorer",
    "TokenizerConfig",
    "TrainerConfig",
    "WordList",
    "build_space",
    "compare_embeddings",
    "compare_pair",
    "count_cooccurrences",
    "diagnose_list",
    "ingest",
    "ingest_text",
    "load_embedding",
    "pair_asymmetry",
    "ppmi",
    "rank_blank",
    "save_embedding",
    "score_words",
    "score_words_2spaces",
    "tokenize",
    "train",
    "train_lm",
]
