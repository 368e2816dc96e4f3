"""Sentence probability probes: fill-the-blank ranking and pair preference.

The scorer interface is pluggable; the default implementation is a
count-based add-k n-gram model, deterministic and trainable at desk
scale.  Probabilities are raw model probabilities; display layers may
renormalize over the items they show.
"""

from __future__ import annotations

import json
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .corpus import CorpusIndex
from .errors import (
    IngestError,
    NothingToRankError,
    TemplateError,
    ValidationError,
)
from .tokenization import DEFAULT_TOKENIZER, TokenizerConfig, tokenize

UNK = "<unk>"
BOS = "<s>"
EOS = "</s>"


class SentenceScorer(ABC):
    """Anything that can assign log-probabilities to token sequences."""

    tokenizer: TokenizerConfig

    @property
    @abstractmethod
    def vocab(self) -> tuple[str, ...]:
        """Scorable words, no markers, deterministic order."""

    @abstractmethod
    def score(self, tokens: Sequence[str]) -> float:
        """Log-probability of the full sentence (including its end)."""

    def fill(
        self,
        prefix: Sequence[str],
        suffix: Sequence[str],
        candidates: Sequence[str],
    ) -> list[float]:
        """Log-probability of the sentence with each candidate at the gap."""
        return [self.score([*prefix, c, *suffix]) for c in candidates]


class NgramLM(SentenceScorer):
    """Order-n count model with add-k smoothing over vocab + unk + end.

    For every context, seen or not, the conditional distribution over
    outcomes (vocabulary plus the unk and end markers) sums to 1; unseen
    contexts fall back to the uniform 1/|outcomes|.
    """

    def __init__(
        self,
        order: int,
        k: float,
        vocab: Sequence[str],
        ngram_counts: dict[tuple[tuple[str, ...], str], int],
        context_totals: dict[tuple[str, ...], int],
        tokenizer: TokenizerConfig = DEFAULT_TOKENIZER,
    ):
        if order < 1:
            raise ValidationError("order must be >= 1")
        if k <= 0:
            raise ValidationError("smoothing k must be > 0")
        self.order = order
        self.k = k
        self._vocab = tuple(vocab)
        self._vocab_set = set(self._vocab)
        self._ngrams = ngram_counts
        self._totals = context_totals
        self.tokenizer = tokenizer
        # outcomes: every vocab word, unk, and the sentence-end marker
        self.n_outcomes = len(self._vocab) + 2

    @property
    def vocab(self) -> tuple[str, ...]:
        return self._vocab

    def _map(self, token: str) -> str:
        token = self.tokenizer.normalize(token)
        return token if token in self._vocab_set else UNK

    def logprob(self, context: tuple[str, ...], nxt: str) -> float:
        """log p(nxt | context); both already mapped to model symbols."""
        count = self._ngrams.get((context, nxt), 0)
        total = self._totals.get(context, 0)
        return math.log((count + self.k) / (total + self.k * self.n_outcomes))

    def score(self, tokens: Sequence[str]) -> float:
        mapped = [self._map(t) for t in tokens]
        padded = [BOS] * (self.order - 1) + mapped + [EOS]
        logp = 0.0
        for i in range(self.order - 1, len(padded)):
            context = tuple(padded[i - self.order + 1 : i])
            logp += self.logprob(context, padded[i])
        return logp

    def outcome_logprobs(self, context: Sequence[str]) -> dict[str, float]:
        """Full conditional distribution at one context, for inspection."""
        ctx = tuple(self._map(t) if t != BOS else BOS for t in context)
        ctx = ctx[-(self.order - 1) :] if self.order > 1 else ()
        return {
            w: self.logprob(ctx, w) for w in (*self._vocab, UNK, EOS)
        }


def train_lm(
    corpus: CorpusIndex,
    order: int = 3,
    k: float = 0.1,
    min_count: int = 1,
) -> NgramLM:
    """Count padded-sentence n-grams; rare tokens collapse into unk."""
    vocab = sorted(t for t, c in corpus.counts.items() if c >= min_count)
    vocab_set = set(vocab)
    ngrams: dict[tuple[tuple[str, ...], str], int] = {}
    totals: dict[tuple[str, ...], int] = {}
    n_sentences = 0
    for tokens in corpus.sentences_tokens():
        if not tokens:
            continue
        n_sentences += 1
        mapped = [t if t in vocab_set else UNK for t in tokens]
        padded = [BOS] * (order - 1) + mapped + [EOS]
        for i in range(order - 1, len(padded)):
            context = tuple(padded[i - order + 1 : i])
            key = (context, padded[i])
            ngrams[key] = ngrams.get(key, 0) + 1
            totals[context] = totals.get(context, 0) + 1
    if n_sentences == 0:
        raise ValidationError("corpus has no sentences with tokens")
    return NgramLM(order, k, vocab, ngrams, totals, corpus.tokenizer)


# -- probes -------------------------------------------------------------------


@dataclass(frozen=True)
class BlankQuery:
    """A sentence template with one '*' gap to fill.

    With candidates: each is substituted and the whole sentence scored.
    Without: the model's vocabulary is ranked at the gap and the top_n
    kept.  unwanted words (and the function-word stoplist, when flagged)
    never appear in results.
    """

    template: str
    candidates: tuple[str, ...] | None = None
    unwanted: tuple[str, ...] = ()
    exclude_function_words: bool = False
    language: str = "en"
    top_n: int = 5

    def __post_init__(self):
        if self.candidates is not None:
            object.__setattr__(self, "candidates", tuple(self.candidates))
        object.__setattr__(self, "unwanted", tuple(self.unwanted))
        if self.top_n < 1:
            raise ValidationError("top_n must be >= 1")


@dataclass(frozen=True)
class RankedWord:
    word: str
    probability: float
    log_probability: float


@dataclass(frozen=True)
class PairQuery:
    stereo: str
    anti: str
    tag: str | None = None


@dataclass(frozen=True)
class PairResult:
    stereo: str
    anti: str
    stereo_score: float
    anti_score: float
    preference: float
    tag: str | None = None


def _split_template(template: str, tokenizer: TokenizerConfig):
    if template.count("*") != 1:
        raise TemplateError(
            f"template must contain exactly one '*', found {template.count('*')}"
        )
    left, right = template.split("*")
    return tokenize(left, tokenizer), tokenize(right, tokenizer)


def _single_token(word: str, tokenizer: TokenizerConfig) -> str:
    parts = tokenize(word, tokenizer)
    if len(parts) != 1:
        raise ValidationError(
            f"candidate {word!r} is not a single token; multiword "
            "candidates are not supported"
        )
    return parts[0]


def rank_blank(lm: SentenceScorer, query: BlankQuery) -> list[RankedWord]:
    """Rank words for the blank, best first, ties broken alphabetically."""
    tokenizer = lm.tokenizer
    prefix, suffix = _split_template(query.template, tokenizer)
    unwanted = {tokenizer.normalize(w) for w in query.unwanted}

    if query.candidates is not None:
        if not query.candidates:
            raise NothingToRankError("empty candidate list")
        words = [_single_token(c, tokenizer) for c in query.candidates]
        overlap = [w for w in words if w in unwanted]
        if overlap:
            if len(overlap) == len(words):
                raise NothingToRankError(
                    "every candidate is also listed as unwanted"
                )
            raise ValidationError(
                "candidates and unwanted words must be disjoint: "
                + ", ".join(sorted(set(overlap)))
            )
        keep_all = True
    else:
        words = list(lm.vocab)
        if query.exclude_function_words:
            stop = load_stoplist(query.language)
            words = [w for w in words if w not in stop]
        words = [w for w in words if w not in unwanted]
        if not words:
            raise NothingToRankError("every word is excluded at this blank")
        keep_all = False

    logps = lm.fill(prefix, suffix, words)
    ranked = sorted(zip(words, logps), key=lambda wl: (-wl[1], wl[0]))
    if not keep_all:
        ranked = ranked[: query.top_n]
    return [RankedWord(w, math.exp(lp), lp) for w, lp in ranked]


def compare_pair(lm: SentenceScorer, query: PairQuery) -> PairResult:
    """Per-token mean log-probability of each sentence; preference is
    stereo minus anti, positive when the model prefers the first."""
    s_stereo = _mean_logprob(lm, query.stereo)
    s_anti = _mean_logprob(lm, query.anti)
    return PairResult(
        query.stereo,
        query.anti,
        s_stereo,
        s_anti,
        s_stereo - s_anti,
        query.tag,
    )


def _mean_logprob(lm: SentenceScorer, sentence: str) -> float:
    tokens = tokenize(sentence, lm.tokenizer)
    if not tokens:
        raise ValidationError(f"sentence has no tokens: {sentence!r}")
    # the end-of-sentence factor counts, hence len + 1
    return lm.score(tokens) / (len(tokens) + 1)


# -- external files -----------------------------------------------------------


def save_lm(model: NgramLM, path: str | Path) -> None:
    """Serialize a trained model to JSON (counts, vocab, config)."""
    doc = {
        "order": model.order,
        "k": model.k,
        "vocab": list(model.vocab),
        "ngrams": sorted(
            [list(ctx), nxt, c] for (ctx, nxt), c in model._ngrams.items()
        ),
        "tokenizer": {
            "lowercase": model.tokenizer.lowercase,
            "nfc": model.tokenizer.nfc,
        },
    }
    Path(path).write_text(
        json.dumps(doc, ensure_ascii=False, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def load_lm(path: str | Path) -> NgramLM:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    ngrams: dict[tuple[tuple[str, ...], str], int] = {}
    totals: dict[tuple[str, ...], int] = {}
    for ctx_list, nxt, count in doc["ngrams"]:
        ctx = tuple(ctx_list)
        ngrams[(ctx, nxt)] = count
        totals[ctx] = totals.get(ctx, 0) + count
    return NgramLM(
        doc["order"],
        doc["k"],
        doc["vocab"],
        ngrams,
        totals,
        TokenizerConfig(**doc.get("tokenizer", {})),
    )


def load_stoplist(source: str | Path) -> frozenset[str]:
    """Function-word stoplist: packaged language code or a file path.

    File format: one token per line, '#' starts a comment.
    """
    if isinstance(source, str) and len(source) == 2 and source.isalpha():
        ref = resources.files("biaslens.data").joinpath(f"stopwords_{source}.txt")
        if not ref.is_file():
            raise ValidationError(f"no packaged stoplist for language {source!r}")
        text = ref.read_text(encoding="utf-8")
    else:
        text = Path(source).read_text(encoding="utf-8")
    words = set()
    for line in text.splitlines():
        token = line.split("#", 1)[0].strip()
        if token:
            words.add(DEFAULT_TOKENIZER.normalize(token))
    return frozenset(words)


def load_pair_queries(path: str | Path) -> list[PairQuery]:
    """Batch pair file: JSONL records with stereo, anti, optional tag."""
    queries = []
    for n, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise IngestError(f"malformed JSON: {exc.msg}", record=n) from None
        if not isinstance(rec, dict) or "stereo" not in rec or "anti" not in rec:
            raise IngestError("record needs fields stereo and anti", record=n)
        queries.append(PairQuery(rec["stereo"], rec["anti"], rec.get("tag")))
    return queries
