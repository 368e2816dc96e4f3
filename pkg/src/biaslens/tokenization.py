"""Language-neutral tokenization shared by the corpus index and the scorers.

Tokens are maximal runs of Unicode letters/digits; everything else is a
separator.  Sentences split on ``. ! ?`` and newlines, with no attempt at
abbreviation handling -- deterministic over clever.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)
_SENTENCE_BREAK_RE = re.compile(r"[.!?\n]")


@dataclass(frozen=True)
class TokenizerConfig:
    """Normalization switches; both on by default."""

    lowercase: bool = True
    nfc: bool = True

    def normalize_text(self, text: str) -> str:
        """NFC-compose whole text so combining marks don't split tokens."""
        return unicodedata.normalize("NFC", text) if self.nfc else text

    def normalize(self, token: str) -> str:
        if self.nfc:
            token = unicodedata.normalize("NFC", token)
        if self.lowercase:
            token = token.lower()
        return token


DEFAULT_TOKENIZER = TokenizerConfig()


@dataclass(frozen=True)
class Span:
    """A token with its character offsets in the source string."""

    text: str
    start: int
    end: int


def token_spans(text: str, cfg: TokenizerConfig = DEFAULT_TOKENIZER) -> list[Span]:
    """Tokenize ``text``; offsets index into the NFC form of the string.

    Callers that keep the text beside the spans should store
    ``cfg.normalize_text(text)`` so the offsets stay valid.
    """
    text = cfg.normalize_text(text)
    return [
        Span(cfg.normalize(m.group()), m.start(), m.end())
        for m in _TOKEN_RE.finditer(text)
    ]


def tokenize(text: str, cfg: TokenizerConfig = DEFAULT_TOKENIZER) -> list[str]:
    """Tokenize ``text`` into normalized tokens."""
    return [cfg.normalize(m.group()) for m in _TOKEN_RE.finditer(cfg.normalize_text(text))]


def sentence_spans(text: str) -> list[tuple[str, int]]:
    """Split ``text`` into sentences, returning (sentence, start_offset).

    A sentence is any stretch between break characters that contains at
    least one token; the break character stays attached to the preceding
    sentence so concordance lines read naturally.
    """
    out: list[tuple[str, int]] = []
    start = 0
    for m in _SENTENCE_BREAK_RE.finditer(text):
        chunk = text[start : m.end()]
        if _TOKEN_RE.search(chunk):
            out.append(_trimmed(chunk, start))
        start = m.end()
    tail = text[start:]
    if _TOKEN_RE.search(tail):
        out.append(_trimmed(tail, start))
    return out


def _trimmed(chunk: str, offset: int) -> tuple[str, int]:
    lead = len(chunk) - len(chunk.lstrip())
    return chunk.strip(), offset + lead
