"""File formats for word lists and score reports.

Word-list manifests are JSON with one entry per list (name, words,
optional language and provenance note), so seed provenance travels with
the lists.  Score tables export as CSV; the structured report keeps the
config beside the numbers.  All writers are deterministic: same inputs,
same bytes.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Iterable, Sequence

from .bias import (
    CompareReport,
    PairReport,
    ScoreReport,
    SeedDiagnostics,
    TwoSpaceReport,
    WordList,
)
from .errors import IngestError
from .lm import PairResult, RankedWord


def load_word_lists(source: str | Path) -> dict[str, WordList]:
    """Read a word-list manifest; returns lists keyed by name, in order."""
    path = Path(source)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise IngestError(f"malformed word-list manifest: {exc.msg}") from None
    entries = doc.get("lists") if isinstance(doc, dict) else doc
    if not isinstance(entries, list):
        raise IngestError("word-list manifest needs a top-level 'lists' array")
    out: dict[str, WordList] = {}
    for i, entry in enumerate(entries, start=1):
        if not isinstance(entry, dict) or "name" not in entry or "words" not in entry:
            raise IngestError(f"list entry {i} needs fields name and words")
        wl = WordList(
            entry["name"],
            tuple(entry["words"]),
            language=entry.get("language"),
            provenance=entry.get("provenance"),
        )
        if wl.name in out:
            raise IngestError(f"duplicate list name {wl.name!r}")
        out[wl.name] = wl
    return out


def word_lists_doc(lists: Iterable[WordList]) -> dict:
    entries = []
    for wl in lists:
        entry: dict = {"name": wl.name, "words": list(wl.words)}
        if wl.language:
            entry["language"] = wl.language
        if wl.provenance:
            entry["provenance"] = wl.provenance
        entries.append(entry)
    return {"lists": entries}


def save_word_lists(lists: Iterable[WordList], path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(word_lists_doc(lists), ensure_ascii=False, indent=2) + "\n",
        encoding="utf-8",
    )


# -- CSV tables ---------------------------------------------------------------


def _csv(rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _num(x: float) -> str:
    return repr(float(x))


def scores_csv(report: ScoreReport) -> str:
    rows: list[Sequence] = [("token", "score", "space")]
    rows += [(s.token, _num(s.score), s.space) for s in report.scores]
    rows += [(w, "", report.space) for w in report.missing]
    return _csv(rows)


def two_space_csv(report: TwoSpaceReport) -> str:
    rows: list[Sequence] = [("token", "x", "y")]
    rows += [(p.token, _num(p.x), _num(p.y)) for p in report.points]
    rows += [(w, "", "") for w in report.missing]
    return _csv(rows)


def pairs_csv(report: PairReport) -> str:
    rows: list[Sequence] = [
        ("word_a", "word_b", "score_a", "score_b", "asymmetry")
    ]
    rows += [
        (p.word_a, p.word_b, _num(p.score_a), _num(p.score_b), _num(p.asymmetry))
        for p in report.pairs
    ]
    rows += [(a, b, "", "", "") for a, b in report.skipped]
    return _csv(rows)


def compare_csv(report: CompareReport) -> str:
    """One row per word, one column per embedding; blank = OOV there,
    'unavailable' column header note when a seed list emptied out."""
    header = ["word"] + [c.embedding_id for c in report.columns]
    by_col = []
    for col in report.columns:
        by_col.append({s.token: s.score for s in col.scores} if col.available else None)
    rows: list[Sequence] = [header]
    for word in report.words:
        row = [word]
        for scores in by_col:
            if scores is None:
                row.append("unavailable")
            elif word in scores:
                row.append(_num(scores[word]))
            else:
                row.append("")
        rows.append(row)
    return _csv(rows)


def blank_csv(ranked: Sequence[RankedWord]) -> str:
    rows: list[Sequence] = [("word", "probability", "log_probability")]
    rows += [(r.word, _num(r.probability), _num(r.log_probability)) for r in ranked]
    return _csv(rows)


def pair_results_csv(results: Sequence[PairResult]) -> str:
    rows: list[Sequence] = [
        ("stereo", "anti", "stereo_score", "anti_score", "preference", "tag")
    ]
    rows += [
        (
            r.stereo,
            r.anti,
            _num(r.stereo_score),
            _num(r.anti_score),
            _num(r.preference),
            r.tag or "",
        )
        for r in results
    ]
    return _csv(rows)


# -- structured dicts (JSON-ready) ---------------------------------------------


def diagnostics_doc(diag: SeedDiagnostics) -> dict:
    return {
        "list": diag.list_name,
        "oov_rate": diag.oov_rate,
        "min_frequency": diag.min_frequency,
        "median_frequency": diag.median_frequency,
        "words": [
            {
                "word": w.word,
                "oov": w.oov,
                "count": w.count,
                "percentile": w.percentile,
                "dispersion": w.dispersion,
            }
            for w in diag.per_word
        ],
    }


def resolved_list_doc(wl: WordList) -> dict:
    doc: dict = {
        "name": wl.name,
        "words": list(wl.words),
        "resolved": list(wl.resolved),
        "missing": list(wl.missing),
    }
    if wl.language:
        doc["language"] = wl.language
    if wl.provenance:
        doc["provenance"] = wl.provenance
    return doc


def structured_report(
    scores: ScoreReport, lists: Sequence[WordList], config: dict
) -> dict:
    """Score report with the config and list provenance embedded."""
    return {
        "space": scores.space,
        "config": config,
        "lists": [resolved_list_doc(wl) for wl in lists],
        "scores": [
            {"token": s.token, "score": s.score} for s in scores.scores
        ],
        "missing": list(scores.missing),
    }
