"""Run a declarative audit manifest end to end into a report bundle.

The manifest is a single JSON document (same schema family as session
files) naming embeddings, an optional corpus, seed word lists, bias
spaces, and probes.  The bundle it produces is deterministic: no
timestamps, stable ordering, so reruns with the same seed are
byte-identical.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any

from . import bias, lm as lm_mod, reports
from .corpus import CorpusIndex, ingest
from .embeddings import EmbeddingStore, load_embedding
from .errors import IngestError, ValidationError
from .trainer import TrainerConfig

FORMAT = "audit-manifest/1"


@dataclass(frozen=True)
class AuditManifest:
    """Parsed and validated manifest, paths resolved against its location."""

    seed: int
    embeddings: tuple[dict, ...]
    corpus_path: Path | None
    lists: tuple[bias.WordList, ...]
    spaces: tuple[dict, ...]
    words_of_interest: tuple[str, ...]
    pairs: tuple[tuple[str, str], ...]
    two_space_plots: tuple[dict, ...]
    lm_config: dict | None
    blank_probes: tuple[dict, ...]
    pair_probes: tuple[dict, ...]

    def list_by_name(self, name: str) -> bias.WordList:
        for wl in self.lists:
            if wl.name == name:
                return wl
        raise ValidationError(f"manifest references unknown list {name!r}")


def load_manifest(path: str | Path) -> tuple[AuditManifest, Path]:
    """Parse a manifest; returns it with the directory paths resolve against."""
    path = Path(path)
    base = path.parent
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise IngestError(f"malformed manifest: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise IngestError("manifest must be a JSON object")

    embeddings = tuple(doc.get("embeddings", ()))
    if not embeddings:
        raise ValidationError("manifest needs at least one embedding")
    for e in embeddings:
        if "id" not in e or "path" not in e:
            raise ValidationError("each embedding needs id and path")

    lists = []
    for entry in doc.get("lists", ()):
        lists.append(
            bias.WordList(
                entry["name"],
                tuple(entry["words"]),
                language=entry.get("language"),
                provenance=entry.get("provenance"),
            )
        )
    corpus = doc.get("corpus")
    return AuditManifest(
        seed=int(doc.get("seed", 0)),
        embeddings=embeddings,
        corpus_path=(base / corpus["path"]) if corpus else None,
        lists=tuple(lists),
        spaces=tuple(doc.get("spaces", ())),
        words_of_interest=tuple(doc.get("words_of_interest", ())),
        pairs=tuple((a, b) for a, b in doc.get("pairs", ())),
        two_space_plots=tuple(doc.get("two_space_plots", ())),
        lm_config=doc.get("lm"),
        blank_probes=tuple(doc.get("blank_probes", ())),
        pair_probes=tuple(doc.get("pair_probes", ())),
    ), base


def _write_json(path: Path, doc: Any) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def run_audit(
    manifest_path: str | Path, out_dir: str | Path, seed: int | None = None
) -> Path:
    """Execute the manifest; returns the bundle directory.

    Bundle contents: provenance block, resolved lists with diagnostics,
    per-space score tables, 2-space tables, pair asymmetries, embedding
    comparisons (when several embeddings), sentence probe results, and
    frequency/concordance excerpts for every seed word.
    """
    manifest, base = load_manifest(manifest_path)
    if seed is None:
        seed = manifest.seed
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    stores: list[EmbeddingStore] = []
    emb_prov = []
    for spec in manifest.embeddings:
        path = base / spec["path"]
        store = load_embedding(
            path, limit=spec.get("limit"), store_id=spec["id"]
        )
        stores.append(store)
        emb_prov.append(
            {
                "id": store.id,
                "path": str(spec["path"]),
                "sha256": hashlib.sha256(path.read_bytes()).hexdigest(),
                "vocab_size": len(store),
                "dim": store.dim,
            }
        )
    primary = stores[0]

    corpus: CorpusIndex | None = None
    if manifest.corpus_path is not None:
        corpus = ingest(manifest.corpus_path)

    # resolved lists + diagnostics
    for wl in manifest.lists:
        resolved = wl.resolve(primary)
        doc = reports.resolved_list_doc(resolved)
        doc["diagnostics"] = reports.diagnostics_doc(
            bias.diagnose_list(wl, primary, corpus)
        )
        _write_json(out / "lists" / f"{wl.name}.json", doc)

    # bias spaces and their tables
    spaces: dict[str, bias.BiasSpace] = {}
    words = manifest.words_of_interest or None
    for spec in manifest.spaces:
        space = bias.build_space(
            primary,
            manifest.list_by_name(spec["a"]),
            manifest.list_by_name(spec["b"]),
            spec.get("method", "centroid-diff"),
        )
        spaces[spec["name"]] = space
        if words is not None:
            report = bias.score_words(space, words)
            _write_text(out / "scores" / f"{spec['name']}.csv", reports.scores_csv(report))
            _write_json(
                out / "scores" / f"{spec['name']}.json",
                reports.structured_report(
                    report,
                    [space.extreme_a, space.extreme_b],
                    {"method": space.method, "embedding": primary.id},
                ),
            )
        if manifest.pairs:
            _write_text(
                out / "pairs" / f"{spec['name']}.csv",
                reports.pairs_csv(bias.pair_asymmetry(space, manifest.pairs)),
            )
        if len(stores) >= 2 and words is not None:
            table = bias.compare_embeddings(
                (
                    manifest.list_by_name(spec["a"]),
                    manifest.list_by_name(spec["b"]),
                    spec.get("method", "centroid-diff"),
                ),
                words,
                stores,
            )
            _write_text(
                out / "compare" / f"{spec['name']}.csv", reports.compare_csv(table)
            )

    for plot in manifest.two_space_plots:
        if words is None:
            break
        report = bias.score_words_2spaces(
            spaces[plot["x"]], spaces[plot["y"]], words
        )
        _write_text(
            out / "scores2d" / f"{plot['x']}__{plot['y']}.csv",
            reports.two_space_csv(report),
        )

    # corpus excerpts for every seed word
    if corpus is not None:
        seen: set[str] = set()
        for wl in manifest.lists:
            for word in wl.words:
                key = corpus.tokenizer.normalize(word)
                if key in seen:
                    continue
                seen.add(key)
                freq = corpus.frequency(word)
                _write_json(
                    out / "corpus" / f"frequency_{key}.json",
                    {
                        "token": freq.token,
                        "total_count": freq.total_count,
                        "rank": freq.rank,
                        "per_collection": [
                            {
                                "collection": c.collection,
                                "count": c.count,
                                "percent": c.percent,
                            }
                            for c in freq.per_collection
                        ],
                    },
                )
                lines = corpus.concordance(word, max_lines=5, seed=seed)
                _write_json(
                    out / "corpus" / f"concordance_{key}.json",
                    [
                        {
                            "doc_id": ln.doc_id,
                            "collection": ln.collection,
                            "sentence": ln.sentence,
                            "char_span": list(ln.char_span),
                        }
                        for ln in lines
                    ],
                )

    # sentence probes
    if manifest.lm_config is not None:
        if corpus is None:
            raise ValidationError("lm probes need a corpus in the manifest")
        cfg = manifest.lm_config
        model = lm_mod.train_lm(
            corpus,
            order=int(cfg.get("order", 3)),
            k=float(cfg.get("k", 0.1)),
            min_count=int(cfg.get("min_count", 1)),
        )
        for i, probe in enumerate(manifest.blank_probes, start=1):
            query = lm_mod.BlankQuery(
                template=probe["template"],
                candidates=(
                    tuple(probe["candidates"]) if "candidates" in probe else None
                ),
                unwanted=tuple(probe.get("unwanted", ())),
                exclude_function_words=probe.get("exclude_function_words", False),
                language=probe.get("language", "en"),
                top_n=int(probe.get("top_n", 5)),
            )
            _write_text(
                out / "sentences" / f"blank_{i}.csv",
                reports.blank_csv(lm_mod.rank_blank(model, query)),
            )
        if manifest.pair_probes:
            results = [
                lm_mod.compare_pair(
                    model,
                    lm_mod.PairQuery(p["stereo"], p["anti"], p.get("tag")),
                )
                for p in manifest.pair_probes
            ]
            _write_text(
                out / "sentences" / "pairs.csv", reports.pair_results_csv(results)
            )

    from . import __version__

    _write_json(
        out / "provenance.json",
        {
            "format": FORMAT,
            "version": __version__,
            "seed": seed,
            "embeddings": emb_prov,
            "corpus_sha256": corpus.content_hash if corpus is not None else None,
            "lists": [
                {
                    "name": wl.name,
                    "words": list(wl.words),
                    "language": wl.language,
                    "provenance": wl.provenance,
                }
                for wl in manifest.lists
            ],
            "spaces": list(manifest.spaces),
            "lm": manifest.lm_config,
            "trainer_defaults": asdict(TrainerConfig()),
        },
    )
    return out
