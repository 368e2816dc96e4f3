"""HTTP JSON facade over the library plus file-persisted sessions.

Every endpoint delegates to one library operation; the UI and the CLI
therefore compute identical numbers.  Long operations (corpus ingest,
training) run as polled jobs; everything else is synchronous.  Artifact
ids and job ids are small counters so that replaying a request log
reproduces responses byte for byte (timestamps aside).
"""

from __future__ import annotations

import io
import json
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from . import __version__, bias, lm as lm_mod, reports
from .corpus import CorpusIndex, ingest_text
from .embeddings import EmbeddingStore, load_embedding
from .errors import (
    ArtifactNotFoundError,
    BiaslensError,
    IngestError,
    JobConflictError,
    LoadError,
    ValidationError,
)
from .trainer import TrainerConfig, train

_STATUS = {
    ArtifactNotFoundError: 404,
    JobConflictError: 409,
    LoadError: 400,
    IngestError: 400,
}


def _status_for(exc: BiaslensError) -> int:
    for klass, status in _STATUS.items():
        if isinstance(exc, klass):
            return status
    return 422


class Registry:
    """All mutable service state behind one writer lock."""

    def __init__(self, data_dir: Path):
        self.data_dir = data_dir
        self.lock = threading.Lock()
        self.embeddings: dict[str, EmbeddingStore] = {}
        self.corpora: dict[str, CorpusIndex] = {}
        self.lms: dict[str, lm_mod.NgramLM] = {}
        self.jobs: dict[str, dict] = {}
        self.busy: set[str] = set()
        self._job_seq = 0
        self._session_seq = self._scan_session_seq()
        self.executor = ThreadPoolExecutor(max_workers=2)

    # -- artifacts ----------------------------------------------------------

    def embedding(self, emb_id: str) -> EmbeddingStore:
        store = self.embeddings.get(emb_id)
        if store is None:
            raise ArtifactNotFoundError(f"no embedding {emb_id!r} loaded")
        return store

    def corpus(self, corpus_id: str) -> CorpusIndex:
        index = self.corpora.get(corpus_id)
        if index is None:
            raise ArtifactNotFoundError(f"no corpus {corpus_id!r} ingested")
        return index

    def lm(self, lm_id: str) -> lm_mod.NgramLM:
        model = self.lms.get(lm_id)
        if model is None:
            raise ArtifactNotFoundError(f"no language model {lm_id!r} trained")
        return model

    # -- jobs ---------------------------------------------------------------

    def submit(self, kind: str, target: str, work) -> str:
        """Queue a job; at most one job per target artifact id at a time."""
        with self.lock:
            if target in self.busy:
                raise JobConflictError(
                    f"a job for artifact {target!r} is already in flight"
                )
            self.busy.add(target)
            self._job_seq += 1
            job_id = f"job-{self._job_seq}"
            self.jobs[job_id] = {
                "id": job_id,
                "kind": kind,
                "target": target,
                "status": "pending",
                "result": None,
                "error": None,
            }

        def run():
            with self.lock:
                self.jobs[job_id]["status"] = "running"
            try:
                result = work()
            except BiaslensError as exc:
                with self.lock:
                    self.jobs[job_id]["status"] = "error"
                    self.jobs[job_id]["error"] = {
                        "code": exc.code,
                        "message": str(exc),
                    }
                    self.busy.discard(target)
                return
            except Exception as exc:  # noqa: BLE001 - job boundary
                with self.lock:
                    self.jobs[job_id]["status"] = "error"
                    self.jobs[job_id]["error"] = {
                        "code": "internal",
                        "message": str(exc),
                    }
                    self.busy.discard(target)
                return
            with self.lock:
                self.jobs[job_id]["status"] = "done"
                self.jobs[job_id]["result"] = result
                self.busy.discard(target)

        self.executor.submit(run)
        return job_id

    # -- sessions -----------------------------------------------------------

    def _sessions_dir(self) -> Path:
        d = self.data_dir / "sessions"
        d.mkdir(parents=True, exist_ok=True)
        return d

    def _scan_session_seq(self) -> int:
        seq = 0
        d = self.data_dir / "sessions"
        if d.is_dir():
            for f in d.glob("session-*.json"):
                try:
                    seq = max(seq, int(f.stem.split("-")[1]))
                except (IndexError, ValueError):
                    continue
        return seq

    def new_session_id(self) -> str:
        with self.lock:
            self._session_seq += 1
            return f"session-{self._session_seq}"

    def session_path(self, session_id: str) -> Path:
        return self._sessions_dir() / f"{session_id}.json"

    def load_session(self, session_id: str) -> dict:
        path = self.session_path(session_id)
        if not path.is_file():
            raise ArtifactNotFoundError(f"no session {session_id!r}")
        return json.loads(path.read_text(encoding="utf-8"))

    def save_session(self, doc: dict) -> None:
        doc["updated"] = _now()
        path = self.session_path(doc["session_id"])
        with self.lock:
            path.write_text(
                json.dumps(doc, ensure_ascii=False, indent=2) + "\n",
                encoding="utf-8",
            )

    def list_sessions(self) -> list[dict]:
        out = []
        for f in sorted(self._sessions_dir().glob("session-*.json")):
            doc = json.loads(f.read_text(encoding="utf-8"))
            out.append(
                {
                    "session_id": doc["session_id"],
                    "name": doc.get("name"),
                    "lists": len(doc.get("lists", [])),
                    "updated": doc.get("updated"),
                }
            )
        return out


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


# -- request parsing helpers ---------------------------------------------------


def _require(body: dict, field: str):
    if field not in body:
        raise ValidationError(f"missing field {field!r}")
    return body[field]


def _word_list(payload: Any, default_name: str) -> bias.WordList:
    if isinstance(payload, list):
        return bias.WordList(default_name, tuple(payload))
    if isinstance(payload, dict):
        return bias.WordList(
            payload.get("name", default_name),
            tuple(_require(payload, "words")),
            language=payload.get("language"),
            provenance=payload.get("provenance"),
        )
    raise ValidationError("word list must be an array or {name, words} object")


def _space_from(store: EmbeddingStore, body: dict) -> bias.BiasSpace:
    return bias.build_space(
        store,
        _word_list(_require(body, "a"), "a"),
        _word_list(_require(body, "b"), "b"),
        body.get("method", "centroid-diff"),
        unit_seed_vectors=body.get("unit_seed_vectors", True),
    )


# -- JSON shapes ----------------------------------------------------------------


def _embedding_doc(store: EmbeddingStore) -> dict:
    return {
        "id": store.id,
        "vocab_size": len(store),
        "dim": store.dim,
        "dropped_duplicates": store.dropped_duplicates,
    }


def _corpus_doc(corpus_id: str, index: CorpusIndex) -> dict:
    return {
        "id": corpus_id,
        "documents": len(index.docs),
        "collections": list(index.collections),
        "total_tokens": index.total_tokens,
        "sha256": index.content_hash,
    }


def _scores_doc(report: bias.ScoreReport) -> dict:
    return {
        "space": report.space,
        "scores": [{"token": s.token, "score": s.score} for s in report.scores],
        "missing": list(report.missing),
    }


def create_app(data_dir: str | Path | None = None) -> FastAPI:
    """Build the service; data_dir (or BIASLENS_DATA_DIR) holds sessions."""
    if data_dir is None:
        data_dir = os.environ.get("BIASLENS_DATA_DIR", "biaslens_data")
    reg = Registry(Path(data_dir))
    app = FastAPI(title="biaslens", version=__version__)
    app.state.registry = reg

    def prov(**parts) -> dict:
        block = {"api_version": __version__}
        block.update({k: v for k, v in parts.items() if v is not None})
        return block

    @app.middleware("http")
    async def version_header(request: Request, call_next):
        response = await call_next(request)
        response.headers["X-API-Version"] = __version__
        return response

    @app.exception_handler(BiaslensError)
    async def lib_error(request: Request, exc: BiaslensError):
        return JSONResponse(
            status_code=_status_for(exc),
            content={"error": {"code": exc.code, "message": str(exc)}},
        )

    @app.exception_handler(RequestValidationError)
    async def body_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422,
            content={"error": {"code": "invalid_body", "message": str(exc)}},
        )

    # -- artifacts ------------------------------------------------------------

    @app.put("/embeddings/{emb_id}", status_code=201)
    async def put_embedding(
        emb_id: str,
        request: Request,
        limit: int | None = None,
        normalize: bool = True,
    ):
        text = (await request.body()).decode("utf-8")
        store = load_embedding(
            io.StringIO(text),
            limit=limit,
            normalize_tokens=normalize,
            store_id=emb_id,
        )
        with reg.lock:
            reg.embeddings[emb_id] = store
        return {"embedding": _embedding_doc(store), "provenance": prov(embedding=emb_id)}

    @app.get("/embeddings")
    def list_embeddings():
        return {
            "embeddings": [_embedding_doc(s) for s in reg.embeddings.values()],
            "provenance": prov(),
        }

    @app.put("/corpora/{corpus_id}", status_code=202)
    async def put_corpus(corpus_id: str, request: Request):
        text = (await request.body()).decode("utf-8")

        def work():
            index = ingest_text(text)
            with reg.lock:
                reg.corpora[corpus_id] = index
            return _corpus_doc(corpus_id, index)

        job_id = reg.submit("ingest", corpus_id, work)
        return {"job_id": job_id, "provenance": prov(corpus=corpus_id)}

    @app.get("/corpora")
    def list_corpora():
        return {
            "corpora": [_corpus_doc(cid, c) for cid, c in reg.corpora.items()],
            "provenance": prov(),
        }

    @app.post("/train/embedding", status_code=202)
    def train_embedding(body: dict = Body(...)):
        corpus_id = _require(body, "corpus_id")
        emb_id = _require(body, "embedding_id")
        index = reg.corpus(corpus_id)
        cfg = TrainerConfig(**body.get("config", {}))

        def work():
            trained = train(index, cfg, store_id=emb_id)
            with reg.lock:
                reg.embeddings[emb_id] = trained.store
            doc = _embedding_doc(trained.store)
            doc["dropped_tokens"] = list(trained.dropped_tokens)
            doc["corpus_hash"] = trained.corpus_hash
            return doc

        job_id = reg.submit("train-embedding", emb_id, work)
        return {
            "job_id": job_id,
            "provenance": prov(corpus=corpus_id, embedding=emb_id),
        }

    @app.post("/train/lm", status_code=202)
    def train_language_model(body: dict = Body(...)):
        corpus_id = _require(body, "corpus_id")
        lm_id = _require(body, "lm_id")
        index = reg.corpus(corpus_id)
        order = int(body.get("order", 3))
        k = float(body.get("k", 0.1))
        min_count = int(body.get("min_count", 1))

        def work():
            model = lm_mod.train_lm(index, order=order, k=k, min_count=min_count)
            with reg.lock:
                reg.lms[lm_id] = model
            return {
                "id": lm_id,
                "order": model.order,
                "k": model.k,
                "vocab_size": len(model.vocab),
            }

        job_id = reg.submit("train-lm", lm_id, work)
        return {"job_id": job_id, "provenance": prov(corpus=corpus_id, lm=lm_id)}

    @app.get("/lms")
    def list_lms():
        return {
            "lms": [
                {
                    "id": lm_id,
                    "order": m.order,
                    "k": m.k,
                    "vocab_size": len(m.vocab),
                }
                for lm_id, m in reg.lms.items()
            ],
            "provenance": prov(),
        }

    @app.get("/jobs/{job_id}")
    def job_status(job_id: str):
        job = reg.jobs.get(job_id)
        if job is None:
            raise ArtifactNotFoundError(f"no job {job_id!r}")
        return {"job": dict(job), "provenance": prov()}

    # -- data tab ---------------------------------------------------------------

    @app.get("/data/frequency")
    def data_frequency(corpus_id: str, token: str):
        report = reg.corpus(corpus_id).frequency(token)
        return {
            "token": report.token,
            "total_count": report.total_count,
            "rank": report.rank,
            "per_collection": [
                {"collection": c.collection, "count": c.count, "percent": c.percent}
                for c in report.per_collection
            ],
            "distribution": [
                {"lo": b.lo, "hi": b.hi, "tokens": b.tokens}
                for b in report.distribution
            ],
            "token_bin": report.token_bin,
            "provenance": prov(corpus=corpus_id),
        }

    @app.get("/data/concordance")
    def data_concordance(
        corpus_id: str,
        token: str,
        max_lines: int = 5,
        seed: int | None = None,
        collections: str | None = None,
    ):
        wanted = collections.split(",") if collections else None
        lines = reg.corpus(corpus_id).concordance(
            token, max_lines=max_lines, collections=wanted, seed=seed
        )
        return {
            "token": token,
            "lines": [
                {
                    "doc_id": ln.doc_id,
                    "collection": ln.collection,
                    "sentence": ln.sentence,
                    "char_span": list(ln.char_span),
                }
                for ln in lines
            ],
            "provenance": prov(corpus=corpus_id, seed=seed),
        }

    # -- explore tab --------------------------------------------------------------

    @app.post("/explore/projection")
    def explore_projection(body: dict = Body(...)):
        store = reg.embedding(_require(body, "embedding_id"))
        tokens = list(_require(body, "tokens"))
        neighbors_k = body.get("include_neighbors")
        skip_oov = body.get("skip_oov", True)

        source: dict[str, str] = {}
        expanded = list(tokens)
        if neighbors_k:
            present = [t for t in tokens if t in store]
            known = {store.vocab[store.lookup(t)] for t in present}
            for t in present:
                for nb in store.nearest(t, int(neighbors_k)):
                    if nb.token not in known:
                        known.add(nb.token)
                        source[nb.token] = t
                        expanded.append(nb.token)
        projection = store.project_2d(expanded, skip_oov=skip_oov)
        return {
            "points": [
                {"token": t, "x": x, "y": y, "source": source.get(t)}
                for t, x, y in projection.points
            ],
            "explained_variance": list(projection.explained_variance),
            "missing": list(projection.missing),
            "provenance": prov(embedding=store.id),
        }

    # -- bias tab -------------------------------------------------------------------

    @app.post("/bias/space")
    def bias_space(body: dict = Body(...)):
        store = reg.embedding(_require(body, "embedding_id"))
        space = _space_from(store, body)
        return {
            "space": {
                "key": space.key,
                "method": space.method,
                "embedding_id": space.embedding_id,
                "a": reports.resolved_list_doc(space.extreme_a),
                "b": reports.resolved_list_doc(space.extreme_b),
            },
            "provenance": prov(embedding=store.id),
        }

    @app.post("/bias/scores")
    def bias_scores(body: dict = Body(...)):
        store = reg.embedding(_require(body, "embedding_id"))
        space = _space_from(store, body)
        report = bias.score_words(space, list(_require(body, "words")))
        doc = _scores_doc(report)
        doc["provenance"] = prov(embedding=store.id)
        return doc

    @app.post("/bias/scores2d")
    def bias_scores2d(body: dict = Body(...)):
        store = reg.embedding(_require(body, "embedding_id"))
        space_x = _space_from(store, _require(body, "x"))
        space_y = _space_from(store, _require(body, "y"))
        report = bias.score_words_2spaces(
            space_x, space_y, list(_require(body, "words"))
        )
        return {
            "space_x": report.space_x,
            "space_y": report.space_y,
            "points": [
                {"token": p.token, "x": p.x, "y": p.y} for p in report.points
            ],
            "missing": list(report.missing),
            "provenance": prov(embedding=store.id),
        }

    @app.post("/bias/pairs")
    def bias_pairs(body: dict = Body(...)):
        store = reg.embedding(_require(body, "embedding_id"))
        space = _space_from(store, body)
        pairs = [tuple(p) for p in _require(body, "pairs")]
        for p in pairs:
            if len(p) != 2:
                raise ValidationError("each pair needs exactly two words")
        report = bias.pair_asymmetry(space, pairs)
        return {
            "space": report.space,
            "pairs": [
                {
                    "word_a": p.word_a,
                    "word_b": p.word_b,
                    "score_a": p.score_a,
                    "score_b": p.score_b,
                    "asymmetry": p.asymmetry,
                }
                for p in report.pairs
            ],
            "skipped": [list(p) for p in report.skipped],
            "provenance": prov(embedding=store.id),
        }

    @app.post("/bias/diagnostics")
    def bias_diagnostics(body: dict = Body(...)):
        store = reg.embedding(_require(body, "embedding_id"))
        corpus_id = body.get("corpus_id")
        corpus = reg.corpus(corpus_id) if corpus_id else None
        diag = bias.diagnose_list(
            _word_list(_require(body, "list"), "list"), store, corpus
        )
        doc = reports.diagnostics_doc(diag)
        doc["provenance"] = prov(embedding=store.id, corpus=corpus_id)
        return doc

    @app.post("/bias/compare")
    def bias_compare(body: dict = Body(...)):
        emb_ids = _require(body, "embedding_ids")
        stores = [reg.embedding(e) for e in emb_ids]
        report = bias.compare_embeddings(
            (
                _word_list(_require(body, "a"), "a"),
                _word_list(_require(body, "b"), "b"),
                body.get("method", "centroid-diff"),
            ),
            list(_require(body, "words")),
            stores,
        )
        return {
            "words": list(report.words),
            "columns": [
                {
                    "embedding_id": c.embedding_id,
                    "available": c.available,
                    "scores": [
                        {"token": s.token, "score": s.score} for s in c.scores
                    ],
                    "missing": list(c.missing),
                    "note": c.note,
                }
                for c in report.columns
            ],
            "provenance": prov(),
        }

    # -- sentences tab -----------------------------------------------------------

    @app.post("/sentences/blank")
    def sentences_blank(body: dict = Body(...)):
        model = reg.lm(_require(body, "lm_id"))
        query = lm_mod.BlankQuery(
            template=_require(body, "template"),
            candidates=(
                tuple(body["candidates"]) if body.get("candidates") is not None else None
            ),
            unwanted=tuple(body.get("unwanted", ())),
            exclude_function_words=body.get("exclude_function_words", False),
            language=body.get("language", "en"),
            top_n=int(body.get("top_n", 5)),
        )
        ranked = lm_mod.rank_blank(model, query)
        return {
            "template": query.template,
            "ranked": [
                {
                    "word": r.word,
                    "probability": r.probability,
                    "log_probability": r.log_probability,
                }
                for r in ranked
            ],
            "provenance": prov(lm=body["lm_id"]),
        }

    @app.post("/sentences/pair")
    def sentences_pair(body: dict = Body(...)):
        model = reg.lm(_require(body, "lm_id"))
        result = lm_mod.compare_pair(
            model,
            lm_mod.PairQuery(
                _require(body, "stereo"), _require(body, "anti"), body.get("tag")
            ),
        )
        return {
            "stereo": result.stereo,
            "anti": result.anti,
            "stereo_score": result.stereo_score,
            "anti_score": result.anti_score,
            "preference": result.preference,
            "tag": result.tag,
            "provenance": prov(lm=body["lm_id"]),
        }

    # -- sessions -------------------------------------------------------------------

    @app.post("/sessions", status_code=201)
    def create_session(body: dict = Body(default={})):
        session_id = reg.new_session_id()
        doc = {
            "session_id": session_id,
            "name": body.get("name") or session_id,
            "lists": [],
            "spaces": [],
            "active_embedding": None,
            "active_corpus": None,
            "created": _now(),
        }
        reg.save_session(doc)
        return {"session": doc, "provenance": prov(session=session_id)}

    @app.get("/sessions")
    def get_sessions():
        return {"sessions": reg.list_sessions(), "provenance": prov()}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return {
            "session": reg.load_session(session_id),
            "provenance": prov(session=session_id),
        }

    @app.put("/sessions/{session_id}")
    def update_session(session_id: str, body: dict = Body(...)):
        doc = reg.load_session(session_id)
        for field in ("name", "active_embedding", "active_corpus", "spaces"):
            if field in body:
                doc[field] = body[field]
        reg.save_session(doc)
        return {"session": doc, "provenance": prov(session=session_id)}

    @app.delete("/sessions/{session_id}")
    def delete_session(session_id: str):
        path = reg.session_path(session_id)
        if not path.is_file():
            raise ArtifactNotFoundError(f"no session {session_id!r}")
        with reg.lock:
            path.unlink()
        return {"deleted": session_id, "provenance": prov()}

    @app.put("/sessions/{session_id}/lists/{name}")
    def put_list(session_id: str, name: str, body: dict = Body(...)):
        wl = bias.WordList(
            name,
            tuple(_require(body, "words")),
            language=body.get("language"),
            provenance=body.get("provenance"),
        )
        doc = reg.load_session(session_id)
        entry = reports.word_lists_doc([wl])["lists"][0]
        doc["lists"] = [e for e in doc["lists"] if e["name"] != name] + [entry]
        reg.save_session(doc)
        return {"list": entry, "provenance": prov(session=session_id)}

    @app.get("/sessions/{session_id}/lists")
    def get_lists(session_id: str):
        return {
            "lists": reg.load_session(session_id)["lists"],
            "provenance": prov(session=session_id),
        }

    @app.get("/sessions/{session_id}/lists/{name}")
    def get_list(session_id: str, name: str):
        for entry in reg.load_session(session_id)["lists"]:
            if entry["name"] == name:
                return {"list": entry, "provenance": prov(session=session_id)}
        raise ArtifactNotFoundError(
            f"no list {name!r} in session {session_id!r}"
        )

    @app.delete("/sessions/{session_id}/lists/{name}")
    def delete_list(session_id: str, name: str):
        doc = reg.load_session(session_id)
        kept = [e for e in doc["lists"] if e["name"] != name]
        if len(kept) == len(doc["lists"]):
            raise ArtifactNotFoundError(
                f"no list {name!r} in session {session_id!r}"
            )
        doc["lists"] = kept
        reg.save_session(doc)
        return {"deleted": name, "provenance": prov(session=session_id)}

    @app.get("/sessions/{session_id}/export")
    def export_session(session_id: str):
        doc = reg.load_session(session_id)
        manifest = {
            "seed": 0,
            "embeddings": (
                [{"id": doc["active_embedding"], "path": ""}]
                if doc.get("active_embedding")
                else []
            ),
            "lists": doc["lists"],
            "spaces": doc.get("spaces", []),
            "words_of_interest": [],
        }
        return {"manifest": manifest, "provenance": prov(session=session_id)}

    return app
