"""Command-line entry points.

The audit subcommand runs a declarative manifest end to end; the rest
are thin wrappers over single library operations and share their exact
numerics with the HTTP service.

Exit codes: 0 success, 1 missing file or other failure, 2 when a seed
list resolves to nothing in the embedding (the list is named).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__, bias, reports
from .audit import run_audit
from .corpus import ingest
from .embeddings import load_embedding
from .errors import BiaslensError, EmptyListError
from .lm import save_lm, train_lm
from .trainer import TrainerConfig, save_trained, train


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biaslens",
        description="Bias exploration workbench for word embeddings and "
        "sentence scorers.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("audit", help="run an audit manifest into a report bundle")
    p.add_argument("--manifest", required=True, help="manifest JSON file")
    p.add_argument("--out", required=True, help="output bundle directory")
    p.add_argument("--seed", type=int, default=None, help="override manifest seed")

    p = sub.add_parser("train-embedding", help="train PPMI-SVD vectors from a corpus")
    p.add_argument("--corpus", required=True, help="corpus file (JSONL or plain text)")
    p.add_argument("--out", required=True, help="output vectors file")
    p.add_argument("--config", default=None, help="trainer config JSON file")
    p.add_argument("--seed", type=int, default=None, help="override config seed")

    p = sub.add_parser("train-lm", help="train the n-gram sentence scorer")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True, help="output model JSON file")
    p.add_argument("--order", type=int, default=3)
    p.add_argument("--k", type=float, default=0.1)
    p.add_argument("--min-count", type=int, default=1)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument(
        "--data-dir",
        default=None,
        help="session storage directory (default: env BIASLENS_DATA_DIR)",
    )

    p = sub.add_parser("score", help="score words against a bias space")
    p.add_argument("--embedding", required=True, help="word-vector file")
    p.add_argument("--lists", required=True, help="word-list manifest JSON")
    p.add_argument("--a", required=True, help="extreme-a list name")
    p.add_argument("--b", required=True, help="extreme-b list name")
    p.add_argument("--method", default="centroid-diff")
    p.add_argument("--words", required=True, nargs="+", help="words of interest")
    p.add_argument("--out", default=None, help="write CSV here instead of stdout")

    p = sub.add_parser("concordance", help="sample sentences containing a token")
    p.add_argument("--corpus", required=True)
    p.add_argument("--token", required=True)
    p.add_argument("--max-lines", type=int, default=5)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--collections", default=None, help="comma-separated filter")
    return parser


def _cmd_audit(args) -> int:
    out = run_audit(args.manifest, args.out, seed=args.seed)
    print(f"audit bundle written to {out}")
    return 0


def _cmd_train_embedding(args) -> int:
    fields = {}
    if args.config:
        fields = json.loads(Path(args.config).read_text(encoding="utf-8"))
    if args.seed is not None:
        fields["seed"] = args.seed
    cfg = TrainerConfig(**fields)
    index = ingest(args.corpus)
    trained = train(index, cfg, store_id=Path(args.out).stem)
    manifest = save_trained(trained, args.out)
    print(
        f"trained {len(trained.store)} vectors (dim {trained.store.dim}) "
        f"-> {args.out} (manifest {manifest.name})"
    )
    return 0


def _cmd_train_lm(args) -> int:
    index = ingest(args.corpus)
    model = train_lm(index, order=args.order, k=args.k, min_count=args.min_count)
    save_lm(model, args.out)
    print(
        f"trained order-{model.order} model over {len(model.vocab)} words "
        f"-> {args.out}"
    )
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    data_dir = args.data_dir or os.environ.get("BIASLENS_DATA_DIR", "biaslens_data")
    uvicorn.run(create_app(data_dir), host=args.host, port=args.port)
    return 0


def _cmd_score(args) -> int:
    store = load_embedding(args.embedding)
    lists = reports.load_word_lists(args.lists)
    for name in (args.a, args.b):
        if name not in lists:
            raise BiaslensError(f"no list named {name!r} in {args.lists}")
    space = bias.build_space(store, lists[args.a], lists[args.b], args.method)
    report = bias.score_words(space, tuple(args.words))
    csv_text = reports.scores_csv(report)
    if args.out:
        Path(args.out).write_text(csv_text, encoding="utf-8")
    else:
        sys.stdout.write(csv_text)
    return 0


def _cmd_concordance(args) -> int:
    index = ingest(args.corpus)
    wanted = args.collections.split(",") if args.collections else None
    lines = index.concordance(
        args.token, max_lines=args.max_lines, collections=wanted, seed=args.seed
    )
    for ln in lines:
        print(f"[{ln.collection}/{ln.doc_id}] {ln.sentence}")
    if not lines:
        print(f"no sentences contain {args.token!r}", file=sys.stderr)
    return 0


_COMMANDS = {
    "audit": _cmd_audit,
    "train-embedding": _cmd_train_embedding,
    "train-lm": _cmd_train_lm,
    "serve": _cmd_serve,
    "score": _cmd_score,
    "concordance": _cmd_concordance,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename or exc}", file=sys.stderr)
        return 1
    except EmptyListError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BiaslensError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
