"""Record real service responses into frontend test fixtures.

Drives the HTTP app in-process with planted inputs and writes every
request/response pair to frontend/tests/fixtures/recorded.json.  The
frontend unit tests replay these through a mock transport, so every
number they assert on came from the actual service once.

Rerun after changing service response shapes:

    python3 scripts/record_fixtures.py
"""

import json
import time
from pathlib import Path

import numpy as np
from fastapi.testclient import TestClient

from biaslens.service import create_app

OUT = Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures"

FEM = ["she", "woman", "mother", "girl"]
MASC = ["he", "man", "father", "boy"]
OLDER = ["old", "elder"]
YOUNGER = ["young", "youth"]


def planted_embedding() -> str:
    """17 words in 5-D: gender on axis 0, age on axis 1, seeded noise."""
    rng = np.random.default_rng(31)
    g = np.array([1.0, 0, 0, 0, 0])
    a = np.array([0, 1.0, 0, 0, 0])
    placed: dict[str, np.ndarray] = {}
    for w in FEM:
        placed[w] = g
    for w in MASC:
        placed[w] = -g
    for w in OLDER:
        placed[w] = a
    for w in YOUNGER:
        placed[w] = -a
    placed["nurse"] = 0.6 * g + 0.1 * a
    placed["doctor"] = -0.5 * g + 0.2 * a
    placed["engineer"] = -0.7 * g - 0.1 * a
    placed["teacher"] = 0.3 * g - 0.2 * a
    placed["poet"] = 0.0 * g
    lines = [f"{len(placed)} 5"]
    for w, base in placed.items():
        vec = base + rng.normal(0, 0.05, 5)
        lines.append(w + " " + " ".join(f"{x:.6f}" for x in vec))
    return "\n".join(lines) + "\n"


def planted_corpus() -> str:
    """Three collections; 'nurse' concentrated in news, LM-friendly sentences."""
    rng = np.random.default_rng(17)
    docs = []
    news = [
        "the nurse is kind.",
        "the nurse is here.",
        "a nurse spoke to the crowd.",
        "the doctor is busy.",
    ]
    blog = [
        "the doctor is kind.",
        "my doctor is careful.",
        "the nurse is patient today.",
    ]
    forum = [
        "she said the garden is quiet.",
        "he said the weather is warm.",
        "the teacher is patient.",
        "an engineer is careful.",
    ]
    for i in range(40):
        docs.append({"id": f"n{i}", "collection": "news", "text": news[int(rng.integers(len(news)))]})
    for i in range(25):
        docs.append({"id": f"b{i}", "collection": "blog", "text": blog[int(rng.integers(len(blog)))]})
    for i in range(25):
        docs.append({"id": f"f{i}", "collection": "forum", "text": forum[int(rng.integers(len(forum)))]})
    return "\n".join(json.dumps(d) for d in docs) + "\n"


def wl(name: str, words: list[str]) -> dict:
    return {"name": name, "words": words}


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    recorded: list[dict] = []

    def record(method: str, path: str, body: dict | None = None) -> dict:
        if method == "GET":
            r = client.get(path)
        else:
            r = client.request(method, path, json=body)
        recorded.append(
            {
                "method": method,
                "path": path,
                "body": body,
                "status": r.status_code,
                "response": r.json(),
            }
        )
        return r.json()

    import tempfile

    with tempfile.TemporaryDirectory() as data_dir:
        app = create_app(data_dir=data_dir)
        with TestClient(app) as client:
            # -- artifacts (setup, also recorded for the pickers) ------------
            r = client.put(
                "/embeddings/demo", content=planted_embedding().encode()
            )
            assert r.status_code == 201, r.text
            r = client.put("/corpora/demo", content=planted_corpus().encode())
            assert r.status_code == 202, r.text
            job = r.json()["job_id"]
            for _ in range(100):
                if client.get(f"/jobs/{job}").json()["job"]["status"] == "done":
                    break
                time.sleep(0.05)
            r = client.post(
                "/train/lm",
                json={"corpus_id": "demo", "lm_id": "demo-lm", "order": 2, "k": 0.5},
            )
            assert r.status_code == 202, r.text
            job = r.json()["job_id"]
            for _ in range(100):
                if client.get(f"/jobs/{job}").json()["job"]["status"] == "done":
                    break
                time.sleep(0.05)

            record("GET", "/embeddings")
            record("GET", "/corpora")
            record("GET", "/lms")

            # -- data tab ---------------------------------------------------
            record("GET", "/data/frequency?corpus_id=demo&token=nurse")
            record(
                "GET",
                "/data/concordance?corpus_id=demo&token=nurse&max_lines=5&seed=1",
            )
            record(
                "GET",
                "/data/concordance?corpus_id=demo&token=nurse&max_lines=5&seed=2",
            )
            record(
                "GET",
                "/data/concordance?corpus_id=demo&token=nurse&max_lines=3&seed=3&collections=news",
            )

            # -- explore tab --------------------------------------------------
            tokens = FEM + MASC
            record(
                "POST",
                "/explore/projection",
                {"embedding_id": "demo", "tokens": tokens},
            )
            record(
                "POST",
                "/explore/projection",
                {"embedding_id": "demo", "tokens": tokens, "include_neighbors": 2},
            )
            # At 4 neighbors per token the occupation words enter the plot
            # as related points (each seed cluster's top 3 are its own
            # members, so the 4th reaches past the cluster).
            wide = record(
                "POST",
                "/explore/projection",
                {"embedding_id": "demo", "tokens": tokens, "include_neighbors": 4},
            )
            assert any(p["source"] for p in wide["points"]), (
                "expected related points in the 4-neighbor projection"
            )

            # -- word-bias tab -----------------------------------------------
            probe_words = ["nurse", "doctor", "engineer", "ghostword"]
            record(
                "POST",
                "/bias/space",
                {
                    "embedding_id": "demo",
                    "a": wl("fem", FEM),
                    "b": wl("masc", MASC),
                    "method": "centroid-diff",
                },
            )
            record(
                "POST",
                "/bias/scores",
                {
                    "embedding_id": "demo",
                    "a": wl("fem", FEM),
                    "b": wl("masc", MASC),
                    "method": "centroid-diff",
                    "words": probe_words,
                },
            )
            record(
                "POST",
                "/bias/scores2d",
                {
                    "embedding_id": "demo",
                    "x": {
                        "a": wl("fem", FEM),
                        "b": wl("masc", MASC),
                        "method": "centroid-diff",
                    },
                    "y": {
                        "a": wl("older", OLDER),
                        "b": wl("younger", YOUNGER),
                        "method": "centroid-diff",
                    },
                    "words": ["nurse", "doctor", "engineer", "ghostword"],
                },
            )
            # a list with an out-of-vocabulary seed, for the inline warning
            record(
                "POST",
                "/bias/space",
                {
                    "embedding_id": "demo",
                    "a": wl("femx", ["she", "woman", "zzghost"]),
                    "b": wl("masc", MASC),
                    "method": "centroid-diff",
                },
            )
            record(
                "POST",
                "/bias/scores",
                {
                    "embedding_id": "demo",
                    "a": wl("femx", ["she", "woman", "zzghost"]),
                    "b": wl("masc", MASC),
                    "method": "centroid-diff",
                    "words": ["nurse"],
                },
            )

            # -- sentence tab -----------------------------------------------
            record(
                "POST",
                "/sentences/blank",
                {
                    "lm_id": "demo-lm",
                    "template": "the * is kind",
                    "candidates": ["nurse", "doctor"],
                    "top_n": 5,
                },
            )
            record(
                "POST",
                "/sentences/blank",
                {
                    "lm_id": "demo-lm",
                    "template": "the * is kind",
                    "top_n": 5,
                    "exclude_function_words": True,
                },
            )
            record(
                "POST",
                "/sentences/pair",
                {
                    "lm_id": "demo-lm",
                    "stereo": "the nurse is kind",
                    "anti": "the doctor is kind",
                    "tag": "ui",
                },
            )

            # -- session round trip -------------------------------------------
            record("POST", "/sessions", {"name": "ui-session"})
            record(
                "PUT",
                "/sessions/session-1/lists/fem",
                {"words": FEM, "language": "en"},
            )
            record(
                "PUT",
                "/sessions/session-1/lists/masc",
                {"words": MASC, "language": "en"},
            )
            record("GET", "/sessions/session-1/lists")
            record("GET", "/sessions/session-1/export")

    out_path = OUT / "recorded.json"
    out_path.write_text(json.dumps(recorded, indent=1) + "\n")
    print(f"recorded {len(recorded)} interactions -> {out_path}")


if __name__ == "__main__":
    main()
