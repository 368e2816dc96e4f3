"""End-to-end audit: declare everything in a manifest, get a reproducible bundle.

Writes an embedding file, a corpus, and a manifest into a scratch
directory, runs the audit twice, and shows that the two bundles are
byte-identical (no timestamps, seeded sampling, sorted keys).
"""

import filecmp
import json
import tempfile
from pathlib import Path

import numpy as np

from biaslens.audit import run_audit

root = Path(tempfile.mkdtemp(prefix="audit-demo-"))
print(f"workspace: {root}")

# -- inputs: a small embedding with planted structure, plus a corpus -----------------

rng = np.random.default_rng(21)
fem_axis = np.array([1.0, 0.0, 0.0, 0.0])
words = {
    "she": fem_axis, "woman": fem_axis * 0.9, "mother": fem_axis * 1.1,
    "he": -fem_axis, "man": -fem_axis * 0.9, "father": -fem_axis * 1.1,
    "nurse": fem_axis * 0.6, "doctor": -fem_axis * 0.5,
}
lines = [f"{len(words)} 4"]
for w, base in words.items():
    vec = base + rng.normal(0, 0.05, 4)
    lines.append(w + " " + " ".join(f"{x:.6f}" for x in vec))
(root / "toy.vec").write_text("\n".join(lines) + "\n")

docs = [
    {"id": "d1", "collection": "notes", "text": "the nurse helped. she was kind."},
    {"id": "d2", "collection": "notes", "text": "the doctor spoke. he was brief."},
    {"id": "d3", "collection": "mail", "text": "she wrote to the nurse twice."},
]
(root / "corpus.jsonl").write_text("\n".join(json.dumps(d) for d in docs) + "\n")

# -- the manifest names every input and probe; the bundle is a pure function of it ----

manifest = {
    "seed": 7,
    "embeddings": [{"id": "toy", "path": "toy.vec"}],
    "corpus": {"path": "corpus.jsonl"},
    "lists": [
        {"name": "fem", "words": ["she", "woman", "mother"], "language": "en"},
        {"name": "masc", "words": ["he", "man", "father"]},
    ],
    "spaces": [{"name": "gender", "a": "fem", "b": "masc"}],
    "words_of_interest": ["nurse", "doctor", "unlisted"],
    "pairs": [["nurse", "doctor"]],
    "lm": {"order": 2, "k": 0.5},
    "blank_probes": [{"template": "the * helped", "candidates": ["nurse", "doctor"]}],
    "pair_probes": [{"stereo": "she was kind", "anti": "he was kind", "tag": "kindness"}],
}
manifest_path = root / "manifest.json"
manifest_path.write_text(json.dumps(manifest, indent=2))

# -- run it twice -----------------------------------------------------------------

out1 = run_audit(manifest_path, root / "bundle_a")
out2 = run_audit(manifest_path, root / "bundle_b")

files = sorted(str(p.relative_to(out1)) for p in out1.rglob("*") if p.is_file())
print(f"\nbundle contains {len(files)} files:")
for f in files:
    print(f"  {f}")

match, mismatch, errors = filecmp.cmpfiles(out1, out2, files, shallow=False)
assert not mismatch and not errors, (mismatch, errors)
print("\nsecond run is byte-identical to the first")

# -- a couple of the numbers inside -----------------------------------------------

prov = json.loads((out1 / "provenance.json").read_text())
print(f"\nprovenance: format {prov['format']}, seed {prov['seed']}")
print(f"embedding sha256 starts {prov['embeddings'][0]['sha256'][:12]}...")

print("\nscores/gender.csv:")
print((out1 / "scores" / "gender.csv").read_text().rstrip())
