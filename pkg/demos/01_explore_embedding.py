"""Load word vectors, find neighbors, flatten a neighborhood to 2-D.

Walks the embedding-side basics: the text vector format, exact cosine
neighbors, and the deterministic 2-D projection used by the scatter view.
"""

import tempfile
from pathlib import Path

import numpy as np

from biaslens.embeddings import EmbeddingStore, load_embedding, save_embedding

# -- a tiny hand-made vocabulary -------------------------------------------------

rng = np.random.default_rng(7)

# two clusters around opposite anchors plus some scatter
anchor_animal = np.array([1.0, 0.0, 0.0, 0.0])
anchor_tool = np.array([0.0, 1.0, 0.0, 0.0])

words = {}
for i, w in enumerate(["cat", "dog", "horse", "mouse", "otter"]):
    words[w] = anchor_animal + 0.15 * rng.standard_normal(4)
for i, w in enumerate(["hammer", "wrench", "saw", "drill", "chisel"]):
    words[w] = anchor_tool + 0.15 * rng.standard_normal(4)

store = EmbeddingStore("demo", list(words), np.array(list(words.values())))
print(f"store {store.id!r}: {len(store)} words, dim {store.dim}")

# -- the text format round-trips exactly ------------------------------------------

path = Path(tempfile.mkdtemp(prefix="embed-demo-")) / "demo.vec"
save_embedding(store, path)
text = path.read_text()
print("\nfirst two lines of the text format:")
for line in text.splitlines()[:2]:
    print(" ", line)

again = load_embedding(path, store_id="reloaded")
assert np.array_equal(again.vectors, store.vectors)
print("reloaded vectors are byte-exact")

# -- exact nearest neighbors --------------------------------------------------------

print("\nneighbors of 'cat':")
for n in store.nearest("cat", 3):
    print(f"  {n.token:8s} cosine {n.similarity:+.3f}")

print("neighbors of 'hammer':")
for n in store.nearest("hammer", 3):
    print(f"  {n.token:8s} cosine {n.similarity:+.3f}")

# -- 2-D projection for plotting ------------------------------------------------------

projection = store.project_2d(list(words))
print("\n2-D coordinates (PCA over the requested words):")
for token, x, y in projection.points:
    print(f"  {token:8s} ({x:+.2f}, {y:+.2f})")
print(
    "explained variance per axis:",
    [round(v, 3) for v in projection.explained_variance],
)

# expanding a query with its neighbors mirrors the related-words toggle
expanded = store.project_2d(["cat", "hammer"], include_neighbors=2)
print("\nprojection of 2 queries expanded with 2 neighbors each:")
print(" ", [t for t, _, _ in expanded.points])
