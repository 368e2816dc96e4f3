"""From raw text to a trained embedding: ingest, inspect, train, probe.

Builds a synthetic corpus with a planted co-occurrence skew, checks the
corpus-side views (frequency, concordance), trains PPMI-SVD vectors, and
confirms the skew shows up as a bias score sign.
"""

import json

import numpy as np

from biaslens.bias import WordList, build_space, score_words
from biaslens.corpus import ingest_text
from biaslens.trainer import TrainerConfig, train

# -- synthesize a corpus where 'nurse' keeps female company -------------------------

rng = np.random.default_rng(3)
FEM = ["she", "woman", "mother", "girl"]
MASC = ["he", "man", "father", "boy"]
FILL = [f"thing{i:02d}" for i in range(40)]

docs = []
for i in range(1500):
    s1, s2 = rng.choice(FEM, size=2, replace=False)
    docs.append({"id": f"f{i}", "collection": "care", "text": f"nurse {s1} {s2} {rng.choice(FILL)}."})
for i in range(1500):
    s1, s2 = rng.choice(MASC, size=2, replace=False)
    docs.append({"id": f"m{i}", "collection": "work", "text": f"{s1} {s2} {rng.choice(FILL)} {rng.choice(FILL)}."})

corpus = ingest_text("\n".join(json.dumps(d) for d in docs))
print(f"corpus: {len(corpus.docs)} docs, {corpus.total_tokens} tokens")

# -- frequency view ---------------------------------------------------------------

freq = corpus.frequency("nurse")
print(f"\n'nurse': count {freq.total_count}, frequency rank {freq.rank}")
for c in freq.per_collection:
    print(f"  {c.collection:5s} {c.count:5d} ({c.percent:.1f}%)")

# -- concordance: seeded, so a report can reproduce the sample -----------------------

print("\nthree sentences containing 'nurse' (seed 42):")
for line in corpus.concordance("nurse", max_lines=3, seed=42):
    print(f"  [{line.collection}] {line.sentence}")

# -- train count-based vectors --------------------------------------------------------

cfg = TrainerConfig(window=4, min_count=5, dim=30, seed=0)
trained = train(corpus, cfg, store_id="from-corpus")
store = trained.store
print(f"\ntrained {len(store)} vectors, dim {store.dim}")

print("nearest to 'nurse' in the trained space:")
for n in store.nearest("nurse", 4):
    print(f"  {n.token:8s} {n.similarity:+.3f}")

# -- the planted skew is visible as a bias score ----------------------------------------

space = build_space(store, WordList("fem", tuple(FEM)), WordList("masc", tuple(MASC)))
score = score_words(space, ["nurse"]).scores[0].score
print(f"\nbias score of 'nurse' (positive = feminine side): {score:+.3f}")
assert score > 0, "planted skew should pull the probe toward the feminine extreme"
print("sign matches the planted co-occurrence skew")
