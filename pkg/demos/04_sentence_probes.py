"""Sentence-level probes with an n-gram scorer: blank filling and pair preference.

Trains a small add-k trigram model on a synthetic corpus, then asks it
two kinds of question: which word best fills a blank (closed and open
candidate sets), and which of two sentences it prefers.
"""

import json

import numpy as np

from biaslens.corpus import ingest_text
from biaslens.lm import BlankQuery, PairQuery, compare_pair, rank_blank, train_lm

# -- corpus where cats sleep and dogs run ------------------------------------------

rng = np.random.default_rng(9)
templates = [
    "the cat sleeps on the mat",
    "the cat sleeps near the fire",
    "the dog runs in the park",
    "the dog runs after the ball",
    "a bird sings in the tree",
]
docs = [
    {"id": f"d{i}", "collection": "tales", "text": templates[int(rng.integers(len(templates)))] + "."}
    for i in range(400)
]
corpus = ingest_text("\n".join(json.dumps(d) for d in docs))

lm = train_lm(corpus, order=3, k=0.5)
print(f"trigram model over {len(lm.vocab)} words (add-k, k={lm.k})")

# -- closed candidate set: rank every candidate, best first --------------------------

query = BlankQuery(template="the * sleeps on the mat", candidates=("cat", "dog", "bird"))
print(f"\nfill 'the * sleeps on the mat' from {list(query.candidates)}:")
for r in rank_blank(lm, query):
    print(f"  {r.word:6s} logp {r.log_probability:8.3f}  p {r.probability:.4f}")

best = rank_blank(lm, query)[0].word
assert best == "cat", "corpus regularity should make 'cat' the best filler"

# -- open mode: search the vocabulary, function words filtered out -------------------

open_query = BlankQuery(
    template="the dog * in the park",
    top_n=3,
    exclude_function_words=True,
    language="en",
)
print("\ntop open-vocabulary fillers (function words excluded):")
for r in rank_blank(lm, open_query):
    print(f"  {r.word:6s} logp {r.log_probability:8.3f}")

# -- pair preference: positive means the first sentence fits better ------------------

pair = PairQuery(stereo="the cat sleeps on the mat", anti="the dog sleeps on the mat", tag="demo")
res = compare_pair(lm, pair)
print(f"\npair preference ({res.tag}): {res.preference:+.4f}")
print(f"  first : {res.stereo_score:+.4f} per token")
print(f"  second: {res.anti_score:+.4f} per token")
assert res.preference > 0, "the corpus never shows dogs sleeping, so the first should win"

# swapping the sentences negates the preference exactly
swapped = compare_pair(lm, PairQuery(stereo=pair.anti, anti=pair.stereo, tag="swap"))
assert swapped.preference == -res.preference
print("swap symmetry holds exactly")
