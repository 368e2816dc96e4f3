"""Define bias spaces from seed word lists and score words against them.

Shows the centroid-difference and paired-difference constructions, the
sign convention (positive means closer to the first extreme), pairwise
asymmetry, and the 2-space view used for intersectional plots.
"""

import numpy as np

from biaslens.bias import (
    WordList,
    build_space,
    diagnose_list,
    pair_asymmetry,
    score_words,
    score_words_2spaces,
)
from biaslens.embeddings import EmbeddingStore

# -- a vocabulary with planted structure ---------------------------------------

rng = np.random.default_rng(11)
fem_axis = np.array([1.0, 0.0, 0.0, 0.0, 0.0])
age_axis = np.array([0.0, 1.0, 0.0, 0.0, 0.0])


def planted(fem: float, age: float) -> np.ndarray:
    return fem * fem_axis + age * age_axis + 0.05 * rng.standard_normal(5)


vectors = {
    "she": planted(+1.0, 0.0), "her": planted(+0.9, 0.0),
    "woman": planted(+0.8, 0.1), "he": planted(-1.0, 0.0),
    "him": planted(-0.9, 0.0), "man": planted(-0.8, 0.1),
    "old": planted(0.0, +1.0), "elderly": planted(0.0, +0.9),
    "young": planted(0.0, -1.0), "youthful": planted(0.0, -0.9),
    "nurse": planted(+0.5, 0.2), "engineer": planted(-0.4, -0.1),
    "wise": planted(0.0, +0.6), "agile": planted(0.1, -0.5),
    "table": planted(0.0, 0.0),
}
store = EmbeddingStore("planted", list(vectors), np.array(list(vectors.values())))

feminine = WordList("feminine", ("she", "her", "woman"))
masculine = WordList("masculine", ("he", "him", "man"))

# -- centroid difference --------------------------------------------------------

space = build_space(store, feminine, masculine)
print(f"space key: {space.key}")
print("score > 0 means closer to", space.extreme_a.name)

report = score_words(space, ["nurse", "engineer", "table", "ghostword"])
for s in report.scores:
    print(f"  {s.token:10s} {s.score:+.3f}")
print("  not in vocabulary:", list(report.missing))

# -- the paired construction uses matched word pairs ------------------------------

paired = build_space(store, feminine, masculine, method="pca-pairs")
agreement = float(np.dot(space.direction, paired.direction))
print(f"\npca-pairs direction agrees with centroid-diff: cosine {agreement:+.3f}")

# -- asymmetry inside a pair -------------------------------------------------------

pairs = pair_asymmetry(space, [("she", "he"), ("woman", "man")])
print("\npair asymmetries (score_a + score_b, 0 means symmetric placement):")
for p in pairs.pairs:
    print(f"  {p.word_a}/{p.word_b}: {p.asymmetry:+.3f}")

# -- two spaces at once: the 4-extreme view ------------------------------------------

older = WordList("older", ("old", "elderly"))
younger = WordList("younger", ("young", "youthful"))
age_space = build_space(store, older, younger)

points = score_words_2spaces(space, age_space, ["nurse", "engineer", "wise", "agile"])
print("\n(word, feminine axis, older axis):")
for p in points.points:
    print(f"  {p.token:9s} x={p.x:+.3f} y={p.y:+.3f}")

# -- seed list health ------------------------------------------------------------------

diag = diagnose_list(WordList("probe", ("she", "woman", "ghostword")), store)
print(f"\nseed diagnostics: oov rate {diag.oov_rate:.2f}")
for w in diag.per_word:
    flag = "OOV" if w.oov else f"dispersion {w.dispersion:+.2f}"
    print(f"  {w.word:10s} {flag}")
