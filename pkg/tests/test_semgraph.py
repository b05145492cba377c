import json

import numpy as np
import pytest

from storygem.corpus import WordEntry
from storygem.embeddings import cosine
from storygem.semgraph import SemanticGraph, TooFewWords, knn_graph


def entries_from(vectors):
    return [
        WordEntry(surface=f"w{i}", count=1, vector=np.array(v, dtype=float))
        for i, v in enumerate(vectors)
    ]


def test_three_words_k1():
    # pairwise-distinct similarities; each node linked to its best neighbor
    ents = entries_from([[1, 0], [0.9, 0.1], [0, 1]])
    g = knn_graph(ents, 1)
    assert 2 <= len(g.edges) <= 3
    assert g.has_edge(0, 1)  # mutual best pair


def test_two_words_k_clamped():
    ents = entries_from([[1, 0], [0, 1]])
    g = knn_graph(ents, 3)
    assert len(g.edges) == 1
    assert g.k == 1


def test_too_few_words():
    with pytest.raises(TooFewWords):
        knn_graph(entries_from([[1, 0]]), 1)


def test_matches_brute_force_union():
    rng = np.random.default_rng(99)
    vecs = rng.normal(size=(10, 8))
    vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
    ents = entries_from(vecs)
    k = 3
    g = knn_graph(ents, k)

    expected = set()
    for i in range(10):
        sims = sorted(
            ((cosine(vecs[i], vecs[j]), -j) for j in range(10) if j != i),
            reverse=True,
        )
        for s, negj in sims[:k]:
            j = -negj
            expected.add((min(i, j), max(i, j)))
    assert set(g.edges) == expected


def test_edge_weights_are_cosines():
    rng = np.random.default_rng(4)
    vecs = rng.normal(size=(6, 5))
    ents = entries_from(vecs)
    g = knn_graph(ents, 2)
    for (i, j), w in g.edges.items():
        assert w == pytest.approx(cosine(vecs[i], vecs[j]), abs=1e-9)


def test_symmetry_and_no_self_loops():
    rng = np.random.default_rng(17)
    ents = entries_from(rng.normal(size=(8, 4)))
    g = knn_graph(ents, 2)
    for i, j in g.edges:
        assert i < j
        assert g.has_edge(j, i)


def test_monotone_in_k():
    rng = np.random.default_rng(23)
    ents = entries_from(rng.normal(size=(12, 6)))
    for k in range(1, 5):
        small = set(knn_graph(ents, k).edges)
        large = set(knn_graph(ents, k + 1).edges)
        assert small <= large


def test_min_degree():
    rng = np.random.default_rng(31)
    ents = entries_from(rng.normal(size=(9, 4)))
    k = 3
    g = knn_graph(ents, k)
    for i in range(9):
        assert g.degree(i) >= min(k, 8)


def test_json_export():
    g = SemanticGraph(n=3, k=1)
    g.add_edge(0, 1, 0.5)
    rows = json.loads(g.to_json(labels=["a", "b", "c"]))
    assert rows == [{"source": "a", "target": "b", "weight": 0.5}]
