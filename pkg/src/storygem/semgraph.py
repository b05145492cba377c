"""k-nearest-neighbor similarity graph over the surviving words.

Each word links to its k most cosine-similar peers; the union of those
directed picks, as an undirected simple graph, is what the clustering stage
consumes. Edge weights are raw cosine values (they can be negative; the
clustering stage shifts them as needed).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .corpus import WordEntry


class TooFewWords(ValueError):
    pass


@dataclass
class SemanticGraph:
    n: int
    k: int
    edges: dict[tuple[int, int], float] = field(default_factory=dict)

    def add_edge(self, i: int, j: int, weight: float) -> None:
        if i == j:
            raise ValueError("self-loops not allowed")
        key = (i, j) if i < j else (j, i)
        self.edges.setdefault(key, weight)

    def has_edge(self, i: int, j: int) -> bool:
        return ((i, j) if i < j else (j, i)) in self.edges

    def degree(self, i: int) -> int:
        return sum(1 for a, b in self.edges if a == i or b == i)

    def adjacency(self) -> list[list[tuple[int, float]]]:
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        for (i, j), w in sorted(self.edges.items()):
            adj[i].append((j, w))
            adj[j].append((i, w))
        return adj

    def to_json(self, labels: list[str] | None = None) -> str:
        def name(i):
            return labels[i] if labels else i

        rows = [
            {"source": name(i), "target": name(j), "weight": w}
            for (i, j), w in sorted(self.edges.items())
        ]
        return json.dumps(rows, ensure_ascii=False)


def knn_graph(entries: list[WordEntry], k: int) -> SemanticGraph:
    """Union of every node's k best-similarity picks (ties to the lower index).
    k is clamped to n-1; duplicate undirected edges keep a single weight."""
    n = len(entries)
    if n < 2:
        raise TooFewWords(f"need at least 2 words, got {n}")
    if k < 1:
        raise ValueError("k must be >= 1")
    k = min(k, n - 1)

    vectors = np.array([e.vector for e in entries], dtype=np.float64)
    if vectors.ndim != 2 or vectors.shape[0] != n:
        raise ValueError("entries must carry vectors of equal dimension")
    norms = np.linalg.norm(vectors, axis=1, keepdims=True)
    unit = vectors / norms
    sim = np.clip(unit @ unit.T, -1.0, 1.0)

    graph = SemanticGraph(n=n, k=k)
    for i in range(n):
        row = sim[i]
        # sort by similarity descending, index ascending on ties; skip self
        order = sorted((j for j in range(n) if j != i), key=lambda j: (-row[j], j))
        for j in order[:k]:
            graph.add_edge(i, j, float(sim[min(i, j), max(i, j)]))
    return graph
