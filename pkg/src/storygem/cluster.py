"""Seeded Louvain community detection and the layout hierarchy it feeds.

Modularity assumes nonnegative edge weights, so cosine weights are shifted
(minimum to zero) when negatives are present; the shift preserves similarity
order. The only randomness is the node traversal order inside each local-move
pass, driven by the pinned seed, so a fixed seed reproduces the partition
exactly. The final (coarsest) level becomes a two-level hierarchy:
root -> communities -> word leaves.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field

from .corpus import WordEntry
from .semgraph import SemanticGraph

WEIGHT_RULES = {
    "linear": lambda c: float(c),
    "sqrt": lambda c: math.sqrt(c),
}


@dataclass(frozen=True)
class LouvainConfig:
    seed: int = 42
    resolution: float = 1.0
    weight_shift: str = "shift-min-to-zero"

    def __post_init__(self):
        if self.resolution <= 0:
            raise ValueError("resolution must be positive")
        if self.weight_shift not in ("shift-min-to-zero", "none"):
            raise ValueError(f"unknown weight shift {self.weight_shift!r}")


def _shifted_edges(graph: SemanticGraph, rule: str) -> list[tuple[int, int, float]]:
    edges = [(i, j, w) for (i, j), w in sorted(graph.edges.items())]
    if rule == "shift-min-to-zero" and edges:
        low = min(w for _, _, w in edges)
        if low < 0:
            edges = [(i, j, w - low) for i, j, w in edges]
    return edges


def _one_level(n, adj, degrees, total_weight, resolution, rng):
    """Local-move phase: sweep nodes in seeded shuffled order, greedily moving
    each to the neighboring community with the best modularity gain, until a
    full pass makes no move. Returns (community labels, improved flag)."""
    comm = list(range(n))
    comm_tot = degrees[:]
    m2 = 2.0 * total_weight

    order = list(range(n))
    improved = False
    moved = True
    while moved:
        moved = False
        rng.shuffle(order)
        for node in order:
            cur = comm[node]
            k_i = degrees[node]
            comm_tot[cur] -= k_i

            # total edge weight from node into each adjacent community
            # (self-loops move with the node, so they are not links)
            links: dict[int, float] = {}
            for nbr, w in adj[node]:
                if nbr != node:
                    links[comm[nbr]] = links.get(comm[nbr], 0.0) + w

            best_comm = cur
            best_gain = links.get(cur, 0.0) - resolution * comm_tot[cur] * k_i / m2
            for cand in sorted(links):
                if cand == cur:
                    continue
                gain = links[cand] - resolution * comm_tot[cand] * k_i / m2
                if gain > best_gain + 1e-12 or (
                    gain > best_gain - 1e-12 and cand < best_comm
                ):
                    best_gain = gain
                    best_comm = cand

            comm_tot[best_comm] += k_i
            if best_comm != cur:
                comm[node] = best_comm
                moved = True
                improved = True
    return comm, improved


def _aggregate(n, edges, comm):
    """Collapse communities to single nodes; intra-community weight becomes a
    self-loop. Community ids are relabeled contiguously in node order."""
    relabel: dict[int, int] = {}
    for node in range(n):
        relabel.setdefault(comm[node], len(relabel))
    mapping = [relabel[comm[node]] for node in range(n)]

    agg: dict[tuple[int, int], float] = {}
    for i, j, w in edges:
        a, b = mapping[i], mapping[j]
        key = (a, b) if a <= b else (b, a)
        agg[key] = agg.get(key, 0.0) + w
    new_edges = [(i, j, w) for (i, j), w in sorted(agg.items())]
    return len(relabel), new_edges, mapping


def _build_adjacency(n, edges):
    adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    degrees = [0.0] * n
    total = 0.0
    for i, j, w in edges:
        total += w
        if i == j:
            adj[i].append((i, w))
            degrees[i] += 2.0 * w
        else:
            adj[i].append((j, w))
            adj[j].append((i, w))
            degrees[i] += w
            degrees[j] += w
    return adj, degrees, total


def louvain(graph: SemanticGraph, config: LouvainConfig = LouvainConfig()) -> list[int]:
    """Partition of the graph nodes; returns a contiguous community id per node
    for the final (coarsest) Louvain level."""
    if graph.n == 0:
        return []
    rng = random.Random(config.seed)
    edges = _shifted_edges(graph, config.weight_shift)

    n = graph.n
    labels = list(range(n))
    while True:
        adj, degrees, total = _build_adjacency(n, edges)
        if total <= 0.0:
            break
        comm, improved = _one_level(n, adj, degrees, total, config.resolution, rng)
        if not improved:
            break
        new_n, new_edges, mapping = _aggregate(n, edges, comm)
        labels = [mapping[labels[v]] for v in range(len(labels))]
        if new_n == n or new_n == 1:
            break
        n, edges = new_n, new_edges

    # contiguous ids in first-appearance order over the original nodes
    relabel: dict[int, int] = {}
    out = []
    for lab in labels:
        relabel.setdefault(lab, len(relabel))
        out.append(relabel[lab])
    return out


def modularity(graph: SemanticGraph, partition: list[int], resolution: float = 1.0,
               weight_shift: str = "shift-min-to-zero") -> float:
    """Modularity of a partition under the same shifted weights Louvain uses."""
    edges = _shifted_edges(graph, weight_shift)
    _, degrees, total = _build_adjacency(graph.n, edges)
    if total <= 0:
        return 0.0
    m2 = 2.0 * total
    intra = sum(w for i, j, w in edges if partition[i] == partition[j])
    by_comm: dict[int, float] = {}
    for node, deg in enumerate(degrees):
        by_comm[partition[node]] = by_comm.get(partition[node], 0.0) + deg
    null = sum(d * d for d in by_comm.values()) / (m2 * m2)
    return 2.0 * intra / m2 - resolution * null


def partition_to_json(partition: list[int], entries: list[WordEntry]) -> str:
    return json.dumps(
        {e.surface: int(c) for e, c in zip(entries, partition)}, ensure_ascii=False
    )


@dataclass
class ClusterNode:
    """Hierarchy node: internal nodes carry children, leaves carry the word."""

    weight: float
    children: list["ClusterNode"] = field(default_factory=list)
    word_index: int | None = None
    color_index: int | None = None

    @property
    def is_leaf(self) -> bool:
        return self.word_index is not None


@dataclass
class ClusterTree:
    root: ClusterNode
    weighting: str

    def leaves(self) -> list[ClusterNode]:
        out = []

        def walk(node):
            if node.is_leaf:
                out.append(node)
            for child in node.children:
                walk(child)

        walk(self.root)
        return out


def build_tree(
    partition: list[int], entries: list[WordEntry], weighting: str = "linear"
) -> ClusterTree:
    """Two-level tree root -> communities -> words. Leaf weight maps the word
    count through the weighting rule; colors follow community id order."""
    if len(partition) != len(entries):
        raise ValueError("partition must cover all entries")
    try:
        rule = WEIGHT_RULES[weighting]
    except KeyError:
        raise ValueError(f"unknown weighting rule {weighting!r}") from None

    by_comm: dict[int, list[int]] = {}
    for idx, comm in enumerate(partition):
        by_comm.setdefault(comm, []).append(idx)

    clusters = []
    for comm_id in sorted(by_comm):
        leaves = [
            ClusterNode(weight=rule(entries[i].count), word_index=i)
            for i in by_comm[comm_id]
        ]
        clusters.append(
            ClusterNode(
                weight=sum(leaf.weight for leaf in leaves),
                children=leaves,
                color_index=comm_id,
            )
        )
    root = ClusterNode(weight=sum(c.weight for c in clusters), children=clusters)
    return ClusterTree(root=root, weighting=weighting)
