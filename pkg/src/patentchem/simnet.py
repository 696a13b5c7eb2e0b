"""Compound similarity networks and per-node network features."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, fields
from typing import Mapping, Sequence

import numpy as np

from .molfeat import Fingerprint, tanimoto_matrix

CUTOFF_GRID = (0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
PAGERANK_DAMPING = 0.85
PAGERANK_MAX_ITER = 1000
PAGERANK_TOL = 1e-10


@dataclass(frozen=True)
class SimilarityGraph:
    """Undirected graph with an edge wherever Tanimoto >= ``cutoff``.

    Edges are stored as id pairs in lexicographic order.
    """

    cutoff: float
    node_ids: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    similarity: Mapping[tuple[str, str], float] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not 0.0 <= self.cutoff <= 1.0:
            raise ValueError("cutoff must lie in [0, 1]")
        if len(set(self.node_ids)) != len(self.node_ids):
            raise ValueError("node ids must be unique")
        known = set(self.node_ids)
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self edge on {a}")
            if a > b or a not in known or b not in known:
                raise ValueError(f"malformed edge {(a, b)}")

    def neighbors(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {n: [] for n in self.node_ids}
        for a, b in self.edges:
            out[a].append(b)
            out[b].append(a)
        return out


def _edge(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a < b else (b, a)


def graph_from_matrix(node_ids: Sequence[str], sim: np.ndarray, cutoff: float) -> SimilarityGraph:
    ids = tuple(node_ids)
    iu, ju = np.nonzero(np.triu(sim >= cutoff, k=1))
    edges = {}
    for i, j in zip(iu.tolist(), ju.tolist()):
        edges[_edge(ids[i], ids[j])] = float(sim[i, j])
    return SimilarityGraph(float(cutoff), ids, frozenset(edges), edges)


def build_graph(fps: Mapping[str, Fingerprint], cutoff: float) -> SimilarityGraph:
    if not fps:
        raise ValueError("at least one compound is required")
    ids = list(fps)
    return graph_from_matrix(ids, tanimoto_matrix([fps[k] for k in ids]), cutoff)


def build_graphs(fps: Mapping[str, Fingerprint], cutoffs: Sequence[float] = CUTOFF_GRID) -> list[SimilarityGraph]:
    """One graph per cutoff, sharing a single similarity matrix."""
    if not fps:
        raise ValueError("at least one compound is required")
    ids = list(fps)
    sim = tanimoto_matrix([fps[k] for k in ids])
    return [graph_from_matrix(ids, sim, c) for c in cutoffs]


def adjacency(g: SimilarityGraph) -> np.ndarray:
    """Binary symmetric matrix aligned to ``g.node_ids``."""
    pos = {n: i for i, n in enumerate(g.node_ids)}
    mat = np.zeros((len(pos), len(pos)), dtype=np.uint8)
    for a, b in g.edges:
        mat[pos[a], pos[b]] = mat[pos[b], pos[a]] = 1
    return mat


def edges_from_adjacency(node_ids: Sequence[str], mat: np.ndarray) -> frozenset[tuple[str, str]]:
    iu, ju = np.nonzero(np.triu(mat, k=1))
    return frozenset(_edge(node_ids[i], node_ids[j]) for i, j in zip(iu.tolist(), ju.tolist()))


def dump_edges(g: SimilarityGraph) -> str:
    """Edge list, one ``id_a<TAB>id_b<TAB>similarity`` line per edge, sorted."""
    lines = []
    for a, b in sorted(g.edges):
        sim = g.similarity.get((a, b))
        lines.append(f"{a}\t{b}\t{'' if sim is None else repr(sim)}")
    return "\n".join(lines) + ("\n" if lines else "")


def load_edges(text: str) -> list[tuple[str, str, float]]:
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        a, b, s = line.split("\t")
        out.append((a, b, float(s)))
    return out


@dataclass(frozen=True)
class NodeFeatures:
    degree: int
    degree_centrality: float
    clustering_coefficient: float
    betweenness: float
    component_size: int
    pagerank_score: float

    @classmethod
    def names(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(float(getattr(self, name)) for name in self.names())


NETWORK_FEATURE_NAMES = NodeFeatures.names()


def _betweenness(adj: list[list[int]]) -> np.ndarray:
    # Brandes, unweighted
    n = len(adj)
    cb = np.zeros(n)
    for s in range(n):
        stack = []
        preds: list[list[int]] = [[] for _ in range(n)]
        sigma = np.zeros(n)
        sigma[s] = 1.0
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = np.zeros(n)
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                cb[w] += delta[w]
    # each unordered pair was counted from both endpoints
    cb /= 2.0
    if n > 2:
        cb *= 2.0 / ((n - 1) * (n - 2))
    else:
        cb[:] = 0.0
    return cb


def _clustering(adj: list[list[int]]) -> np.ndarray:
    sets = [set(a) for a in adj]
    out = np.zeros(len(adj))
    for v, nbrs in enumerate(adj):
        k = len(nbrs)
        if k < 2:
            continue
        links = sum(1 for i, a in enumerate(nbrs) for b in nbrs[i + 1:] if b in sets[a])
        out[v] = 2.0 * links / (k * (k - 1))
    return out


def _pagerank(adj: list[list[int]]) -> np.ndarray:
    n = len(adj)
    deg = np.array([len(a) for a in adj], dtype=float)
    rank = np.full(n, 1.0 / n)
    dangling = deg == 0
    src = np.array([v for v, a in enumerate(adj) for _ in a], dtype=int)
    dst = np.array([w for a in adj for w in a], dtype=int)
    for _ in range(PAGERANK_MAX_ITER):
        share = np.zeros(n)
        if src.size:
            np.add.at(share, dst, rank[src] / deg[src])
        new = (1.0 - PAGERANK_DAMPING) / n + PAGERANK_DAMPING * (share + rank[dangling].sum() / n)
        delta = np.abs(new - rank).sum()
        rank = new
        if delta < PAGERANK_TOL:
            break
    return rank / rank.sum()


def network_features(g: SimilarityGraph) -> dict[str, NodeFeatures]:
    """Degree, centralities, clustering, component size and PageRank per node."""
    ids = g.node_ids
    n = len(ids)
    pos = {k: i for i, k in enumerate(ids)}
    adj: list[list[int]] = [[] for _ in ids]
    for a, b in sorted(g.edges):
        adj[pos[a]].append(pos[b])
        adj[pos[b]].append(pos[a])
    comp = [0] * n
    label = [-1] * n
    for s in range(n):
        if label[s] >= 0:
            continue
        members = [s]
        label[s] = s
        k = 0
        while k < len(members):
            for w in adj[members[k]]:
                if label[w] < 0:
                    label[w] = s
                    members.append(w)
            k += 1
        for m in members:
            comp[m] = len(members)
    bet = _betweenness(adj)
    clus = _clustering(adj)
    pr = _pagerank(adj)
    return {
        node: NodeFeatures(
            degree=len(adj[i]),
            degree_centrality=len(adj[i]) / (n - 1) if n > 1 else 0.0,
            clustering_coefficient=float(clus[i]),
            betweenness=float(bet[i]),
            component_size=comp[i],
            pagerank_score=float(pr[i]),
        )
        for i, node in enumerate(ids)
    }
