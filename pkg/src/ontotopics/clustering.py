"""Hierarchical partitioning of predicates by k-means over similarity rows.

A node's feature space is the similarity matrix restricted to its member
rows and columns; dissimilarity for silhouette scoring is 1 - sm. Each
node sweeps k = 2 .. min(10, members - 1), clusters with seeded Lloyd
iterations (10 restarts, best within-cluster sum of squares kept), and
scores the candidate partition with the size-weighted mean silhouette
width. The best k wins (ties go to the smallest k) and the node splits
only when that score reaches the alpha threshold and the node has at
least four members.

Node ids are T{depth}_{index}, numbered left to right across each depth
in creation order. Level shapes count the leaf frontier per depth, so a
leaf created at depth 2 still counts in the depth-3 frontier.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .similarity import SimilarityMatrix

MAX_SWEEP_K = 10
MIN_SPLIT_MEMBERS = 4
KMEANS_RESTARTS = 10
KMEANS_MAX_ITER = 100


@dataclass
class ClusterAssignment:
    members: list[int]  # global predicate indices, row order of the features
    k: int
    labels: np.ndarray  # labels[i] is the cluster of members[i]
    wcss: float

    def clusters(self) -> list[list[int]]:
        """Member indices per cluster, ordered by first appearance."""
        order: list[int] = []
        seen: set[int] = set()
        for lab in self.labels:
            if int(lab) not in seen:
                seen.add(int(lab))
                order.append(int(lab))
        return [
            [m for m, lab in zip(self.members, self.labels) if int(lab) == c]
            for c in order
        ]


@dataclass
class SilhouetteReport:
    widths: dict[int, float]  # per member index
    cluster_means: list[float]
    cluster_sizes: list[int]


@dataclass
class OptimalSplit:
    k: int
    nsw: float
    assignment: ClusterAssignment
    report: SilhouetteReport


@dataclass
class TopicNode:
    id: str
    predicates: list[str]
    mean_sw: float
    chosen_k: int | None = None
    contribution: float = 1.0
    children: list["TopicNode"] = field(default_factory=list)

    def is_leaf(self) -> bool:
        return not self.children


@dataclass
class TopicHierarchy:
    root: TopicNode
    alpha: float
    seed: int

    def nodes(self) -> list[TopicNode]:
        out = []
        queue = [self.root]
        while queue:
            node = queue.pop(0)
            out.append(node)
            queue.extend(node.children)
        return out

    def node(self, node_id: str) -> TopicNode:
        for n in self.nodes():
            if n.id == node_id:
                return n
        raise KeyError(node_id)

    def leaves(self) -> list[TopicNode]:
        return [n for n in self.nodes() if n.is_leaf()]

    def levels(self) -> list[list[str]]:
        """Leaf frontier per depth: unsplit nodes persist into deeper levels."""
        out: list[list[str]] = []
        frontier = [self.root]
        while any(not n.is_leaf() for n in frontier):
            nxt: list[TopicNode] = []
            for n in frontier:
                nxt.extend(n.children if n.children else [n])
            out.append([n.id for n in nxt])
            frontier = nxt
        return out

    def shape(self) -> str:
        levels = self.levels()
        if not levels:
            return "1"
        return ":".join(str(len(level)) for level in levels)


def _seed_entropy(seed) -> list[int]:
    if isinstance(seed, (list, tuple)):
        return [int(s) for s in seed]
    return [int(seed)]


def kmeans_assign(sm: SimilarityMatrix, members: list[int], k: int, seed=0) -> ClusterAssignment:
    """Lloyd's k-means on similarity rows restricted to the member columns.

    Random-member initialization, Euclidean distance, nearest-centroid
    ties to the lowest cluster id, empty clusters reseeded with the point
    farthest from its centroid. Runs KMEANS_RESTARTS restarts with seeds
    derived from ``seed`` and keeps the assignment with the lowest
    within-cluster sum of squares (first restart wins ties).
    """
    n = len(members)
    if not 2 <= k <= n:
        raise ValueError(f"k must be in [2, {n}], got {k}")
    features = sm.values[np.ix_(members, members)]
    entropy = _seed_entropy(seed)

    best: ClusterAssignment | None = None
    for restart in range(KMEANS_RESTARTS):
        rng = np.random.default_rng(entropy + [restart])
        centroids = features[rng.choice(n, size=k, replace=False)].copy()
        labels = np.full(n, -1)
        for _ in range(KMEANS_MAX_ITER):
            diffs = features[:, None, :] - centroids[None, :, :]
            dist2 = (diffs * diffs).sum(axis=2)
            new_labels = dist2.argmin(axis=1)
            for cluster in range(k):
                if (new_labels == cluster).any():
                    continue
                point_d2 = dist2[np.arange(n), new_labels]
                farthest = int(point_d2.argmax())
                new_labels[farthest] = cluster
                centroids[cluster] = features[farthest]
            if (new_labels == labels).all():
                break
            labels = new_labels
            for cluster in range(k):
                mask = labels == cluster
                if mask.any():
                    centroids[cluster] = features[mask].mean(axis=0)
        diffs = features - centroids[labels]
        wcss = float((diffs * diffs).sum())
        if best is None or wcss < best.wcss:
            best = ClusterAssignment(list(members), k, labels.copy(), wcss)
    assert best is not None
    return best


def silhouette(sm: SimilarityMatrix, clusters: list[list[int]]) -> SilhouetteReport:
    """Silhouette widths over sibling clusters with dissimilarity 1 - sm.

    sw = (b - a) / max(a, b) where a is the mean dissimilarity to
    co-members and b the smallest mean dissimilarity to another sibling
    cluster; members of singleton clusters score 0.
    """
    dissim = 1.0 - sm.values
    widths: dict[int, float] = {}
    cluster_means: list[float] = []
    cluster_sizes: list[int] = []
    for ci, cluster in enumerate(clusters):
        values = []
        for p in cluster:
            if len(cluster) == 1:
                widths[p] = 0.0
                values.append(0.0)
                continue
            a = float(np.mean([dissim[p, q] for q in cluster if q != p]))
            b = np.inf
            for cj, other in enumerate(clusters):
                if cj == ci or not other:
                    continue
                b = min(b, float(np.mean([dissim[p, q] for q in other])))
            if b == np.inf or max(a, b) == 0.0:
                sw = 0.0
            else:
                sw = (b - a) / max(a, b)
            widths[p] = sw
            values.append(sw)
        cluster_means.append(float(np.mean(values)) if values else 0.0)
        cluster_sizes.append(len(cluster))
    return SilhouetteReport(widths, cluster_means, cluster_sizes)


def neighborhood_sw(cluster_sws: list[float], sizes: list[int]) -> float:
    """Size-weighted mean of per-cluster silhouette widths."""
    if len(cluster_sws) != len(sizes):
        raise ValueError("cluster widths and sizes must align")
    total = sum(sizes)
    if total == 0:
        raise ValueError("no members")
    return sum(sw * n for sw, n in zip(cluster_sws, sizes)) / total


def optimal_k(sm: SimilarityMatrix, members: list[int], seed=0) -> OptimalSplit:
    """Sweep k and keep the partition with the best neighbourhood width.

    k runs from 2 to min(10, members - 1); ties on the score go to the
    smallest k. Requires at least MIN_SPLIT_MEMBERS members.
    """
    n = len(members)
    if n < MIN_SPLIT_MEMBERS:
        raise ValueError(f"need at least {MIN_SPLIT_MEMBERS} members, got {n}")
    best: OptimalSplit | None = None
    for k in range(2, min(MAX_SWEEP_K, n - 1) + 1):
        assignment = kmeans_assign(sm, members, k, seed)
        report = silhouette(sm, assignment.clusters())
        nsw = neighborhood_sw(report.cluster_means, report.cluster_sizes)
        if best is None or nsw > best.nsw:
            best = OptimalSplit(k, nsw, assignment, report)
    assert best is not None
    return best


def build_hierarchy(sm: SimilarityMatrix, alpha: float = 0.5, seed: int = 0) -> TopicHierarchy:
    """Split nodes breadth-first while the best split scores at least alpha.

    Children are ordered by their smallest member index and take ids
    T{depth}_{index}; the index runs left to right across the whole
    depth. Deterministic for a fixed (sm, alpha, seed): per-node k-means
    seeds derive from the run seed and the node's creation counter.
    """
    n = len(sm.predicates)
    if n == 0:
        raise ValueError("similarity matrix has no predicates")
    root = TopicNode(id="root", predicates=list(sm.predicates), mean_sw=0.0)
    counter = 0
    frontier: list[tuple[TopicNode, list[int]]] = [(root, list(range(n)))]
    depth = 0
    while frontier:
        depth += 1
        next_frontier: list[tuple[TopicNode, list[int]]] = []
        index_at_depth = 0
        for node, members in frontier:
            if len(members) < MIN_SPLIT_MEMBERS:
                continue
            split = optimal_k(sm, members, seed=(seed, counter))
            counter += 1
            if split.nsw < alpha:
                continue
            node.chosen_k = split.k
            clusters = split.assignment.clusters()
            order = sorted(range(len(clusters)), key=lambda c: min(clusters[c]))
            for c in order:
                cluster_members = sorted(clusters[c])
                index_at_depth += 1
                child = TopicNode(
                    id=f"T{depth}_{index_at_depth}",
                    predicates=[sm.predicates[m] for m in cluster_members],
                    mean_sw=split.report.cluster_means[c],
                    contribution=len(cluster_members) / len(members),
                )
                node.children.append(child)
                next_frontier.append((child, cluster_members))
        frontier = next_frontier
    return TopicHierarchy(root, alpha, seed)


def serialize_hierarchy(h: TopicHierarchy) -> dict:
    """JSON-ready nested records with a stable field order."""

    def node_dict(node: TopicNode) -> dict:
        return {
            "id": node.id,
            "predicates": list(node.predicates),
            "mean_sw": node.mean_sw,
            "chosen_k": node.chosen_k,
            "contribution": node.contribution,
            "children": [node_dict(c) for c in node.children],
        }

    return {
        "alpha": h.alpha,
        "seed": h.seed,
        "shape": h.shape(),
        "root": node_dict(h.root),
    }


def parse_hierarchy(data: dict) -> TopicHierarchy:
    def node_from(d: dict) -> TopicNode:
        return TopicNode(
            id=d["id"],
            predicates=list(d["predicates"]),
            mean_sw=float(d["mean_sw"]),
            chosen_k=d.get("chosen_k"),
            contribution=float(d.get("contribution", 1.0)),
            children=[node_from(c) for c in d.get("children", [])],
        )

    return TopicHierarchy(node_from(data["root"]), float(data["alpha"]), int(data["seed"]))
