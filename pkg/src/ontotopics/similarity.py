"""Predicate neighbourhood similarity.

Each predicate P gets a concept neighbourhood C(P): every concept that
appears as a domain or a range of P, direction ignored. Two predicates
are adjacent when their neighbourhoods intersect, and hop counts over
that adjacency give the distance matrix. Similarity is then

    shared     PS_s(i,j) = |C(Pi) & C(Pj)|^2 / (|C(Pi)| * |C(Pj)|)
    connection PS_c(i,j) = max product of scores over split points k on
                           a shortest-path decomposition,
                           l(i,k) + l(k,j) = l(i,j)

computed by dynamic programming in increasing distance; a pair at
distance 2 reduces to max_k PS_s(i,k) * PS_s(k,j) over common
neighbours. The combined matrix uses PS_s for the diagonal and adjacent
pairs, PS_c for pairs at distance >= 2, and 0 for unreachable pairs, so
every entry is positive exactly when the pair is connected.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .schema import SchemaGraph


@dataclass
class DistanceMatrix:
    predicates: list[str]
    index: dict[str, int]
    values: np.ndarray  # float64, np.inf for unreachable pairs


@dataclass
class SimilarityMatrix:
    predicates: list[str]
    index: dict[str, int]
    values: np.ndarray  # float64 in [0, 1], symmetric, unit diagonal

    def at(self, pi: str, pj: str) -> float:
        return float(self.values[self.index[pi], self.index[pj]])


def concept_set(g: SchemaGraph, predicate: str) -> set[str]:
    """Concepts appearing as domain or range of the predicate."""
    if predicate not in g.predicates:
        raise KeyError(predicate)
    out: set[str] = set()
    for (c, p) in g.domain_edges:
        if p == predicate:
            out.add(c)
    for (p, c) in g.range_edges:
        if p == predicate:
            out.add(c)
    return out


def _all_concept_sets(g: SchemaGraph) -> dict[str, set[str]]:
    sets: dict[str, set[str]] = {p: set() for p in g.predicates}
    for (c, p) in g.domain_edges:
        sets[p].add(c)
    for (p, c) in g.range_edges:
        sets[p].add(c)
    return sets


def _ordered_predicates(g: SchemaGraph) -> list[str]:
    return sorted(g.predicates)


def distance_matrix(g: SchemaGraph) -> DistanceMatrix:
    """Hop counts over the shared-concept adjacency, BFS per predicate."""
    preds = _ordered_predicates(g)
    index = {p: i for i, p in enumerate(preds)}
    n = len(preds)
    sets = _all_concept_sets(g)

    by_concept: dict[str, list[int]] = {}
    for p, cs in sets.items():
        for c in cs:
            by_concept.setdefault(c, []).append(index[p])
    adjacency: list[set[int]] = [set() for _ in range(n)]
    for members in by_concept.values():
        for i in members:
            for j in members:
                if i != j:
                    adjacency[i].add(j)

    values = np.full((n, n), np.inf)
    for start in range(n):
        values[start, start] = 0.0
        seen = {start}
        queue = deque([(start, 0)])
        while queue:
            node, depth = queue.popleft()
            for nxt in adjacency[node]:
                if nxt not in seen:
                    seen.add(nxt)
                    values[start, nxt] = depth + 1
                    queue.append((nxt, depth + 1))
    return DistanceMatrix(preds, index, values)


def shared_similarity(g: SchemaGraph, pi: str, pj: str) -> float:
    """PS_s for one pair; 1.0 on the diagonal, 0.0 when a set is empty."""
    if pi == pj:
        concept_set(g, pi)  # raise KeyError on unknown predicates
        return 1.0
    a = concept_set(g, pi)
    b = concept_set(g, pj)
    if not a or not b:
        return 0.0
    score = len(a & b) ** 2 / (len(a) * len(b))
    assert score <= 1.0, "shared similarity exceeded its Cauchy-Schwarz bound"
    return score


def _shared_matrix(sets: dict[str, set[str]], preds: list[str]) -> np.ndarray:
    n = len(preds)
    values = np.zeros((n, n))
    sizes = [len(sets[p]) for p in preds]
    for i in range(n):
        values[i, i] = 1.0
        for j in range(i + 1, n):
            if sizes[i] and sizes[j]:
                inter = len(sets[preds[i]] & sets[preds[j]])
                score = inter * inter / (sizes[i] * sizes[j])
                assert score <= 1.0, "shared similarity exceeded its Cauchy-Schwarz bound"
                values[i, j] = values[j, i] = score
    return values


def connection_similarity(distances: DistanceMatrix, shared: np.ndarray) -> np.ndarray:
    """Combined similarity: PS_s at distance <= 1, PS_c beyond, 0 unreachable.

    Processes pairs in increasing distance so each split point's score is
    already final when used; for a pair at distance L every split k with
    l(i,k) + l(k,j) = L lies on some shortest path and both parts are
    strictly shorter than L.
    """
    l = distances.values
    n = len(distances.predicates)
    values = np.where(l <= 1, shared, 0.0)
    finite = [
        (int(l[i, j]), i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if 2 <= l[i, j] < math.inf
    ]
    finite.sort()
    for dist_ij, i, j in finite:
        best = 0.0
        row_i = l[i]
        row_j = l[j]
        for k in range(n):
            if k == i or k == j:
                continue
            lik = row_i[k]
            lkj = row_j[k]
            if lik >= 1 and lkj >= 1 and lik + lkj == dist_ij:
                product = values[i, k] * values[k, j]
                if product > best:
                    best = product
        values[i, j] = values[j, i] = best
    return values


def similarity_matrix(g: SchemaGraph) -> SimilarityMatrix:
    """Full predicate similarity matrix over the schema graph."""
    preds = _ordered_predicates(g)
    if not preds:
        raise ValueError("schema graph has no predicates")
    sets = _all_concept_sets(g)
    distances = distance_matrix(g)
    shared = _shared_matrix(sets, preds)
    values = connection_similarity(distances, shared)
    return SimilarityMatrix(preds, dict(distances.index), values)


def dump_similarity_tsv(sm: SimilarityMatrix) -> str:
    """Header row of predicate IRIs, then one row per predicate, 6 decimals."""
    lines = ["predicate\t" + "\t".join(sm.predicates)]
    for i, p in enumerate(sm.predicates):
        cells = "\t".join(f"{v:.6f}" for v in sm.values[i])
        lines.append(f"{p}\t{cells}")
    return "\n".join(lines) + "\n"


def load_similarity_tsv(text: str) -> SimilarityMatrix:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty similarity table")
    header = lines[0].split("\t")
    preds = header[1:]
    n = len(preds)
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} rows, got {len(lines) - 1}")
    values = np.zeros((n, n))
    for i, line in enumerate(lines[1:]):
        parts = line.split("\t")
        if len(parts) != n + 1:
            raise ValueError(f"row {i + 1}: expected {n + 1} fields, got {len(parts)}")
        if parts[0] != preds[i]:
            raise ValueError(f"row {i + 1}: predicate {parts[0]!r} does not match header")
        values[i] = [float(v) for v in parts[1:]]
    return SimilarityMatrix(preds, {p: i for i, p in enumerate(preds)}, values)
