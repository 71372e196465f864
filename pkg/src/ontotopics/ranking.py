"""Degree indexes, top-k lists and the five-criteria topic ranking.

A predicate's in-degree counts its distinct domain pairs, its out-degree
its distinct range pairs, and pio is their sum, so summing pio over all
predicates gives the schema edge count. A concept's degree counts the
distinct predicates incident to it in either role.

Leaf topics are ranked on five criteria: membership in the global top-20
predicate list, membership in the global top-20 concept list (concepts
shared between topics are credited only to the topic where their
within-topic degree is highest), mean pairwise similarity, mean
silhouette width from the hierarchy, and subgraph density. Each
criterion is converted to a competition rank (ties share the better
rank, "1224"), the overall score is the mean of the five ranks, and the
final order breaks overall ties by the similarity rank and then the
topic id.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clustering import TopicHierarchy, TopicNode
from .schema import SchemaGraph, StatsReport, induced_subgraph, schema_stats
from .similarity import SimilarityMatrix


@dataclass
class DegreeIndex:
    predicate: dict[str, tuple[int, int, int]]  # iri -> (in, out, pio)
    concept: dict[str, int]  # iri -> degree

    def pio(self, predicate: str) -> int:
        return self.predicate[predicate][2]


@dataclass
class TopKList:
    kind: str  # "predicate" or "concept"
    entries: list[tuple[str, int]]  # (iri, score), descending
    credited: dict[str, str] | None = None  # concept -> topic id, dedup mode only


@dataclass
class TopicMeasures:
    mean_similarity: float
    mean_sw: float
    stats: StatsReport


@dataclass
class TopicRankRow:
    topic_id: str
    top_predicates_rank: int
    top_concepts_rank: int
    similarity_rank: int
    silhouette_rank: int
    density_rank: int
    overall: float
    final_position: int


def io_degrees(g: SchemaGraph) -> DegreeIndex:
    pred_in: dict[str, int] = {p: 0 for p in g.predicates}
    pred_out: dict[str, int] = {p: 0 for p in g.predicates}
    concept_preds: dict[str, set[str]] = {c: set() for c in g.concepts}
    for (c, p) in g.domain_edges:
        pred_in[p] += 1
        concept_preds[c].add(p)
    for (p, c) in g.range_edges:
        pred_out[p] += 1
        concept_preds[c].add(p)
    predicate = {
        p: (pred_in[p], pred_out[p], pred_in[p] + pred_out[p]) for p in g.predicates
    }
    concept = {c: len(ps) for c, ps in concept_preds.items()}
    return DegreeIndex(predicate, concept)


def _within_topic_concept_degree(g: SchemaGraph, concept: str, topic_predicates: set[str]) -> int:
    preds: set[str] = set()
    for (c, p) in g.domain_edges:
        if c == concept and p in topic_predicates:
            preds.add(p)
    for (p, c) in g.range_edges:
        if c == concept and p in topic_predicates:
            preds.add(p)
    return len(preds)


def credit_concepts(g: SchemaGraph, leaves: list[TopicNode]) -> dict[str, str]:
    """Assign each concept to the single leaf where it is most connected.

    Concepts typically appear in several topic subgraphs; each is
    credited to the leaf with the highest within-topic degree, ties going
    to the smaller topic id.
    """
    credited: dict[str, tuple[int, str]] = {}
    for leaf in sorted(leaves, key=lambda n: n.id):
        members = set(leaf.predicates)
        sub = induced_subgraph(g, members)
        for concept in sub.concepts:
            degree = _within_topic_concept_degree(g, concept, members)
            current = credited.get(concept)
            if current is None or degree > current[0]:
                credited[concept] = (degree, leaf.id)
    return {c: topic for c, (_, topic) in credited.items()}


def top_k(
    idx: DegreeIndex,
    kind: str = "predicate",
    k: int = 20,
    dedup_across_topics: bool = False,
    hierarchy: TopicHierarchy | None = None,
    g: SchemaGraph | None = None,
) -> TopKList:
    """Top-k entries by degree, descending, ties by lexicographic IRI.

    With ``dedup_across_topics`` (concept lists only) each listed concept
    is additionally credited to exactly one leaf topic of ``hierarchy``.
    """
    if kind == "predicate":
        scored = [(iri, pio) for iri, (_, _, pio) in idx.predicate.items()]
    elif kind == "concept":
        scored = list(idx.concept.items())
    else:
        raise ValueError(f"unknown kind {kind!r}")
    scored.sort(key=lambda e: (-e[1], e[0]))
    entries = scored[:k]
    credited = None
    if dedup_across_topics:
        if kind != "predicate" and (hierarchy is None or g is None):
            raise ValueError("dedup requires a hierarchy and a schema graph")
        if kind == "concept":
            credited = credit_concepts(g, hierarchy.leaves())
    return TopKList(kind, entries, credited)


def topic_measures(topic: TopicNode, g: SchemaGraph, sm: SimilarityMatrix) -> TopicMeasures:
    """Mean pairwise similarity, hierarchy silhouette and subgraph density."""
    members = topic.predicates
    if len(members) == 1:
        mean_similarity = 1.0
    else:
        indices = [sm.index[p] for p in members]
        pairs = [
            sm.values[i, j]
            for a, i in enumerate(indices)
            for j in indices[a + 1 :]
        ]
        mean_similarity = float(np.mean(pairs))
    stats = schema_stats(induced_subgraph(g, members))
    return TopicMeasures(mean_similarity, topic.mean_sw, stats)


def competition_ranks(scores: list) -> list[int]:
    """Ranks with ties sharing the better rank: scores (4,2,2,1) -> 1,2,2,4."""
    ranks = []
    for s in scores:
        ranks.append(1 + sum(1 for other in scores if other > s))
    return ranks


def rank_topics(
    hierarchy: TopicHierarchy,
    g: SchemaGraph,
    sm: SimilarityMatrix,
    idx: DegreeIndex,
    k: int = 20,
) -> list[TopicRankRow]:
    leaves = sorted(hierarchy.leaves(), key=lambda n: n.id)
    top_preds = top_k(idx, "predicate", k)
    top_concepts = top_k(idx, "concept", k, dedup_across_topics=True, hierarchy=hierarchy, g=g)
    listed_preds = {iri for iri, _ in top_preds.entries}
    listed_concepts = {iri for iri, _ in top_concepts.entries}
    credited = top_concepts.credited or {}

    pred_scores = []
    concept_scores = []
    similarity_scores = []
    silhouette_scores = []
    density_scores = []
    for leaf in leaves:
        members = set(leaf.predicates)
        in_list = [p for p in members if p in listed_preds]
        pred_scores.append((len(in_list), sum(idx.pio(p) for p in in_list)))
        mine = [
            c for c in listed_concepts
            if credited.get(c) == leaf.id
        ]
        concept_scores.append((len(mine), sum(idx.concept[c] for c in mine)))
        measures = topic_measures(leaf, g, sm)
        similarity_scores.append(measures.mean_similarity)
        silhouette_scores.append(measures.mean_sw)
        density_scores.append(measures.stats.density)

    rank_cols = [
        competition_ranks(pred_scores),
        competition_ranks(concept_scores),
        competition_ranks(similarity_scores),
        competition_ranks(silhouette_scores),
        competition_ranks(density_scores),
    ]
    rows = []
    for i, leaf in enumerate(leaves):
        ranks = [col[i] for col in rank_cols]
        rows.append(
            TopicRankRow(
                topic_id=leaf.id,
                top_predicates_rank=ranks[0],
                top_concepts_rank=ranks[1],
                similarity_rank=ranks[2],
                silhouette_rank=ranks[3],
                density_rank=ranks[4],
                overall=sum(ranks) / 5.0,
                final_position=0,
            )
        )
    rows.sort(key=lambda r: (r.overall, r.similarity_rank, r.topic_id))
    for position, row in enumerate(rows, start=1):
        row.final_position = position
    return rows


RANKS_TSV_HEADER = (
    "topicId\ttopPredicates\ttopConcepts\tsimilarity\tsilhouette\tdensity\toverall\tfinalPosition"
)


def dump_ranks_tsv(rows: list[TopicRankRow]) -> str:
    lines = [RANKS_TSV_HEADER]
    for r in rows:
        lines.append(
            f"{r.topic_id}\t{r.top_predicates_rank}\t{r.top_concepts_rank}"
            f"\t{r.similarity_rank}\t{r.silhouette_rank}\t{r.density_rank}"
            f"\t{r.overall:.2f}\t{r.final_position}"
        )
    return "\n".join(lines) + "\n"


def load_ranks_tsv(text: str) -> list[TopicRankRow]:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0] != RANKS_TSV_HEADER:
        raise ValueError("missing or unexpected rank table header")
    rows = []
    for line in lines[1:]:
        parts = line.split("\t")
        if len(parts) != 8:
            raise ValueError(f"expected 8 fields, got {len(parts)}")
        rows.append(
            TopicRankRow(
                topic_id=parts[0],
                top_predicates_rank=int(parts[1]),
                top_concepts_rank=int(parts[2]),
                similarity_rank=int(parts[3]),
                silhouette_rank=int(parts[4]),
                density_rank=int(parts[5]),
                overall=float(parts[6]),
                final_position=int(parts[7]),
            )
        )
    return rows
