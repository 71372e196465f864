"""End-to-end analysis pipeline and the on-disk snapshot format.

Analysis runs once and writes a snapshot directory; the query command
and the HTTP service only ever read snapshots. A snapshot holds:

    manifest.json    dataset id, parameters, input name, headline counts
    stats.json       full schema statistics and skip diagnostics
    schema.tsv       extracted schema triples with counts
    labels.json      rdfs:label values seen in the input
    sm.tsv           predicate similarity matrix, 6 decimals
    hierarchy.json   nested topic nodes
    ranks.tsv        topic rank table
    queries.json     generated query bundles per leaf topic

Every artifact is deterministic for a fixed input and parameters, so
repeated runs produce byte-identical directories. The in-memory snapshot
carries a created_at timestamp; it is intentionally not written to disk
and is reconstructed from the manifest's mtime on load.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .clustering import TopicHierarchy, build_hierarchy, parse_hierarchy, serialize_hierarchy
from .querygen import GeneratedQuery, generate_queries
from .ranking import (
    DegreeIndex,
    TopicRankRow,
    dump_ranks_tsv,
    io_degrees,
    load_ranks_tsv,
    rank_topics,
)
from .rdf import parse_ntriples
from .schema import (
    SchemaGraph,
    StatsReport,
    dump_schema_tsv,
    extract_schema,
    load_schema_tsv,
    schema_stats,
)
from .similarity import (
    SimilarityMatrix,
    dump_similarity_tsv,
    load_similarity_tsv,
    similarity_matrix,
)


@dataclass
class AnalysisSnapshot:
    dataset_id: str
    alpha: float
    beta: float
    seed: int
    graph: SchemaGraph
    stats: StatsReport
    sm: SimilarityMatrix
    hierarchy: TopicHierarchy
    degrees: DegreeIndex
    ranks: list[TopicRankRow]
    queries: dict[str, list[GeneratedQuery]]
    created_at: datetime

    def leaf_ids(self) -> list[str]:
        return [n.id for n in self.hierarchy.leaves()]


def load_graph(input_path: "str | Path") -> SchemaGraph:
    """Read an .nt/.ntriples instance file or a pre-extracted schema .tsv."""
    path = Path(input_path)
    text = path.read_text(encoding="utf-8")
    suffix = path.suffix.lower()
    if suffix in (".nt", ".ntriples"):
        return extract_schema(parse_ntriples(text))
    if suffix == ".tsv":
        return load_schema_tsv(text)
    raise ValueError(f"unsupported input format {suffix!r} (expected .nt, .ntriples or .tsv)")


def analyze(
    input_path: "str | Path",
    alpha: float = 0.5,
    beta: float = 0.2,
    seed: int = 0,
) -> AnalysisSnapshot:
    path = Path(input_path)
    graph = load_graph(path)
    stats = schema_stats(graph)
    sm = similarity_matrix(graph)
    hierarchy = build_hierarchy(sm, alpha=alpha, seed=seed)
    degrees = io_degrees(graph)
    ranks = rank_topics(hierarchy, graph, sm, degrees)
    queries = {
        leaf.id: generate_queries(leaf, graph, sm, degrees, beta=beta)
        for leaf in sorted(hierarchy.leaves(), key=lambda n: n.id)
    }
    return AnalysisSnapshot(
        dataset_id=path.stem,
        alpha=alpha,
        beta=beta,
        seed=seed,
        graph=graph,
        stats=stats,
        sm=sm,
        hierarchy=hierarchy,
        degrees=degrees,
        ranks=ranks,
        queries=queries,
        created_at=datetime.now(timezone.utc),
    )


def _dump_json(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def save_snapshot(snap: AnalysisSnapshot, out_dir: "str | Path") -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {
        "dataset_id": snap.dataset_id,
        "alpha": snap.alpha,
        "beta": snap.beta,
        "seed": snap.seed,
        "concept_count": snap.stats.concept_count,
        "predicate_count": snap.stats.predicate_count,
        "edge_count": snap.stats.edge_count,
        "leaf_count": len(snap.hierarchy.leaves()),
        "shape": snap.hierarchy.shape(),
    }
    stats = {
        "concept_count": snap.stats.concept_count,
        "predicate_count": snap.stats.predicate_count,
        "edge_count": snap.stats.edge_count,
        "schema_triple_count": snap.stats.schema_triple_count,
        "density": snap.stats.density,
        "skipped_triples": snap.graph.skipped,
    }
    queries = [
        {
            "topic_id": q.topic_id,
            "nl_question": q.nl_question,
            "sparql": q.sparql,
            "beta": q.beta,
            "share_template": q.share_template,
        }
        for leaf_id in sorted(snap.queries)
        for q in snap.queries[leaf_id]
    ]
    (out / "manifest.json").write_text(_dump_json(manifest), encoding="utf-8")
    (out / "stats.json").write_text(_dump_json(stats), encoding="utf-8")
    (out / "schema.tsv").write_text(dump_schema_tsv(snap.graph), encoding="utf-8")
    labels = {iri: snap.graph.labels[iri] for iri in sorted(snap.graph.labels)}
    (out / "labels.json").write_text(_dump_json(labels), encoding="utf-8")
    (out / "sm.tsv").write_text(dump_similarity_tsv(snap.sm), encoding="utf-8")
    (out / "hierarchy.json").write_text(
        _dump_json(serialize_hierarchy(snap.hierarchy)), encoding="utf-8"
    )
    (out / "ranks.tsv").write_text(dump_ranks_tsv(snap.ranks), encoding="utf-8")
    (out / "queries.json").write_text(_dump_json(queries), encoding="utf-8")
    return out


SNAPSHOT_FILES = (
    "manifest.json",
    "stats.json",
    "schema.tsv",
    "labels.json",
    "sm.tsv",
    "hierarchy.json",
    "ranks.tsv",
    "queries.json",
)


def load_snapshot(snapshot_dir: "str | Path") -> AnalysisSnapshot:
    root = Path(snapshot_dir)
    missing = [name for name in SNAPSHOT_FILES if not (root / name).exists()]
    if missing:
        raise FileNotFoundError(f"snapshot at {root} is missing {', '.join(missing)}")
    manifest = json.loads((root / "manifest.json").read_text(encoding="utf-8"))
    stats_doc = json.loads((root / "stats.json").read_text(encoding="utf-8"))
    graph = load_schema_tsv((root / "schema.tsv").read_text(encoding="utf-8"))
    graph.labels.update(json.loads((root / "labels.json").read_text(encoding="utf-8")))
    graph.skipped = int(stats_doc.get("skipped_triples", 0))
    sm = load_similarity_tsv((root / "sm.tsv").read_text(encoding="utf-8"))
    hierarchy = parse_hierarchy(json.loads((root / "hierarchy.json").read_text(encoding="utf-8")))
    ranks = load_ranks_tsv((root / "ranks.tsv").read_text(encoding="utf-8"))
    queries: dict[str, list[GeneratedQuery]] = {}
    for entry in json.loads((root / "queries.json").read_text(encoding="utf-8")):
        q = GeneratedQuery(
            topic_id=entry["topic_id"],
            nl_question=entry["nl_question"],
            sparql=entry["sparql"],
            beta=float(entry["beta"]),
            share_template=bool(entry["share_template"]),
        )
        queries.setdefault(q.topic_id, []).append(q)
    stats = StatsReport(
        concept_count=int(stats_doc["concept_count"]),
        predicate_count=int(stats_doc["predicate_count"]),
        edge_count=int(stats_doc["edge_count"]),
        schema_triple_count=int(stats_doc["schema_triple_count"]),
        density=float(stats_doc["density"]),
    )
    created = datetime.fromtimestamp((root / "manifest.json").stat().st_mtime, timezone.utc)
    return AnalysisSnapshot(
        dataset_id=manifest["dataset_id"],
        alpha=float(manifest["alpha"]),
        beta=float(manifest["beta"]),
        seed=int(manifest["seed"]),
        graph=graph,
        stats=stats,
        sm=sm,
        hierarchy=hierarchy,
        degrees=io_degrees(graph),
        ranks=ranks,
        queries=queries,
        created_at=created,
    )
