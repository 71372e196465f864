"""HTTP API over an analysis snapshot.

The app is a pure read-side projection of one snapshot: topics, their
subgraphs and generated queries, plus a proxy endpoint that forwards a
SPARQL query to a remote endpoint on the caller's behalf (browsers
cannot reach arbitrary endpoints directly). Every error body has the
shape {"code": ..., "message": ...}.
"""

from __future__ import annotations

import os
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .. import sparqlclient
from ..pipeline import AnalysisSnapshot
from ..ranking import TopicRankRow, topic_measures
from ..schema import induced_subgraph
from . import models

ENDPOINT_ENV_VAR = "ONTOTOPICS_ENDPOINT"


class ApiException(Exception):
    def __init__(self, status: int, code: str, message: str):
        self.status = status
        self.code = code
        self.message = message


def _rank_row(snap: AnalysisSnapshot, topic_id: str) -> TopicRankRow:
    for row in snap.ranks:
        if row.topic_id == topic_id:
            return row
    raise ApiException(404, "unknown_topic", f"no ranked topic {topic_id!r}")


def _leaf(snap: AnalysisSnapshot, topic_id: str):
    for leaf in snap.hierarchy.leaves():
        if leaf.id == topic_id:
            return leaf
    try:
        snap.hierarchy.node(topic_id)
    except KeyError:
        raise ApiException(404, "unknown_topic", f"no topic {topic_id!r}") from None
    leaf_ids = ", ".join(n.id for n in snap.hierarchy.leaves())
    raise ApiException(
        400,
        "not_a_leaf",
        f"{topic_id} is an internal node; leaf topics are: {leaf_ids}",
    )


def _topic_summary(snap: AnalysisSnapshot, topic_id: str) -> models.TopicSummary:
    leaf = _leaf(snap, topic_id)
    row = _rank_row(snap, topic_id)
    predicates = sorted(
        leaf.predicates, key=lambda p: (-snap.degrees.pio(p), p)
    )
    sub = induced_subgraph(snap.graph, leaf.predicates)
    concepts = sorted(sub.concepts, key=lambda c: (-snap.degrees.concept.get(c, 0), c))
    return models.TopicSummary(
        topic_id=leaf.id,
        final_position=row.final_position,
        overall=row.overall,
        mean_sw=leaf.mean_sw,
        predicate_count=len(leaf.predicates),
        predicates=[
            models.RankedPredicate(
                iri=p, label=snap.graph.display_label(p), pio=snap.degrees.pio(p)
            )
            for p in predicates
        ],
        concepts=[
            models.RankedConcept(
                iri=c,
                label=snap.graph.display_label(c),
                degree=snap.degrees.concept.get(c, 0),
            )
            for c in concepts
        ],
    )


def create_app(snap: AnalysisSnapshot, ui_dir: "str | Path | None" = None) -> FastAPI:
    app = FastAPI(title="ontotopics", docs_url="/docs")

    @app.exception_handler(ApiException)
    async def api_exception_handler(_request: Request, exc: ApiException):
        return JSONResponse(
            status_code=exc.status,
            content=models.ApiError(code=exc.code, message=exc.message).model_dump(),
        )

    @app.exception_handler(RequestValidationError)
    async def validation_handler(_request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422,
            content=models.ApiError(code="invalid_request", message=str(exc)).model_dump(),
        )

    @app.get("/api/datasets", response_model=list[models.DatasetInfo])
    def datasets():
        return [
            models.DatasetInfo(
                id=snap.dataset_id,
                alpha=snap.alpha,
                beta=snap.beta,
                seed=snap.seed,
                concept_count=snap.stats.concept_count,
                predicate_count=snap.stats.predicate_count,
                edge_count=snap.stats.edge_count,
                schema_triple_count=snap.stats.schema_triple_count,
                density=snap.stats.density,
                shape=snap.hierarchy.shape(),
                leaf_count=len(snap.hierarchy.leaves()),
            )
        ]

    @app.get("/api/topics", response_model=list[models.TopicSummary])
    def topics():
        ordered = sorted(snap.ranks, key=lambda r: r.final_position)
        return [_topic_summary(snap, row.topic_id) for row in ordered]

    @app.get("/api/topics/{topic_id}", response_model=models.TopicDetail)
    def topic_detail(topic_id: str):
        leaf = _leaf(snap, topic_id)
        row = _rank_row(snap, topic_id)
        summary = _topic_summary(snap, topic_id)
        measures = topic_measures(leaf, snap.graph, snap.sm)
        return models.TopicDetail(
            **summary.model_dump(),
            ranks=models.RankBreakdown(
                top_predicates=row.top_predicates_rank,
                top_concepts=row.top_concepts_rank,
                similarity=row.similarity_rank,
                silhouette=row.silhouette_rank,
                density=row.density_rank,
            ),
            mean_similarity=measures.mean_similarity,
            density=measures.stats.density,
            contribution=leaf.contribution,
        )

    @app.get("/api/topics/{topic_id}/graph", response_model=models.TopicGraph)
    def topic_graph(topic_id: str):
        leaf = _leaf(snap, topic_id)
        sub = induced_subgraph(snap.graph, leaf.predicates)
        nodes = [
            models.GraphNode(id=c, kind="concept", label=snap.graph.display_label(c))
            for c in sorted(sub.concepts)
        ] + [
            models.GraphNode(id=p, kind="predicate", label=snap.graph.display_label(p))
            for p in sorted(sub.predicates)
        ]
        edges = [
            models.GraphEdge(source=c, target=p, count=count)
            for (c, p), count in sorted(sub.domain_edges.items())
        ] + [
            models.GraphEdge(source=p, target=c, count=count)
            for (p, c), count in sorted(sub.range_edges.items())
        ]
        return models.TopicGraph(topic_id=leaf.id, nodes=nodes, edges=edges)

    @app.get("/api/topics/{topic_id}/queries", response_model=list[models.QueryRecord])
    def topic_queries(topic_id: str):
        leaf = _leaf(snap, topic_id)
        return [
            models.QueryRecord(
                topic_id=q.topic_id,
                nl_question=q.nl_question,
                sparql=q.sparql,
                beta=q.beta,
                share_template=q.share_template,
            )
            for q in snap.queries.get(leaf.id, [])
        ]

    @app.post("/api/execute", response_model=models.ExecuteResponse)
    def execute(request: models.ExecuteRequest):
        endpoint = request.endpoint_url or os.environ.get(ENDPOINT_ENV_VAR, "")
        if not endpoint:
            raise ApiException(400, "no_endpoint", "no endpoint URL configured")
        cfg = sparqlclient.EndpointConfig(url=endpoint, default_graph=request.default_graph)
        try:
            table = sparqlclient.execute(cfg, request.sparql)
        except sparqlclient.TransportError as exc:
            raise ApiException(502, "transport_error", str(exc)) from exc
        except sparqlclient.EndpointError as exc:
            raise ApiException(502, "endpoint_error", str(exc)) from exc
        except sparqlclient.ResultsParseError as exc:
            raise ApiException(502, "results_parse_error", str(exc)) from exc
        return models.ExecuteResponse(
            columns=table.columns,
            rows=[
                [
                    models.Cell(
                        kind=cell.kind,
                        value=cell.value,
                        datatype=cell.datatype,
                        language=cell.language,
                    )
                    if cell is not None
                    else None
                    for cell in row
                ]
                for row in table.rows
            ],
        )

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    return app
