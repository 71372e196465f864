"""Request and response schemas for the HTTP API.

All models accept and emit camelCase JSON keys while keeping snake_case
attribute names on the Python side.
"""

from __future__ import annotations

from pydantic import BaseModel as PydanticBase
from pydantic import ConfigDict, Field
from pydantic.alias_generators import to_camel


class BaseModel(PydanticBase):
    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True)


class DatasetInfo(BaseModel):
    id: str
    alpha: float
    beta: float
    seed: int
    concept_count: int
    predicate_count: int
    edge_count: int
    schema_triple_count: int
    density: float
    shape: str
    leaf_count: int


class RankedPredicate(BaseModel):
    iri: str
    label: str
    pio: int


class RankedConcept(BaseModel):
    iri: str
    label: str
    degree: int


class RankBreakdown(BaseModel):
    top_predicates: int
    top_concepts: int
    similarity: int
    silhouette: int
    density: int


class TopicSummary(BaseModel):
    topic_id: str
    final_position: int
    overall: float
    mean_sw: float
    predicate_count: int
    predicates: list[RankedPredicate]
    concepts: list[RankedConcept]


class TopicDetail(TopicSummary):
    ranks: RankBreakdown
    mean_similarity: float
    density: float
    contribution: float


class GraphNode(BaseModel):
    id: str
    kind: str = Field(pattern="^(concept|predicate)$")
    label: str


class GraphEdge(BaseModel):
    source: str
    target: str
    count: int


class TopicGraph(BaseModel):
    topic_id: str
    nodes: list[GraphNode]
    edges: list[GraphEdge]


class QueryRecord(BaseModel):
    topic_id: str
    nl_question: str
    sparql: str
    beta: float
    share_template: bool


class ExecuteRequest(BaseModel):
    endpoint_url: str | None = None
    sparql: str = Field(min_length=1)
    default_graph: str | None = None


class Cell(BaseModel):
    kind: str
    value: str
    datatype: str | None = None
    language: str | None = None


class ExecuteResponse(BaseModel):
    columns: list[str]
    rows: list[list[Cell | None]]


class ApiError(BaseModel):
    code: str
    message: str
