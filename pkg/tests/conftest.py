"""Shared fixtures and builders for the test suite."""

from __future__ import annotations

import http.server
import json
import threading
import urllib.parse
from pathlib import Path

import numpy as np
import pytest

from ontotopics.rdf import parse_ntriples
from ontotopics.schema import SchemaGraph, extract_schema
from ontotopics.similarity import SimilarityMatrix

DATA = Path(__file__).parent / "data"


def make_sm(values: np.ndarray, prefix: str = "http://example.org/topics#p") -> SimilarityMatrix:
    """Wrap a square similarity array in a SimilarityMatrix with synthetic IRIs."""
    n = values.shape[0]
    predicates = [f"{prefix}{i:02d}" for i in range(n)]
    return SimilarityMatrix(
        predicates=predicates,
        index={p: i for i, p in enumerate(predicates)},
        values=np.asarray(values, dtype=float),
    )


def block_values(
    top_blocks: list[list[int]],
    within_sub: float = 0.92,
    within_top: float = 0.76,
    across: float = 0.0,
) -> np.ndarray:
    """Block-structured similarity values: tight sub-blocks nested in looser top blocks."""
    n = sum(sum(subs) for subs in top_blocks)
    m = np.full((n, n), across)
    offset = 0
    for subs in top_blocks:
        top_n = sum(subs)
        m[offset : offset + top_n, offset : offset + top_n] = within_top
        sub_offset = offset
        for s in subs:
            m[sub_offset : sub_offset + s, sub_offset : sub_offset + s] = within_sub
            sub_offset += s
        offset += top_n
    np.fill_diagonal(m, 1.0)
    return m


@pytest.fixture(scope="session")
def fig4_sm() -> SimilarityMatrix:
    """63 predicates in two top blocks (20, 43) with sub-blocks (4,6,3,4,3) and (35,8)."""
    return make_sm(block_values([[4, 6, 3, 4, 3], [35, 8]]))


@pytest.fixture(scope="session")
def deep_sm() -> SimilarityMatrix:
    """Same layout as fig4_sm but the 35 sub-block hides a 20/15 split one level down."""
    m = block_values([[4, 6, 3, 4, 3], [35, 8]])
    b35 = slice(20, 55)
    m[b35, b35] = 0.90
    m[20:40, 20:40] = 0.955
    m[40:55, 40:55] = 0.955
    np.fill_diagonal(m, 1.0)
    return make_sm(m)


@pytest.fixture(scope="session")
def drugs_graph() -> SchemaGraph:
    """Schema extracted from the bundled 40-triple instance fixture."""
    store = parse_ntriples((DATA / "drugs.nt").read_text())
    return extract_schema(store)


WALK_NS = "http://example.org/walk#"


@pytest.fixture(scope="session")
def walkthrough() -> tuple[SchemaGraph, SimilarityMatrix]:
    """Three-predicate fixture with hand-set similarities for query expansion.

    sm(drug, x-pubchem-substance) = 0.5 and sm(drug, affected-organism) = 0.1,
    so expansion from drug at beta 0.2 picks up exactly x-pubchem-substance.
    """
    g = SchemaGraph()
    g.add_schema_triple(WALK_NS + "DrugEffect", WALK_NS + "drug", WALK_NS + "Drug", 7)
    g.add_schema_triple(WALK_NS + "Drug", WALK_NS + "x-pubchem-substance", WALK_NS + "PharmGKBResource", 5)
    g.add_schema_triple(WALK_NS + "Drug", WALK_NS + "affected-organism", WALK_NS + "Organism", 3)
    predicates = sorted(g.predicates)
    index = {p: i for i, p in enumerate(predicates)}
    values = np.eye(3)
    pairs = {
        (WALK_NS + "drug", WALK_NS + "x-pubchem-substance"): 0.5,
        (WALK_NS + "drug", WALK_NS + "affected-organism"): 0.1,
        (WALK_NS + "x-pubchem-substance", WALK_NS + "affected-organism"): 0.15,
    }
    for (a, b), v in pairs.items():
        values[index[a], index[b]] = v
        values[index[b], index[a]] = v
    return g, SimilarityMatrix(predicates=predicates, index=index, values=values)


def random_schema_graph(rng: np.random.Generator, max_predicates: int = 8, max_concepts: int = 12) -> SchemaGraph:
    """Random small schema graph; disconnected predicate groups are common."""
    n_p = int(rng.integers(1, max_predicates + 1))
    n_c = int(rng.integers(2, max_concepts + 1))
    concepts = [f"http://example.org/rand#C{i}" for i in range(n_c)]
    g = SchemaGraph()
    for i in range(n_p):
        p = f"http://example.org/rand#p{i}"
        for _ in range(int(rng.integers(1, 4))):
            domain = concepts[int(rng.integers(0, n_c))]
            range_ = concepts[int(rng.integers(0, n_c))]
            g.add_schema_triple(domain, p, range_, int(rng.integers(1, 9)))
    return g


SPARQL_RESULT_DOC = {
    "head": {"vars": ["s", "name"]},
    "results": {
        "bindings": [
            {
                "s": {"type": "uri", "value": "http://x/a"},
                "name": {"type": "literal", "value": "Alpha", "xml:lang": "en"},
            },
            {
                "s": {"type": "bnode", "value": "b0"},
                "name": {
                    "type": "typed-literal",
                    "value": "42",
                    "datatype": "http://www.w3.org/2001/XMLSchema#integer",
                },
            },
            {"s": {"type": "uri", "value": "http://x/c"}},
        ]
    },
}


class _SparqlHandler(http.server.BaseHTTPRequestHandler):
    """Records SPARQL protocol requests and replies with a canned response."""

    def log_message(self, *args):
        pass

    def _handle(self):
        if self.command == "GET":
            raw = urllib.parse.urlparse(self.path).query
        else:
            length = int(self.headers.get("Content-Length", 0))
            raw = self.rfile.read(length).decode("utf-8")
        params = {k: v[0] for k, v in urllib.parse.parse_qs(raw).items()}
        self.server.requests.append(
            {"method": self.command, "params": params, "accept": self.headers.get("Accept")}
        )
        status, ctype, body = self.server.response
        self.send_response(status)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    do_GET = _handle
    do_POST = _handle


@pytest.fixture()
def sparql_server():
    """Local HTTP server speaking just enough of the SPARQL protocol."""
    httpd = http.server.ThreadingHTTPServer(("127.0.0.1", 0), _SparqlHandler)
    httpd.requests = []
    httpd.response = (
        200,
        "application/sparql-results+json",
        json.dumps(SPARQL_RESULT_DOC).encode("utf-8"),
    )
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    httpd.url = f"http://127.0.0.1:{httpd.server_address[1]}/sparql"
    yield httpd
    httpd.shutdown()
    httpd.server_close()
