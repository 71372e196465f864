"""Tests for predicate neighborhood distances and similarity."""

import math

import numpy as np
import pytest

from ontotopics.schema import SchemaGraph
from ontotopics.similarity import (
    DistanceMatrix,
    SimilarityMatrix,
    concept_set,
    connection_similarity,
    distance_matrix,
    dump_similarity_tsv,
    load_similarity_tsv,
    shared_similarity,
    similarity_matrix,
)

from conftest import random_schema_graph
from oracles import (
    oracle_connection_decomp,
    oracle_connection_paths,
    oracle_distances,
    oracle_shared,
)

NS = "http://example.org/drugs#"


def test_concept_sets(drugs_graph):
    assert concept_set(drugs_graph, NS + "target") == {NS + "Drug", NS + "Target"}
    assert concept_set(drugs_graph, NS + "source") == {NS + "Drug", NS + "Target", NS + "Source", "Literal"}
    assert concept_set(drugs_graph, NS + "reference") == {
        NS + "Target",
        NS + "Enzyme",
        NS + "Carrier",
        NS + "Reference",
    }


def test_concept_set_unknown_predicate(drugs_graph):
    with pytest.raises(KeyError):
        concept_set(drugs_graph, NS + "nope")


def test_shared_similarity_hand_values(drugs_graph):
    # |{Drug, Target}|^2 / (2 * 4)
    assert shared_similarity(drugs_graph, NS + "target", NS + "source") == pytest.approx(0.5)
    # |{Target}|^2 / (4 * 4)
    assert shared_similarity(drugs_graph, NS + "reference", NS + "source") == pytest.approx(0.0625)
    # |{Drug}|^2 / (2 * 2)
    assert shared_similarity(drugs_graph, NS + "target", NS + "enzyme") == pytest.approx(0.25)


def test_shared_similarity_is_one_on_diagonal(drugs_graph):
    for p in drugs_graph.predicates:
        assert shared_similarity(drugs_graph, p, p) == pytest.approx(1.0)


def test_distances_all_one_on_drugs_fixture(drugs_graph):
    dm = distance_matrix(drugs_graph)
    n = len(dm.predicates)
    for i in range(n):
        for j in range(n):
            assert dm.values[i, j] == (0.0 if i == j else 1.0)


def _chain_graph() -> SchemaGraph:
    g = SchemaGraph()
    g.add_schema_triple("http://x/A", "http://x/p0", "http://x/B")
    g.add_schema_triple("http://x/B", "http://x/p1", "http://x/C")
    g.add_schema_triple("http://x/C", "http://x/p2", "http://x/D")
    return g


def test_chain_distances_and_connection():
    g = _chain_graph()
    sm = similarity_matrix(g)
    i = {p: k for k, p in enumerate(sm.predicates)}
    p0, p1, p2 = "http://x/p0", "http://x/p1", "http://x/p2"
    dm = distance_matrix(g)
    assert dm.values[i[p0], i[p1]] == 1
    assert dm.values[i[p0], i[p2]] == 2
    assert sm.values[i[p0], i[p1]] == pytest.approx(0.25)
    # only decomposition point is p1: 0.25 * 0.25
    assert sm.values[i[p0], i[p2]] == pytest.approx(0.0625)


def test_connection_similarity_takes_best_split():
    # two length-2 routes between 0 and 3: 0.5 * 0.4 beats 0.3 * 0.2
    predicates = [f"http://x/p{i}" for i in range(4)]
    dist = np.array(
        [
            [0, 1, 1, 2],
            [1, 0, 1, 1],
            [1, 1, 0, 1],
            [2, 1, 1, 0],
        ],
        dtype=float,
    )
    shared = np.array(
        [
            [1.0, 0.5, 0.3, 0.0],
            [0.5, 1.0, 0.9, 0.4],
            [0.3, 0.9, 1.0, 0.2],
            [0.0, 0.4, 0.2, 1.0],
        ]
    )
    dm = DistanceMatrix(predicates=predicates, index={p: i for i, p in enumerate(predicates)}, values=dist)
    values = connection_similarity(dm, shared)
    assert values[0, 3] == pytest.approx(max(0.5 * 0.4, 0.3 * 0.2))


def test_unreachable_pairs_are_zero():
    g = SchemaGraph()
    g.add_schema_triple("http://x/A", "http://x/p0", "http://x/B")
    g.add_schema_triple("http://x/C", "http://x/p1", "http://x/D")
    sm = similarity_matrix(g)
    i = {p: k for k, p in enumerate(sm.predicates)}
    assert sm.values[i["http://x/p0"], i["http://x/p1"]] == 0.0
    dm = distance_matrix(g)
    assert math.isinf(dm.values[i["http://x/p0"], i["http://x/p1"]])


def _ordered_concept_sets(g: SchemaGraph, predicates: list[str]) -> list[set]:
    return [concept_set(g, p) for p in predicates]


def test_matches_decomposition_oracle_exactly():
    rng = np.random.default_rng(11)
    for _ in range(300):
        g = random_schema_graph(rng)
        sm = similarity_matrix(g)
        sets = _ordered_concept_sets(g, sm.predicates)
        expected = oracle_connection_decomp(oracle_distances(sets), oracle_shared(sets))
        n = len(sm.predicates)
        for i in range(n):
            for j in range(n):
                assert sm.values[i, j] == expected[i][j], (i, j, sets)


def test_close_to_path_enumeration_oracle():
    rng = np.random.default_rng(12)
    for _ in range(150):
        g = random_schema_graph(rng)
        sm = similarity_matrix(g)
        sets = _ordered_concept_sets(g, sm.predicates)
        expected = oracle_connection_paths(oracle_distances(sets), oracle_shared(sets))
        assert np.allclose(sm.values, np.array(expected), atol=1e-9)


def test_similarity_invariants():
    rng = np.random.default_rng(13)
    for _ in range(200):
        g = random_schema_graph(rng)
        sm = similarity_matrix(g)
        dm = distance_matrix(g)
        v = sm.values
        assert np.array_equal(v, v.T)
        assert np.all(np.diag(v) == 1.0)
        assert np.all((v >= 0.0) & (v <= 1.0))
        off = ~np.eye(len(v), dtype=bool)
        finite = np.isfinite(dm.values)
        # positive exactly where reachable
        assert np.all((v[off] > 0) == finite[off])


def test_connection_never_exceeds_best_adjacent_shared():
    rng = np.random.default_rng(14)
    for _ in range(100):
        g = random_schema_graph(rng)
        sm = similarity_matrix(g)
        dm = distance_matrix(g)
        adjacent = dm.values == 1.0
        if not adjacent.any():
            continue
        best_adjacent = sm.values[adjacent].max()
        far = dm.values >= 2.0
        if far.any():
            assert sm.values[far].max() <= best_adjacent + 1e-12


def test_similarity_matrix_rejects_empty_graph():
    with pytest.raises(ValueError):
        similarity_matrix(SchemaGraph())


def test_similarity_tsv_round_trip(drugs_graph):
    sm = similarity_matrix(drugs_graph)
    text = dump_similarity_tsv(sm)
    loaded = load_similarity_tsv(text)
    assert loaded.predicates == sm.predicates
    assert np.allclose(loaded.values, sm.values, atol=5e-7)


def test_similarity_tsv_rejects_mismatched_rows():
    sm = SimilarityMatrix(
        predicates=["http://x/a", "http://x/b"],
        index={"http://x/a": 0, "http://x/b": 1},
        values=np.eye(2),
    )
    text = dump_similarity_tsv(sm)
    broken = text.replace("http://x/b\t", "http://x/zzz\t", 1)
    with pytest.raises(ValueError):
        load_similarity_tsv(broken)
