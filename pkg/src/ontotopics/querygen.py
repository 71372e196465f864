"""Executable query generation from topic subgraphs.

A query starts at the topic's seed predicate (highest pio, ties to the
lexicographically smaller IRI) and grows breadth-first: from each reached
predicate the remaining members are considered in descending similarity
and the scan stops at the first one not strictly above the beta
threshold. Each selected predicate binds its most frequent (domain,
range) schema triple; variables are created per distinct concept and
reused, which is what joins the patterns together. The share template
clones a hub variable so the query asks for pairs of resources that
share the same connected values.

Rendering is deterministic: a select distinct header over the label
variables, then type patterns, required predicate patterns, optional
patterns and label patterns, one per line, each terminated by " .".
rdf:type and rdfs:label are always written as full w3.org IRIs. A small
parser for this SPARQL subset supports round-trip tests.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .ranking import DegreeIndex
from .rdf import RDF_TYPE, RDFS_LABEL, XSD_NS
from .schema import LITERAL_CONCEPT, SchemaGraph, local_name
from .similarity import SimilarityMatrix


@dataclass
class QueryVariable:
    name: str
    concept: str | None
    display: str


@dataclass
class TriplePattern:
    subject: str  # variable name
    predicate: str  # predicate IRI
    object: str  # variable name
    optional: bool = False


@dataclass
class Projection:
    var: str  # projected variable name
    label_of: str | None  # source variable when this is a label variable


@dataclass
class QueryGraph:
    variables: list[QueryVariable] = field(default_factory=list)
    patterns: list[TriplePattern] = field(default_factory=list)
    projections: list[Projection] = field(default_factory=list)
    topic_id: str | None = None
    share_hub: str | None = None
    diagnostics: list[str] = field(default_factory=list)

    def variable(self, name: str) -> QueryVariable:
        for v in self.variables:
            if v.name == name:
                return v
        raise KeyError(name)


@dataclass
class GeneratedQuery:
    topic_id: str
    nl_question: str
    sparql: str
    beta: float
    share_template: bool


def _is_pseudo(concept: str | None) -> bool:
    return concept is None or concept == LITERAL_CONCEPT or concept.startswith(XSD_NS)


def seed_predicate(predicates: "list[str] | set[str]", idx: DegreeIndex) -> str:
    """Member with the highest pio; ties go to the smaller IRI."""
    if not predicates:
        raise ValueError("empty predicate set")
    return sorted(predicates, key=lambda p: (-idx.pio(p), p))[0]


def expand(
    members: list[str],
    sm: SimilarityMatrix,
    beta: float,
    seed: str,
) -> list[str]:
    """Breadth-first selection of members above the beta threshold.

    From each reached predicate the still-unvisited members are scanned
    in descending similarity (ties by IRI); the scan stops at the first
    member whose similarity is not strictly greater than beta. Returns
    the selection in discovery order, seed first.
    """
    if seed not in members:
        raise ValueError(f"seed {seed!r} is not a topic member")
    visited = [seed]
    visited_set = {seed}
    queue = deque([seed])
    while queue:
        current = queue.popleft()
        ranked = sorted(
            (m for m in members if m not in visited_set),
            key=lambda m: (-sm.at(current, m), m),
        )
        for m in ranked:
            if sm.at(current, m) > beta:
                visited.append(m)
                visited_set.add(m)
                queue.append(m)
            else:
                break
    return visited


def _pio_from_graph(g: SchemaGraph, predicate: str) -> int:
    return sum(1 for (_, p) in g.domain_edges if p == predicate) + sum(
        1 for (p, _) in g.range_edges if p == predicate
    )


def _variable_base(concept: str) -> str:
    base = "".join(ch for ch in local_name(concept).lower() if ch.isalnum())
    return base or "v"


def bind_variables(predicates: list[str], g: SchemaGraph) -> QueryGraph:
    """Bind each predicate's most frequent schema triple to shared variables.

    Predicates without a schema triple are skipped with a diagnostic.
    When the chosen patterns fall apart into disconnected components only
    the component with the larger summed pio is kept (ties go to the
    component holding the smallest predicate IRI); the rest is dropped
    with a diagnostic so the rendered query stays connected.
    """
    qg = QueryGraph()
    chosen: list[tuple[str, str, str]] = []
    for p in predicates:
        candidates = [
            (domain, range_, count)
            for (domain, pp, range_), count in g.schema_triples.items()
            if pp == p
        ]
        if not candidates:
            qg.diagnostics.append(f"skipped {p}: no schema triple")
            continue
        candidates.sort(key=lambda c: (-c[2], c[0], c[1]))
        domain, range_, _ = candidates[0]
        chosen.append((p, domain, range_))

    if not chosen:
        return qg

    # connected components over shared concepts
    parent: dict[str, str] = {}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: str, b: str) -> None:
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    for _, domain, range_ in chosen:
        union(domain, range_)
    components: dict[str, list[tuple[str, str, str]]] = {}
    for entry in chosen:
        components.setdefault(find(entry[1]), []).append(entry)
    if len(components) > 1:
        def component_key(entries: list[tuple[str, str, str]]):
            total_pio = sum(_pio_from_graph(g, p) for p, _, _ in entries)
            smallest = min(p for p, _, _ in entries)
            return (-total_pio, smallest)

        keep = min(components.values(), key=component_key)
        for entries in components.values():
            if entries is not keep:
                for p, _, _ in entries:
                    qg.diagnostics.append(f"dropped {p}: disconnected from the main component")
        chosen = [entry for entry in chosen if entry in keep]

    var_by_concept: dict[str, str] = {}
    used_names: set[str] = set()

    def var_for(concept: str) -> str:
        if concept in var_by_concept:
            return var_by_concept[concept]
        base = _variable_base(concept)
        name = base
        suffix = 2
        while name in used_names:
            name = f"{base}{suffix}"
            suffix += 1
        used_names.add(name)
        var_by_concept[concept] = name
        display = concept if _is_pseudo(concept) else g.display_label(concept)
        qg.variables.append(QueryVariable(name, concept, display))
        return name

    for p, domain, range_ in chosen:
        qg.patterns.append(TriplePattern(var_for(domain), p, var_for(range_)))

    projected: set[str] = set()
    for pattern in qg.patterns:
        for name in (pattern.subject, pattern.object):
            if name in projected:
                continue
            projected.add(name)
            var = qg.variable(name)
            if _is_pseudo(var.concept):
                qg.projections.append(Projection(name, None))
            else:
                label_name = f"{name}label"
                while label_name in used_names:
                    label_name += "x"
                used_names.add(label_name)
                qg.projections.append(Projection(label_name, name))
    return qg


def apply_share_template(qg: QueryGraph) -> QueryGraph:
    """Clone the hub variable and add optional twin patterns.

    The hub is the variable incident to the most required patterns in a
    single role (subject preferred on ties). The clone keeps the hub's
    concept, repeats each hub pattern as an optional pattern with the
    clone substituted in the hub's role, and is projected through its own
    label variable.
    """
    required = [p for p in qg.patterns if not p.optional]
    best: tuple[tuple[int, int, int], QueryVariable, str] | None = None
    for order, var in enumerate(qg.variables):
        for role_rank, role in enumerate(("subject", "object")):
            count = sum(
                1
                for p in required
                if (p.subject if role == "subject" else p.object) == var.name
            )
            if count < 2:
                continue
            key = (-count, role_rank, order)
            if best is None or key < best[0]:
                best = (key, var, role)
    if best is None:
        raise ValueError("no hub variable is shared by two or more patterns")
    _, hub, hub_role = best

    out = QueryGraph(
        variables=list(qg.variables),
        patterns=list(qg.patterns),
        projections=list(qg.projections),
        topic_id=qg.topic_id,
        share_hub=hub.name,
        diagnostics=list(qg.diagnostics),
    )
    taken = {v.name for v in qg.variables} | {p.var for p in qg.projections}
    clone_name = hub.name + "2"
    while clone_name in taken:
        clone_name += "x"
    out.variables.append(QueryVariable(clone_name, hub.concept, hub.display))
    for p in required:
        if hub_role == "subject" and p.subject == hub.name:
            out.patterns.append(TriplePattern(clone_name, p.predicate, p.object, optional=True))
        elif hub_role == "object" and p.object == hub.name:
            out.patterns.append(TriplePattern(p.subject, p.predicate, clone_name, optional=True))
    if not _is_pseudo(hub.concept):
        label_name = f"{clone_name}label"
        while label_name in taken:
            label_name += "x"
        out.projections.append(Projection(label_name, clone_name))
    return out


def _pattern_text(subject: str, predicate: str, object_: str) -> str:
    return f"{subject} {predicate} {object_} ."


def render_sparql(qg: QueryGraph) -> str:
    """Deterministic text form: types, required patterns, optionals, labels."""
    if not qg.projections:
        raise ValueError("query graph has no projections")
    head = "select distinct " + ", ".join(f"?{p.var}" for p in qg.projections) + " where {"
    lines = [head]
    for var in qg.variables:
        if not _is_pseudo(var.concept):
            lines.append(_pattern_text(f"?{var.name}", f"<{RDF_TYPE}>", f"<{var.concept}>"))
    for p in qg.patterns:
        if not p.optional:
            lines.append(_pattern_text(f"?{p.subject}", f"<{p.predicate}>", f"?{p.object}"))
    for p in qg.patterns:
        if p.optional:
            lines.append(
                f"Optional {{ ?{p.subject} <{p.predicate}> ?{p.object} }} ."
            )
    for proj in qg.projections:
        if proj.label_of is not None:
            lines.append(_pattern_text(f"?{proj.label_of}", f"<{RDFS_LABEL}>", f"?{proj.var}"))
    lines.append("}")
    return "\n".join(lines)


def _join_phrase(items: list[str]) -> str:
    if not items:
        return ""
    if len(items) == 1:
        return items[0]
    return ", ".join(items[:-1]) + " and " + items[-1]


def render_nl(qg: QueryGraph) -> str:
    """Natural language question for the query graph."""
    required = [p for p in qg.patterns if not p.optional]
    if not required:
        raise ValueError("query graph has no required patterns")
    if qg.share_hub is not None:
        hub = qg.variable(qg.share_hub)
        items: list[str] = []
        for p in required:
            other = None
            if p.subject == qg.share_hub and p.object != qg.share_hub:
                other = p.object
            elif p.object == qg.share_hub and p.subject != qg.share_hub:
                other = p.subject
            if other is None:
                continue
            label = qg.variable(other).display.lower()
            if label not in items:
                items.append(label)
        return (
            f"For any two {hub.display.lower()}s which share the common "
            f"{_join_phrase(items)}, what are all the possible combinations?"
        )
    counts: dict[str, int] = {}
    for p in required:
        counts[p.subject] = counts.get(p.subject, 0) + 1
        counts[p.object] = counts.get(p.object, 0) + 1
    hub = None
    hub_count = 0
    for v in qg.variables:
        c = counts.get(v.name, 0)
        if c > hub_count:
            hub, hub_count = v, c
    assert hub is not None
    preds: list[str] = []
    for p in required:
        name = local_name(p.predicate)
        if name not in preds:
            preds.append(name)
    return f"For any {hub.display}, what are its {_join_phrase(preds)}?"


# ---------------------------------------------------------------------------
# SPARQL subset parsing


@dataclass(frozen=True)
class ParsedPattern:
    subject: tuple[str, str]
    predicate: tuple[str, str]
    object: tuple[str, str]
    optional: bool = False


@dataclass
class ParsedQuery:
    distinct: bool
    projections: list[str]
    patterns: list[ParsedPattern]

    def to_sparql(self) -> str:
        head = "select "
        if self.distinct:
            head += "distinct "
        head += ", ".join(f"?{v}" for v in self.projections) + " where {"
        lines = [head]
        for p in self.patterns:
            s, pred, o = (_render_parsed_term(t) for t in (p.subject, p.predicate, p.object))
            if p.optional:
                lines.append(f"Optional {{ {s} {pred} {o} }} .")
            else:
                lines.append(f"{s} {pred} {o} .")
        lines.append("}")
        return "\n".join(lines)


def _render_parsed_term(term: tuple[str, str]) -> str:
    kind, value = term
    if kind == "var":
        return f"?{value}"
    if kind == "iri":
        return f"<{value}>"
    escaped = value.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


class SparqlParseError(ValueError):
    pass


def _tokenize_sparql(text: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "<":
            end = text.find(">", i + 1)
            if end < 0:
                raise SparqlParseError(f"unterminated IRI at offset {i}")
            tokens.append(("iri", text[i + 1 : end]))
            i = end + 1
        elif ch == "?":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            if j == i + 1:
                raise SparqlParseError(f"empty variable name at offset {i}")
            tokens.append(("var", text[i + 1 : j]))
            i = j
        elif ch == '"':
            j = i + 1
            out = []
            while j < n and text[j] != '"':
                if text[j] == "\\" and j + 1 < n:
                    out.append({"n": "\n", "t": "\t", '"': '"', "\\": "\\"}.get(text[j + 1], text[j + 1]))
                    j += 2
                else:
                    out.append(text[j])
                    j += 1
            if j >= n:
                raise SparqlParseError(f"unterminated literal at offset {i}")
            tokens.append(("literal", "".join(out)))
            i = j + 1
        elif ch in "{}.,":
            tokens.append((ch, ch))
            i += 1
        elif ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] in "-_"):
                j += 1
            tokens.append(("word", text[i:j]))
            i = j
        else:
            raise SparqlParseError(f"unexpected character {ch!r} at offset {i}")
    return tokens


def parse_sparql(text: str) -> ParsedQuery:
    """Parse the generated SPARQL subset back into projections and patterns."""
    tokens = _tokenize_sparql(text)
    pos = 0

    def peek() -> tuple[str, str] | None:
        return tokens[pos] if pos < len(tokens) else None

    def take() -> tuple[str, str]:
        nonlocal pos
        if pos >= len(tokens):
            raise SparqlParseError("unexpected end of query")
        tok = tokens[pos]
        pos += 1
        return tok

    def expect_word(word: str) -> None:
        kind, value = take()
        if kind != "word" or value.lower() != word:
            raise SparqlParseError(f"expected {word!r}, got {value!r}")

    def expect(kind: str) -> tuple[str, str]:
        tok = take()
        if tok[0] != kind:
            raise SparqlParseError(f"expected {kind!r}, got {tok[1]!r}")
        return tok

    expect_word("select")
    distinct = False
    nxt = peek()
    if nxt and nxt[0] == "word" and nxt[1].lower() == "distinct":
        take()
        distinct = True
    projections: list[str] = []
    while True:
        nxt = peek()
        if nxt is None:
            raise SparqlParseError("unexpected end in select list")
        if nxt[0] == "var":
            projections.append(take()[1])
        elif nxt[0] == ",":
            take()
        elif nxt[0] == "word" and nxt[1].lower() == "where":
            take()
            break
        else:
            raise SparqlParseError(f"unexpected token {nxt[1]!r} in select list")
    if not projections:
        raise SparqlParseError("empty select list")
    expect("{")

    def take_term() -> tuple[str, str]:
        tok = take()
        if tok[0] not in ("var", "iri", "literal"):
            raise SparqlParseError(f"expected a term, got {tok[1]!r}")
        return tok

    patterns: list[ParsedPattern] = []
    while True:
        nxt = peek()
        if nxt is None:
            raise SparqlParseError("unterminated where block")
        if nxt[0] == "}":
            take()
            break
        if nxt[0] == "word" and nxt[1].lower() == "optional":
            take()
            expect("{")
            inner = 0
            while True:
                nxt = peek()
                if nxt is None:
                    raise SparqlParseError("unterminated optional block")
                if nxt[0] == "}":
                    take()
                    break
                s, p, o = take_term(), take_term(), take_term()
                nxt = peek()
                if nxt and nxt[0] == ".":
                    take()
                patterns.append(ParsedPattern(s, p, o, optional=True))
                inner += 1
            if inner == 0:
                raise SparqlParseError("empty optional block")
            nxt = peek()
            if nxt and nxt[0] == ".":
                take()
        else:
            s, p, o = take_term(), take_term(), take_term()
            expect(".")
            patterns.append(ParsedPattern(s, p, o))
    if peek() is not None:
        raise SparqlParseError(f"unexpected trailing token {peek()[1]!r}")
    return ParsedQuery(distinct, projections, patterns)


def generate_queries(
    topic,
    g: SchemaGraph,
    sm: SimilarityMatrix,
    idx: DegreeIndex,
    beta: float = 0.2,
    limit: int = 10,
) -> list[GeneratedQuery]:
    """Query bundle for a leaf topic: beta sweep times share toggle, deduped.

    The requested beta comes first, then the remaining sweep values in
    ascending order, plain before share-template form at each beta.
    Variants whose SPARQL text duplicates an earlier one are dropped and
    at most ``limit`` queries are returned.
    """
    members = list(topic.predicates)
    seed = seed_predicate(members, idx)
    betas = [beta] + [b for b in (0.1, 0.2, 0.3, 0.4, 0.5) if b != beta]
    out: list[GeneratedQuery] = []
    seen: set[str] = set()
    for b in betas:
        selected = expand(members, sm, b, seed)
        qg = bind_variables(selected, g)
        qg.topic_id = topic.id
        if not qg.patterns:
            continue
        for share in (False, True):
            if share:
                try:
                    variant = apply_share_template(qg)
                except ValueError:
                    continue
            else:
                variant = qg
            sparql = render_sparql(variant)
            if sparql in seen:
                continue
            seen.add(sparql)
            out.append(
                GeneratedQuery(
                    topic_id=topic.id,
                    nl_question=render_nl(variant),
                    sparql=sparql,
                    beta=b,
                    share_template=share,
                )
            )
            if len(out) >= limit:
                return out
    return out
