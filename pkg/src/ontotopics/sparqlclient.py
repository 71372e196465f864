"""Minimal SPARQL protocol client over HTTP.

Queries are sent with the ``query`` parameter, asking for
application/sparql-results+json; GET is used for queries up to 2 KB and
form-encoded POST beyond that. Result documents turn into a
BindingTable (column order from head.vars, one row per binding, None for
unbound cells) that can be rendered as TSV or as aligned columns.
"""

from __future__ import annotations

from dataclasses import dataclass

import requests

GET_MAX_BYTES = 2048
ACCEPT_JSON = "application/sparql-results+json"


class TransportError(RuntimeError):
    """Network-level failure: DNS, refused connection, timeout."""


class EndpointError(RuntimeError):
    """Non-2xx HTTP status from the endpoint."""

    def __init__(self, status: int, snippet: str):
        super().__init__(f"endpoint returned HTTP {status}: {snippet}")
        self.status = status
        self.snippet = snippet


class ResultsParseError(RuntimeError):
    """Response body was not a valid SPARQL results document."""


@dataclass(frozen=True)
class EndpointConfig:
    url: str
    default_graph: str | None = None
    timeout: float = 30.0


@dataclass(frozen=True)
class BindingValue:
    kind: str  # "iri" or "literal"
    value: str
    datatype: str | None = None
    language: str | None = None


@dataclass
class BindingTable:
    columns: list[str]
    rows: list[list[BindingValue | None]]


def _convert_binding(raw: dict) -> BindingValue:
    kind = raw.get("type")
    value = raw.get("value")
    if value is None or kind is None:
        raise ResultsParseError(f"binding without type/value: {raw!r}")
    if kind == "uri":
        return BindingValue("iri", value)
    if kind in ("literal", "typed-literal"):
        return BindingValue("literal", value, raw.get("datatype"), raw.get("xml:lang"))
    if kind == "bnode":
        return BindingValue("iri", f"_:{value}")
    raise ResultsParseError(f"unknown binding type {kind!r}")


def execute(cfg: EndpointConfig, sparql: str) -> BindingTable:
    """Run a select query against the endpoint and parse the JSON results."""
    params = {"query": sparql}
    if cfg.default_graph:
        params["default-graph-uri"] = cfg.default_graph
    headers = {"Accept": ACCEPT_JSON}
    try:
        if len(sparql.encode("utf-8")) <= GET_MAX_BYTES:
            resp = requests.get(cfg.url, params=params, headers=headers, timeout=cfg.timeout)
        else:
            resp = requests.post(cfg.url, data=params, headers=headers, timeout=cfg.timeout)
    except requests.RequestException as exc:
        raise TransportError(str(exc)) from exc
    if not 200 <= resp.status_code < 300:
        raise EndpointError(resp.status_code, resp.text[:200])
    try:
        doc = resp.json()
    except ValueError as exc:
        raise ResultsParseError(f"response is not JSON: {resp.text[:200]}") from exc
    try:
        columns = list(doc["head"]["vars"])
        bindings = doc["results"]["bindings"]
    except (KeyError, TypeError) as exc:
        raise ResultsParseError(f"missing head.vars or results.bindings: {exc}") from exc
    rows: list[list[BindingValue | None]] = []
    for binding in bindings:
        if not isinstance(binding, dict):
            raise ResultsParseError(f"binding is not an object: {binding!r}")
        rows.append(
            [_convert_binding(binding[var]) if var in binding else None for var in columns]
        )
    return BindingTable(columns, rows)


def _cell_text(cell: BindingValue | None) -> str:
    return "" if cell is None else cell.value


def _quote_tsv(text: str) -> str:
    if any(ch in text for ch in ("\t", "\n", "\r", '"')):
        return '"' + text.replace('"', '""') + '"'
    return text


def render_table(table: BindingTable, style: str = "tsv") -> str:
    """Render as "tsv" (quoted where needed) or "aligned" fixed columns."""
    if style == "tsv":
        lines = ["\t".join(_quote_tsv(c) for c in table.columns)]
        for row in table.rows:
            lines.append("\t".join(_quote_tsv(_cell_text(cell)) for cell in row))
        return "\n".join(lines) + "\n"
    if style == "aligned":
        grid = [list(table.columns)] + [
            [_cell_text(cell) for cell in row] for row in table.rows
        ]
        widths = [max(len(row[i]) for row in grid) for i in range(len(table.columns))]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in grid]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown style {style!r}")


def parse_tsv(text: str) -> tuple[list[str], list[list[str | None]]]:
    """Inverse of the tsv rendering, on string values; empty cells become None."""

    def split_line(line: str) -> list[str | None]:
        cells: list[str | None] = []
        i = 0
        n = len(line)
        while True:
            if i < n and line[i] == '"':
                out = []
                i += 1
                while i < n:
                    if line[i] == '"':
                        if i + 1 < n and line[i + 1] == '"':
                            out.append('"')
                            i += 2
                            continue
                        i += 1
                        break
                    out.append(line[i])
                    i += 1
                cells.append("".join(out))
            else:
                j = line.find("\t", i)
                raw = line[i:] if j < 0 else line[i:j]
                cells.append(raw if raw else None)
                i = n if j < 0 else j
            if i >= n:
                break
            if line[i] != "\t":
                raise ValueError(f"expected tab after quoted cell at offset {i}")
            i += 1
            if i == n:
                cells.append(None)
                break
        return cells

    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ValueError("empty table")
    header = [c if c is not None else "" for c in split_line(lines[0])]
    rows = [split_line(line) for line in lines[1:]]
    for row in rows:
        if len(row) != len(header):
            raise ValueError(f"row width {len(row)} does not match header {len(header)}")
    return header, rows
