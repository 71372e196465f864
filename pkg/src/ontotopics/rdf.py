"""N-Triples parsing and an indexed triple store.

The accepted syntax is line-based N-Triples: one statement per line,
subject, predicate and object followed by a terminating dot. IRIs are
angle bracketed, literals are double quoted with an optional
``^^<datatype>`` or ``@lang`` suffix, and ``#`` starts a comment line.
Blank node labels (``_:b0``) are accepted in subject and object position
and carried as iri-kind terms, which is enough to run schema extraction
over real exports that contain them.
"""

from __future__ import annotations

from dataclasses import dataclass

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"

RDF_TYPE = RDF_NS + "type"
RDFS_LABEL = RDFS_NS + "label"


class ParseError(ValueError):
    """Malformed N-Triples input; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class Term:
    """An RDF term: kind is either "iri" or "literal".

    Literals may carry a datatype IRI or a language tag, never both.
    Blank node labels keep their "_:" prefix in ``value`` and use the
    iri kind.
    """

    kind: str
    value: str
    datatype: str | None = None
    language: str | None = None

    def is_iri(self) -> bool:
        return self.kind == "iri"


def iri(value: str) -> Term:
    return Term("iri", value)


def literal(value: str, datatype: str | None = None, language: str | None = None) -> Term:
    return Term("literal", value, datatype, language)


@dataclass(frozen=True)
class Triple:
    subject: Term
    predicate: Term
    object: Term


class TripleStore:
    """Instance triples with predicate and rdf:type indexes.

    ``by_predicate`` groups triples by predicate IRI; ``type_of`` maps a
    subject IRI to the set of class IRIs it is rdf:type-ed with.
    """

    def __init__(self, triples: "list[Triple] | tuple[Triple, ...]" = ()):
        self.triples: list[Triple] = []
        self.by_predicate: dict[str, list[Triple]] = {}
        self.type_of: dict[str, set[str]] = {}
        for t in triples:
            self.add(t)

    def add(self, t: Triple) -> None:
        if not t.subject.is_iri():
            raise ValueError("triple subject must be an iri term")
        if not t.predicate.is_iri():
            raise ValueError("triple predicate must be an iri term")
        self.triples.append(t)
        self.by_predicate.setdefault(t.predicate.value, []).append(t)
        if t.predicate.value == RDF_TYPE and t.object.is_iri():
            self.type_of.setdefault(t.subject.value, set()).add(t.object.value)

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self):
        return iter(self.triples)


_ESCAPES = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}


def _unescape(raw: str, line_no: int) -> str:
    if "\\" not in raw:
        return raw
    out = []
    i = 0
    while i < len(raw):
        ch = raw[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= len(raw):
            raise ParseError(line_no, "dangling escape at end of term")
        esc = raw[i + 1]
        if esc in _ESCAPES:
            out.append(_ESCAPES[esc])
            i += 2
        elif esc in ("u", "U"):
            width = 4 if esc == "u" else 8
            hexpart = raw[i + 2 : i + 2 + width]
            if len(hexpart) < width:
                raise ParseError(line_no, f"truncated \\{esc} escape")
            try:
                out.append(chr(int(hexpart, 16)))
            except ValueError:
                raise ParseError(line_no, f"bad \\{esc} escape") from None
            i += 2 + width
        else:
            raise ParseError(line_no, f"unknown escape \\{esc}")
    return "".join(out)


def _skip_ws(line: str, i: int) -> int:
    while i < len(line) and line[i] in " \t":
        i += 1
    return i


def _scan_iri(line: str, i: int, line_no: int) -> tuple[Term, int]:
    end = line.find(">", i + 1)
    if end < 0:
        raise ParseError(line_no, "unterminated IRI")
    value = _unescape(line[i + 1 : end], line_no)
    if not value:
        raise ParseError(line_no, "empty IRI")
    return Term("iri", value), end + 1


def _scan_bnode(line: str, i: int, line_no: int) -> tuple[Term, int]:
    j = i + 2
    while j < len(line) and (line[j].isalnum() or line[j] in "_-."):
        j += 1
    while j > i + 2 and line[j - 1] == ".":
        j -= 1
    if j == i + 2:
        raise ParseError(line_no, "empty blank node label")
    return Term("iri", line[i:j]), j


def _scan_literal(line: str, i: int, line_no: int) -> tuple[Term, int]:
    j = i + 1
    while j < len(line):
        if line[j] == "\\":
            j += 2
            continue
        if line[j] == '"':
            break
        j += 1
    if j >= len(line):
        raise ParseError(line_no, "unterminated literal")
    value = _unescape(line[i + 1 : j], line_no)
    j += 1
    datatype = None
    language = None
    if line.startswith("^^", j):
        if j + 2 >= len(line) or line[j + 2] != "<":
            raise ParseError(line_no, "expected datatype IRI after ^^")
        dt, j = _scan_iri(line, j + 2, line_no)
        datatype = dt.value
    elif line.startswith("@", j):
        k = j + 1
        while k < len(line) and (line[k].isalnum() or line[k] == "-"):
            k += 1
        if k == j + 1:
            raise ParseError(line_no, "empty language tag")
        language = line[j + 1 : k]
        j = k
    return Term("literal", value, datatype, language), j


def _scan_term(line: str, i: int, line_no: int, allow_literal: bool) -> tuple[Term, int]:
    if i >= len(line):
        raise ParseError(line_no, "unexpected end of statement")
    ch = line[i]
    if ch == "<":
        return _scan_iri(line, i, line_no)
    if line.startswith("_:", i):
        return _scan_bnode(line, i, line_no)
    if ch == '"':
        if not allow_literal:
            raise ParseError(line_no, "literal not allowed in this position")
        return _scan_literal(line, i, line_no)
    raise ParseError(line_no, f"unexpected character {ch!r}")


def parse_ntriples(text: str) -> TripleStore:
    """Parse N-Triples text into a TripleStore.

    Blank lines and # comment lines are skipped. Raises ParseError with
    the offending line number on malformed statements.
    """
    store = TripleStore()
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        i = _skip_ws(line, 0)
        subject, i = _scan_term(line, i, line_no, allow_literal=False)
        i = _skip_ws(line, i)
        predicate, i = _scan_term(line, i, line_no, allow_literal=False)
        if predicate.value.startswith("_:"):
            raise ParseError(line_no, "blank node not allowed as predicate")
        i = _skip_ws(line, i)
        obj, i = _scan_term(line, i, line_no, allow_literal=True)
        i = _skip_ws(line, i)
        if i >= len(line) or line[i] != ".":
            raise ParseError(line_no, "missing terminating dot")
        rest = line[i + 1 :].strip()
        if rest and not rest.startswith("#"):
            raise ParseError(line_no, "unexpected content after terminating dot")
        store.add(Triple(subject, predicate, obj))
    return store


def _escape(value: str) -> str:
    return (
        value.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\r", "\\r")
        .replace("\t", "\\t")
    )


def format_term(term: Term) -> str:
    if term.is_iri():
        if term.value.startswith("_:"):
            return term.value
        return f"<{term.value}>"
    out = f'"{_escape(term.value)}"'
    if term.datatype:
        out += f"^^<{term.datatype}>"
    elif term.language:
        out += f"@{term.language}"
    return out


def serialize_ntriples(store: TripleStore) -> str:
    lines = [
        f"{format_term(t.subject)} {format_term(t.predicate)} {format_term(t.object)} ."
        for t in store.triples
    ]
    return "\n".join(lines) + ("\n" if lines else "")
