"""Independent reference helpers for the tests.

Nothing here imports the parser, serializer or isomorphism code under test.
"""

from __future__ import annotations

import itertools
import re

XSD_STRING = "http://www.w3.org/2001/XMLSchema#string"

_TERM = r'(<[^>]*>|_:\S+|"(?:[^"\\]|\\.)*"(?:@[A-Za-z]+(?:-[A-Za-z0-9]+)*|\^\^<[^>]*>)?)'
_LINE = re.compile(rf"{_TERM} {_TERM} {_TERM} \.")
_ESC = re.compile(r"\\(u[0-9A-Fa-f]{4}|U[0-9A-Fa-f]{8}|.)")
_SIMPLE = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}


def _unescape(text: str) -> str:
    def sub(m):
        body = m.group(1)
        if body[0] in "uU" and len(body) > 1:
            return chr(int(body[1:], 16))
        return _SIMPLE[body]
    return _ESC.sub(sub, text)


def _term(text: str) -> tuple:
    if text.startswith("<"):
        return ("iri", _unescape(text[1:-1]))
    if text.startswith("_:"):
        return ("bnode", text[2:])
    end = text.rfind('"')
    lexical = _unescape(text[1:end])
    rest = text[end + 1:]
    if rest.startswith("@"):
        return ("lit", lexical, None, rest[1:])
    if rest.startswith("^^"):
        dt = _unescape(rest[3:-1])
        return ("lit", lexical, None if dt == XSD_STRING else dt, None)
    return ("lit", lexical, None, None)


def read_canonical_nt(text: str) -> set[tuple]:
    """Read N-Triples written one statement per line with single spaces."""
    out = set()
    for line in text.splitlines():
        if not line.strip():
            continue
        m = _LINE.fullmatch(line.strip())
        assert m, f"oracle cannot read line {line!r}"
        out.add(tuple(_term(g) for g in m.groups()))
    return out


def as_tuples(graph) -> set[tuple]:
    """Convert a graph under test into the oracle's tuple form."""
    from mlsc.rdf import BlankNode, Iri

    def conv(t):
        if isinstance(t, Iri):
            return ("iri", t.value)
        if isinstance(t, BlankNode):
            return ("bnode", t.label)
        return ("lit", t.lexical, t.datatype.value if t.datatype else None, t.language)

    return {tuple(conv(x) for x in triple) for triple in graph}


def brute_isomorphic(a: set[tuple], b: set[tuple]) -> bool:
    """Try every bijection between the blank nodes of ``a`` and ``b``."""
    if len(a) != len(b):
        return False
    nodes_a = sorted({x[1] for t in a for x in t if x[0] == "bnode"})
    nodes_b = sorted({x[1] for t in b for x in t if x[0] == "bnode"})
    if len(nodes_a) != len(nodes_b):
        return False
    assert len(nodes_a) <= 8, "brute force only for small graphs"
    for perm in itertools.permutations(nodes_b):
        mapping = dict(zip(nodes_a, perm))
        renamed = {
            tuple(("bnode", mapping[x[1]]) if x[0] == "bnode" else x for x in t) for t in a
        }
        if renamed == b:
            return True
    return False


def to_rdflib(graph):
    import rdflib

    from mlsc.rdf import BlankNode, Iri

    out = rdflib.Graph()

    def conv(t):
        if isinstance(t, Iri):
            return rdflib.URIRef(t.value)
        if isinstance(t, BlankNode):
            return rdflib.BNode(t.label)
        return rdflib.Literal(
            t.lexical,
            lang=t.language,
            datatype=rdflib.URIRef(t.datatype.value) if t.datatype else None,
        )

    for triple in graph:
        out.add(tuple(conv(x) for x in triple))
    return out
