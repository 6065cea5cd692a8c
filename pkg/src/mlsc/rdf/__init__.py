"""Minimal RDF layer: terms, Turtle/N-Triples parsing and serialization."""

from .compare import isomorphic
from .parser import ParseError, UndefinedPrefix, UnsupportedSyntax, parse_ntriples, parse_turtle, resolve_iri
from .serializer import FORMATS, serialize
from .terms import (
    RDF,
    RDF_TYPE,
    RDFS,
    RDFS_LABEL,
    XSD,
    BlankNode,
    Iri,
    Literal,
    Node,
    Term,
    Triple,
    TripleGraph,
    is_absolute_iri,
)


def parse(data, format: str = "turtle", base: str | None = None) -> TripleGraph:
    """Dispatch to the Turtle or N-Triples parser by format name."""
    kind = FORMATS.get(format.lower())
    if kind is None:
        raise ValueError(f"unknown RDF format: {format!r}")
    if kind == "ntriples":
        return parse_ntriples(data)
    return parse_turtle(data, base=base)


def format_for_path(path: str, default: str = "turtle") -> str:
    """Pick a format from a file extension (.ttl or .nt)."""
    lowered = str(path).lower()
    if lowered.endswith(".nt"):
        return "ntriples"
    if lowered.endswith(".ttl"):
        return "turtle"
    return default


__all__ = [
    "BlankNode", "FORMATS", "Iri", "Literal", "Node", "ParseError", "RDF", "RDFS", "RDFS_LABEL",
    "RDF_TYPE", "Term", "Triple", "TripleGraph", "UndefinedPrefix", "UnsupportedSyntax", "XSD",
    "format_for_path", "is_absolute_iri", "isomorphic", "parse", "parse_ntriples", "parse_turtle",
    "resolve_iri", "serialize",
]
