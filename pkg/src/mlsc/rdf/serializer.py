"""Deterministic Turtle and N-Triples writers."""

from __future__ import annotations

import re
from typing import Mapping

from .terms import RDF_TYPE, BlankNode, Iri, Node, Term, TripleGraph

FORMATS = {"turtle": "turtle", "ttl": "turtle", "ntriples": "ntriples", "nt": "ntriples"}

_SAFE_LOCAL = re.compile(r"[A-Za-z0-9_](?:[A-Za-z0-9_\-]*)?")
_IRI_ESCAPE = set('<>"{}|^`\\') | {chr(c) for c in range(0x21)}
_STRING_ESCAPE = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r"}


def _escape_iri(value: str) -> str:
    return "".join(f"\\u{ord(c):04X}" if c in _IRI_ESCAPE else c for c in value)


def _escape_string(value: str) -> str:
    out = []
    for ch in value:
        if ch in _STRING_ESCAPE:
            out.append(_STRING_ESCAPE[ch])
        elif ord(ch) < 0x20 or ord(ch) == 0x7F:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def blank_node_numbering(graph: TripleGraph) -> dict[BlankNode, str]:
    """Map each blank node to ``b0, b1, ...`` in first-occurrence order."""
    numbering: dict[BlankNode, str] = {}
    for triple in graph:
        for term in (triple.subject, triple.object):
            if isinstance(term, BlankNode) and term not in numbering:
                numbering[term] = f"b{len(numbering)}"
    return numbering


class _Writer:
    def __init__(self, graph: TripleGraph, use_prefixes: bool) -> None:
        self.labels = blank_node_numbering(graph)
        # longest namespace first so the most specific prefix wins
        self.namespaces = (
            sorted(graph.prefixes.items(), key=lambda kv: (-len(kv[1].value), kv[0]))
            if use_prefixes
            else []
        )

    def iri(self, iri: Iri) -> str:
        for label, ns in self.namespaces:
            if iri.value.startswith(ns.value):
                local = iri.value[len(ns.value):]
                if local == "" or _SAFE_LOCAL.fullmatch(local):
                    return f"{label}:{local}"
        return f"<{_escape_iri(iri.value)}>"

    def term(self, term: Term) -> str:
        if isinstance(term, Iri):
            return self.iri(term)
        if isinstance(term, BlankNode):
            return f"_:{self.labels[term]}"
        text = f'"{_escape_string(term.lexical)}"'
        if term.language is not None:
            return f"{text}@{term.language}"
        if term.datatype is not None:
            return f"{text}^^{self.iri(term.datatype)}"
        return text

    def sort_key(self, term: Term) -> tuple:
        if isinstance(term, Iri):
            return (0, term.value)
        if isinstance(term, BlankNode):
            return (1, int(self.labels[term][1:]))
        return (2, term.lexical, term.datatype.value if term.datatype else "", term.language or "")


def _ntriples(graph: TripleGraph) -> str:
    writer = _Writer(graph, use_prefixes=False)
    lines = sorted(
        f"{writer.term(s)} {writer.term(p)} {writer.term(o)} .\n" for s, p, o in graph
    )
    return "".join(lines)


def _turtle(graph: TripleGraph) -> str:
    writer = _Writer(graph, use_prefixes=True)
    out = [f"@prefix {label}: <{_escape_iri(ns.value)}> .\n" for label, ns in sorted(graph.prefixes.items())]
    grouped: dict[Node, dict[Iri, list[Term]]] = {}
    for s, p, o in graph:
        grouped.setdefault(s, {}).setdefault(p, []).append(o)
    for subject in sorted(grouped, key=writer.sort_key):
        predicates = grouped[subject]
        # rdf:type first, rendered with the `a` shorthand
        order = sorted(predicates, key=lambda p: (p != RDF_TYPE, p.value))
        parts = []
        for predicate in order:
            verb = "a" if predicate == RDF_TYPE else writer.iri(predicate)
            objects = ", ".join(writer.term(o) for o in sorted(predicates[predicate], key=writer.sort_key))
            parts.append(f"{verb} {objects}")
        if out:
            out.append("\n")
        out.append(f"{writer.term(subject)} " + " ;\n    ".join(parts) + " .\n")
    return "".join(out)


def serialize(graph: TripleGraph, format: str = "turtle") -> bytes:
    """Write ``graph`` as UTF-8 with LF line endings.

    Blank nodes are renumbered ``_:b0, _:b1, ...`` by first occurrence.
    N-Triples output is sorted line by line; Turtle output lists the prefix
    table sorted by label, then one block per subject.
    """
    kind = FORMATS.get(format.lower())
    if kind is None:
        raise ValueError(f"unknown RDF format: {format!r}")
    text = _turtle(graph) if kind == "turtle" else _ntriples(graph)
    return text.encode("utf-8")


def prefixed(iri: Iri, prefixes: Mapping[str, Iri]) -> str:
    """Compact ``iri`` with ``prefixes`` when possible, else ``<iri>``."""
    return _Writer(TripleGraph((), prefixes), use_prefixes=True).iri(iri)
