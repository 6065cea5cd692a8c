"""RDF terms, triples and the immutable triple graph."""

from __future__ import annotations

import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
XSD = "http://www.w3.org/2001/XMLSchema#"

# \S excludes exactly the characters str.isspace() accepts
_ABSOLUTE = re.compile(r"[A-Za-z][A-Za-z0-9+.\-]*:\S*")
PREFIX_LABEL = re.compile(r"(?:[A-Za-z][A-Za-z0-9_\-]*)?")


def is_absolute_iri(value: str) -> bool:
    """True when ``value`` has a scheme and contains no whitespace."""
    return _ABSOLUTE.fullmatch(value) is not None


@dataclass(frozen=True, order=True)
class Iri:
    value: str

    def __post_init__(self) -> None:
        if not isinstance(self.value, str) or not is_absolute_iri(self.value):
            raise ValueError(f"not an absolute IRI: {self.value!r}")

    def __str__(self) -> str:
        return self.value

    @property
    def local_name(self) -> str:
        """Text after the last ``#`` or ``/`` (or after the scheme colon)."""
        cut = max(self.value.rfind("#"), self.value.rfind("/"))
        if cut < 0:
            cut = self.value.find(":")
        return self.value[cut + 1:]


@dataclass(frozen=True, order=True)
class BlankNode:
    label: str

    def __str__(self) -> str:
        return f"_:{self.label}"


XSD_STRING = Iri(XSD + "string")


@dataclass(frozen=True)
class Literal:
    lexical: str
    datatype: Iri | None = None
    language: str | None = None

    def __post_init__(self) -> None:
        if self.datatype is not None and self.language is not None:
            raise ValueError("a literal cannot carry both a datatype and a language tag")
        if self.datatype == XSD_STRING:
            object.__setattr__(self, "datatype", None)

    def __str__(self) -> str:
        return self.lexical


Node = Union[Iri, BlankNode]
Term = Union[Iri, BlankNode, Literal]

RDF_TYPE = Iri(RDF + "type")
RDFS_LABEL = Iri(RDFS + "label")


class Triple(NamedTuple):
    subject: Node
    predicate: Iri
    object: Term


def _check_triple(triple: Triple) -> Triple:
    s, p, o = triple
    if not isinstance(s, (Iri, BlankNode)):
        raise ValueError(f"subject must be an IRI or blank node, got {s!r}")
    if not isinstance(p, Iri):
        raise ValueError(f"predicate must be an IRI, got {p!r}")
    if not isinstance(o, (Iri, BlankNode, Literal)):
        raise ValueError(f"object must be an RDF term, got {o!r}")
    return Triple(s, p, o)


class TripleGraph:
    """An immutable, insertion-ordered set of triples plus a prefix table.

    Duplicate triples are collapsed; iteration follows the first occurrence
    of each triple.
    """

    __slots__ = ("_triples", "_set", "_prefixes")

    def __init__(
        self,
        triples: Iterable[Triple | tuple] = (),
        prefixes: Mapping[str, str | Iri] | None = None,
    ) -> None:
        ordered = dict.fromkeys(_check_triple(Triple(*t)) for t in triples)
        self._triples = tuple(ordered)
        self._set = frozenset(ordered)
        table = {}
        for label, ns in (prefixes or {}).items():
            if PREFIX_LABEL.fullmatch(label) is None:
                raise ValueError(f"invalid prefix label: {label!r}")
            table[label] = ns if isinstance(ns, Iri) else Iri(ns)
        self._prefixes = MappingProxyType(table)

    @property
    def prefixes(self) -> Mapping[str, Iri]:
        return self._prefixes

    @property
    def triples(self) -> tuple[Triple, ...]:
        return self._triples

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __len__(self) -> int:
        return len(self._triples)

    def __contains__(self, triple: object) -> bool:
        return triple in self._set

    def __eq__(self, other: object) -> bool:
        # Set semantics on triples, blank node labels included. See
        # ``isomorphic`` for comparison up to blank node renaming.
        if not isinstance(other, TripleGraph):
            return NotImplemented
        return self._set == other._set

    def __hash__(self) -> int:
        return hash(self._set)

    def __repr__(self) -> str:
        return f"TripleGraph({len(self)} triples, {len(self._prefixes)} prefixes)"

    def subjects(self) -> list[Node]:
        return list(dict.fromkeys(t.subject for t in self._triples))

    def objects(self, subject: Node, predicate: Iri) -> list[Term]:
        return [t.object for t in self._triples if t.subject == subject and t.predicate == predicate]

    def with_prefixes(self, prefixes: Mapping[str, str | Iri]) -> TripleGraph:
        return TripleGraph(self._triples, prefixes)
