"""Lift vocabulary-specific RDF into the canonical graph and lower it back out."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .diagnostics import Code, Diagnostic, Severity, subject_text
from .model import CanonicalClass, CanonicalGraph, CanonicalRelation, ModelError, relations_for
from .rdf import RDF_TYPE, RDFS_LABEL, XSD, Iri, Literal, Node, Triple, TripleGraph
from .rdf import format_for_path, parse
from .registry import VocabId, VocabRegistry, default_registry


def _class_list(classes) -> str:
    return "{" + ", ".join(c.value for c in sorted(classes, key=lambda c: c.rank)) + "}"


@lru_cache(maxsize=8)
def _predicates(namespace: str) -> dict[CanonicalRelation, Iri]:
    return {r: Iri(namespace + r.value) for r in CanonicalRelation}


def _type_labels(graph: TripleGraph) -> dict[Iri, list[str]]:
    labels: dict[Iri, list[str]] = {}
    for s, p, o in graph:
        if p == RDFS_LABEL and isinstance(s, Iri) and isinstance(o, Literal):
            labels.setdefault(s, []).append(o.lexical)
    return labels


def to_canonical(
    graph: TripleGraph, source: VocabId | str, registry: VocabRegistry | None = None
) -> tuple[CanonicalGraph, list[Diagnostic]]:
    """Lift ``graph`` (written in ``source``) into a :class:`CanonicalGraph`.

    Typed nodes whose type matches a ``source`` cell become entities.  When
    one type matches several classes the earliest class in table order wins
    and an AMBIGUOUS_SOURCE_TERM warning is raised; when a node's types
    resolve to different classes the first type in document order wins
    (MULTI_TYPED_NODE).  Links between entities become relation edges when
    the class pair fits exactly one relation signature.
    """
    source = VocabId.parse(source)
    registry = registry or default_registry()
    canon = CanonicalGraph()
    diags: list[Diagnostic] = []
    labels = _type_labels(graph)

    types: dict[Node, list[Iri]] = {}
    for s, p, o in graph:
        if p == RDF_TYPE:
            kinds = types.setdefault(s, [])
            if isinstance(o, Iri):
                kinds.append(o)

    matched: dict[Iri, list[tuple[CanonicalClass, str]]] = {}
    for node, kinds in types.items():
        chosen: tuple[CanonicalClass, str] | None = None
        for kind in kinds:
            if kind not in matched:
                matched[kind] = registry.match_type(kind, source, labels.get(kind, ()))
            matches = matched[kind]
            if not matches:
                continue
            classes = list(dict.fromkeys(c for c, _ in matches))
            cls, term = matches[0]
            if len(classes) > 1:
                diags.append(Diagnostic(
                    Code.AMBIGUOUS_SOURCE_TERM, subject_text(node),
                    f"{source} term {term!r} maps to {_class_list(classes)}; chose {cls}",
                ))
            if chosen is None:
                chosen = (cls, term)
            elif cls is not chosen[0]:
                diags.append(Diagnostic(
                    Code.MULTI_TYPED_NODE, subject_text(node),
                    f"typed as both {chosen[0]} and {cls}; kept {chosen[0]}",
                ))
        if chosen is None:
            shown = ", ".join(k.value for k in kinds) or "a non-IRI type"
            diags.append(Diagnostic(
                Code.UNKNOWN_TERM, subject_text(node), f"no {source} mapping for {shown}",
            ))
            continue
        canon.add_entity(chosen[0], node)
        canon.provenance[node] = chosen[1]

    for s, p, o in graph:
        if p == RDF_TYPE or s not in canon:
            continue
        if isinstance(o, Literal):
            canon.add_literal(s, p, o)
            continue
        if o not in canon:
            diags.append(Diagnostic(
                Code.MISSING_LINK, subject_text(s),
                f"{p.value} points at {subject_text(o)}, which is not a {source} entity",
                Severity.info,
            ))
            continue
        src_cls, dst_cls = canon.get(s).cls, canon.get(o).cls
        fitting = relations_for(src_cls, dst_cls)
        if len(fitting) != 1:
            diags.append(Diagnostic(
                Code.MISSING_LINK, subject_text(s),
                f"{p.value} from {src_cls} to {dst_cls} matches no canonical relation",
                Severity.info,
            ))
            continue
        try:
            canon.link(s, fitting[0], o)
        except ModelError as exc:
            diags.append(Diagnostic(Code.BAD_GRANULARITY, subject_text(s), str(exc)))
    return canon, diags


def from_canonical(
    canon: CanonicalGraph, target: VocabId | str, registry: VocabRegistry | None = None
) -> tuple[TripleGraph, list[Diagnostic]]:
    """Lower ``canon`` into ``target`` terms.

    Each entity is typed with the first term of its class's cell.  Entities
    of N/A classes are dropped together with their literals and edges, one
    LOSSY_DROP per entity.  Edges use canonical-namespace predicates.
    """
    target = VocabId.parse(target)
    registry = registry or default_registry()
    ns = registry.canonical_namespace
    triples: list[Triple] = []
    diags: list[Diagnostic] = []
    kept: set[Node] = set()
    for entity in canon.entities:
        type_iri = registry.type_iri(entity.cls, target)
        if type_iri is None:
            diags.append(Diagnostic(
                Code.LOSSY_DROP, subject_text(entity.id),
                f"{entity.cls} has no {target} term; entity dropped",
            ))
            continue
        kept.add(entity.id)
        triples.append(Triple(entity.id, RDF_TYPE, type_iri))
        for prop, values in entity.literals.items():
            triples.extend(Triple(entity.id, prop, v) for v in values)
    predicates = _predicates(ns)
    for src, relation, dst in canon.edges:
        if src in kept and dst in kept:
            triples.append(Triple(src, predicates[relation], dst))
    prefixes = {"mls": ns, **registry.prefixes(target), "xsd": XSD}
    return TripleGraph(triples, prefixes), diags


@dataclass
class ConversionReport:
    source: VocabId
    target: VocabId
    counts: dict[CanonicalClass, tuple[int, int]]
    diagnostics: list[Diagnostic] = field(default_factory=list)
    edges_in: int = 0
    edges_out: int = 0

    def count(self, code: Code) -> int:
        return sum(d.code is code for d in self.diagnostics)

    @property
    def dropped_classes(self) -> list[CanonicalClass]:
        return [c for c, (n_in, n_out) in self.counts.items() if n_out < n_in]

    def summary(self) -> str:
        text = f"{self.count(Code.AMBIGUOUS_SOURCE_TERM)} ambiguous, {self.count(Code.LOSSY_DROP)} dropped"
        if self.dropped_classes:
            text += " (" + ", ".join(c.value for c in self.dropped_classes) + ")"
        return text

    def to_text(self) -> str:
        n_in = sum(i for i, _ in self.counts.values())
        n_out = sum(o for _, o in self.counts.values())
        lines = [
            f"convert {self.source.cli_name} -> {self.target.cli_name}: "
            f"{n_in} entities in, {n_out} out; {self.edges_in} edges in, {self.edges_out} out",
            self.summary(),
        ]
        lines += [d.line() for d in self.diagnostics]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "source": self.source.cli_name,
            "target": self.target.cli_name,
            "counts": {
                c.value: {"in": n_in, "out": n_out}
                for c, (n_in, n_out) in self.counts.items()
                if n_in or n_out
            },
            "edges": {"in": self.edges_in, "out": self.edges_out},
            "diagnostics": [d.to_dict() for d in self.diagnostics],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def passthrough_triples(graph: TripleGraph) -> tuple[list[Triple], list[Diagnostic]]:
    """Triples about untyped nodes, carried over unchanged by :func:`convert`.

    Nodes used as a type (class declarations such as ``<T> rdfs:label
    "..."``) describe the source vocabulary itself and are not carried.
    """
    typed = {s for s, p, _ in graph if p == RDF_TYPE}
    used_as_type = {o for _, p, o in graph if p == RDF_TYPE}
    carried: list[Triple] = []
    diags: list[Diagnostic] = []
    noted: set[Node] = set()
    for t in graph:
        if t.subject in typed or t.subject in used_as_type:
            continue
        carried.append(t)
        if t.subject not in noted:
            noted.add(t.subject)
            diags.append(Diagnostic(
                Code.UNTYPED_NODE, subject_text(t.subject), "no rdf:type; triples passed through",
                Severity.info,
            ))
    return carried, diags


def convert(
    graph: TripleGraph,
    source: VocabId | str,
    target: VocabId | str,
    registry: VocabRegistry | None = None,
) -> tuple[TripleGraph, ConversionReport]:
    """Convert ``graph`` from ``source`` to ``target`` through the canonical pivot."""
    source, target = VocabId.parse(source), VocabId.parse(target)
    registry = registry or default_registry()
    canon, lift_diags = to_canonical(graph, source, registry)
    lowered, lower_diags = from_canonical(canon, target, registry)
    carried, carry_diags = passthrough_triples(graph)
    # keep the document's own prefixes, minus the source vocabulary's
    source_ns = {iri for _, iri in registry.prefixes(source).items()} if source is not target else set()
    prefixes = {p: i for p, i in graph.prefixes.items() if i not in source_ns}
    prefixes.update(lowered.prefixes)
    output = TripleGraph([*lowered, *carried], prefixes)

    kept = {t.subject for t in lowered if t.predicate == RDF_TYPE}
    counts = {}
    for cls in CanonicalClass:
        entities = canon.entities_of(cls)
        if entities:
            counts[cls] = (len(entities), sum(e.id in kept for e in entities))
    edges_out = sum(1 for s, _, o in canon.edges if s in kept and o in kept)
    report = ConversionReport(
        source, target, counts, [*lift_diags, *carry_diags, *lower_diags],
        edges_in=len(canon.edges), edges_out=edges_out,
    )
    return output, report


def convert_file(
    path: str | Path,
    source: VocabId | str,
    target: VocabId | str,
    registry: VocabRegistry | None = None,
    format: str | None = None,
) -> tuple[TripleGraph, ConversionReport]:
    """Read and convert an RDF file; the format follows the extension unless given."""
    data = Path(path).read_bytes()
    graph = parse(data, format or format_for_path(str(path)))
    return convert(graph, source, target, registry)


__all__ = [
    "ConversionReport", "convert", "convert_file", "from_canonical", "passthrough_triples", "to_canonical",
]
