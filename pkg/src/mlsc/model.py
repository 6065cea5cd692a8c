"""The canonical ML-Schema entity graph used as the conversion pivot."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .rdf.terms import BlankNode, Iri, Literal, Node


class CanonicalClass(str, Enum):
    """The 21 ML-Schema core classes, in mapping-table row order."""

    Task = "Task"
    Algorithm = "Algorithm"
    Software = "Software"
    Implementation = "Implementation"
    HyperParameter = "HyperParameter"
    HyperParameterSetting = "HyperParameterSetting"
    Study = "Study"
    Experiment = "Experiment"
    Run = "Run"
    Data = "Data"
    Dataset = "Dataset"
    Feature = "Feature"
    DataCharacteristic = "DataCharacteristic"
    DatasetCharacteristic = "DatasetCharacteristic"
    FeatureCharacteristic = "FeatureCharacteristic"
    Model = "Model"
    ModelCharacteristic = "ModelCharacteristic"
    ModelEvaluation = "ModelEvaluation"
    EvaluationMeasure = "EvaluationMeasure"
    EvaluationSpecification = "EvaluationSpecification"
    EvaluationProcedure = "EvaluationProcedure"

    def __str__(self) -> str:
        return self.value

    @property
    def rank(self) -> int:
        return _CLASS_ORDER[self]


_CLASS_ORDER = {c: i for i, c in enumerate(CanonicalClass)}


class CanonicalRelation(str, Enum):
    implements = "implements"
    executes = "executes"
    achieves = "achieves"
    hasInput = "hasInput"
    hasOutput = "hasOutput"
    hasHyperParameter = "hasHyperParameter"
    setsValueOf = "setsValueOf"
    hasPart = "hasPart"
    hasQuality = "hasQuality"
    hasFeature = "hasFeature"
    evaluates = "evaluates"
    specifiedBy = "specifiedBy"
    defines = "defines"
    implementedBy = "implementedBy"

    def __str__(self) -> str:
        return self.value

    @property
    def signature(self) -> frozenset[tuple[CanonicalClass, CanonicalClass]]:
        return SIGNATURES[self]


C = CanonicalClass
R = CanonicalRelation

# (domain, range) pairs each relation may connect
SIGNATURES: dict[CanonicalRelation, frozenset[tuple[CanonicalClass, CanonicalClass]]] = {
    R.implements: frozenset({(C.Implementation, C.Algorithm)}),
    R.executes: frozenset({(C.Run, C.Implementation)}),
    R.achieves: frozenset({(C.Run, C.Task)}),
    R.hasInput: frozenset({(C.Run, C.Data), (C.Run, C.Dataset)}),
    R.hasOutput: frozenset({(C.Run, C.Model), (C.Run, C.ModelEvaluation)}),
    R.hasHyperParameter: frozenset({(C.Implementation, C.HyperParameter)}),
    R.setsValueOf: frozenset({(C.HyperParameterSetting, C.HyperParameter)}),
    R.hasPart: frozenset({
        (C.Study, C.Experiment),
        (C.Experiment, C.Run),
        (C.Run, C.HyperParameterSetting),
    }),
    R.hasQuality: frozenset({
        (C.Data, C.DataCharacteristic),
        (C.Dataset, C.DatasetCharacteristic),
        (C.Feature, C.FeatureCharacteristic),
        (C.Model, C.ModelCharacteristic),
    }),
    R.hasFeature: frozenset({(C.Dataset, C.Feature)}),
    R.evaluates: frozenset({(C.ModelEvaluation, C.Model)}),
    R.specifiedBy: frozenset({(C.ModelEvaluation, C.EvaluationMeasure)}),
    R.defines: frozenset({
        (C.EvaluationSpecification, C.EvaluationMeasure),
        (C.EvaluationSpecification, C.EvaluationProcedure),
    }),
    R.implementedBy: frozenset({(C.Software, C.Implementation)}),
}


_BY_PAIR: dict[tuple[CanonicalClass, CanonicalClass], tuple[CanonicalRelation, ...]] = {}
for _rel, _pairs in SIGNATURES.items():
    for _pair in _pairs:
        _BY_PAIR[_pair] = _BY_PAIR.get(_pair, ()) + (_rel,)


def relations_for(domain: CanonicalClass, range_: CanonicalClass) -> list[CanonicalRelation]:
    """Relations whose signature admits the ``(domain, range)`` pair."""
    return list(_BY_PAIR.get((domain, range_), ()))


class ModelError(Exception):
    pass


class DuplicateId(ModelError):
    pass


class UnknownId(ModelError):
    pass


class SignatureViolation(ModelError):
    pass


class CycleViolation(ModelError):
    pass


def _as_node(value: Node | str) -> Node:
    if isinstance(value, (Iri, BlankNode)):
        return value
    if isinstance(value, str) and value.startswith("_:"):
        return BlankNode(value[2:])
    return Iri(value)


@dataclass(frozen=True)
class CanonicalEntity:
    id: Node
    cls: CanonicalClass
    literals: dict[Iri, tuple[Literal, ...]] = field(default_factory=dict, hash=False)


Edge = tuple[Node, CanonicalRelation, Node]


class CanonicalGraph:
    """Typed entities and relation edges over the 21 canonical classes.

    Every edge satisfies its relation signature and ``hasPart`` edges stay
    acyclic.  Entities and edges iterate in insertion order.  ``provenance``
    records the source vocabulary term each entity was lifted from.
    """

    def __init__(self) -> None:
        self._entities: dict[Node, CanonicalEntity] = {}
        self._edges: dict[Edge, None] = {}
        self.provenance: dict[Node, str] = {}

    @property
    def entities(self) -> list[CanonicalEntity]:
        return list(self._entities.values())

    @property
    def edges(self) -> list[Edge]:
        return list(self._edges)

    def __len__(self) -> int:
        return len(self._entities)

    def __contains__(self, node: object) -> bool:
        try:
            return _as_node(node) in self._entities
        except (ValueError, TypeError):
            return False

    def __eq__(self, other: object) -> bool:
        # provenance is bookkeeping, not content
        if not isinstance(other, CanonicalGraph):
            return NotImplemented
        return (
            {e.id: (e.cls, e.literals) for e in self._entities.values()}
            == {e.id: (e.cls, e.literals) for e in other._entities.values()}
            and set(self._edges) == set(other._edges)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"CanonicalGraph({len(self._entities)} entities, {len(self._edges)} edges)"

    def get(self, node: Node | str) -> CanonicalEntity:
        key = _as_node(node)
        try:
            return self._entities[key]
        except KeyError:
            raise UnknownId(f"no entity {key}") from None

    def add_entity(self, cls: CanonicalClass | str, node: Node | str) -> CanonicalEntity:
        cls = CanonicalClass(cls)
        key = _as_node(node)
        if key in self._entities:
            raise DuplicateId(f"entity {key} already exists")
        entity = CanonicalEntity(key, cls, {})
        self._entities[key] = entity
        return entity

    def add_literal(self, node: Node | str, prop: Iri | str, value: Literal) -> None:
        entity = self.get(node)
        prop = prop if isinstance(prop, Iri) else Iri(prop)
        values = entity.literals.get(prop, ())
        if value not in values:
            entity.literals[prop] = values + (value,)

    def link(self, source: Node | str, relation: CanonicalRelation | str, target: Node | str) -> None:
        """Record ``source --relation--> target``; repeated calls are no-ops.

        For ``hasPart`` the cycle check runs before the signature check, so a
        back edge is reported as a cycle rather than a signature mismatch.
        """
        relation = CanonicalRelation(relation)
        src, dst = self.get(source), self.get(target)
        edge = (src.id, relation, dst.id)
        if edge in self._edges:
            return
        if relation is CanonicalRelation.hasPart and self._reaches(dst.id, src.id):
            raise CycleViolation(f"{src.id} hasPart {dst.id} would close a hasPart cycle")
        if (src.cls, dst.cls) not in SIGNATURES[relation]:
            raise SignatureViolation(f"{relation} does not connect {src.cls} to {dst.cls}")
        self._edges[edge] = None

    def _reaches(self, start: Node, goal: Node) -> bool:
        stack, seen = [start], set()
        while stack:
            node = stack.pop()
            if node == goal:
                return True
            if node in seen:
                continue
            seen.add(node)
            stack.extend(t for s, r, t in self._edges if s == node and r is CanonicalRelation.hasPart)
        return False

    def entities_of(self, cls: CanonicalClass | str) -> list[CanonicalEntity]:
        cls = CanonicalClass(cls)
        return [e for e in self._entities.values() if e.cls is cls]

    def edges_from(self, node: Node, relation: CanonicalRelation | None = None) -> list[Edge]:
        return [e for e in self._edges if e[0] == node and (relation is None or e[1] is relation)]

    def edges_to(self, node: Node, relation: CanonicalRelation | None = None) -> list[Edge]:
        return [e for e in self._edges if e[2] == node and (relation is None or e[1] is relation)]
