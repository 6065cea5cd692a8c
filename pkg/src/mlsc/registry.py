"""Term mappings between ML-Schema and four ML/DM vocabularies.

The base table has one row per canonical class and one column per
vocabulary (OntoDM-core, DMOP, Exposé, MEX).  A cell holds either the
vocabulary's term(s) for that class or N/A.  OntoDM, DMOP and Exposé cells
are human-readable labels; MEX cells are prefixed names.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Mapping

from .model import CanonicalClass
from .rdf.terms import PREFIX_LABEL, Iri, is_absolute_iri

DEFAULT_CANONICAL_NAMESPACE = "http://www.w3.org/ns/mls#"


class VocabId(str, Enum):
    MLSchema = "MLSchema"
    OntoDM = "OntoDM"
    DMOP = "DMOP"
    Expose = "Expose"
    MEX = "MEX"

    def __str__(self) -> str:
        return self.value

    @property
    def cli_name(self) -> str:
        return self.value.lower()

    @classmethod
    def parse(cls, text: str | VocabId) -> VocabId:
        """Case-insensitive lookup; accepts ``exposé`` for Exposé."""
        if isinstance(text, VocabId):
            return text
        key = text.strip().lower().replace("é", "e")
        for vocab in cls:
            if vocab.cli_name == key:
                return vocab
        raise ValueError(f"unknown vocabulary {text!r}; expected one of {', '.join(v.cli_name for v in cls)}")


SOURCE_VOCABS = (VocabId.OntoDM, VocabId.DMOP, VocabId.Expose, VocabId.MEX)


@dataclass(frozen=True)
class MappingCell:
    """Either N/A (no terms) or a non-empty ordered tuple of terms."""

    terms: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        cleaned = tuple(t.strip() for t in self.terms)
        if any(not t for t in cleaned):
            raise ValueError("mapping terms must be non-empty")
        object.__setattr__(self, "terms", cleaned)

    @property
    def is_na(self) -> bool:
        return not self.terms

    @property
    def first(self) -> str:
        if self.is_na:
            raise ValueError("N/A cell has no terms")
        return self.terms[0]

    def __contains__(self, term: object) -> bool:
        return isinstance(term, str) and term.strip() in self.terms

    def __str__(self) -> str:
        return "N/A" if self.is_na else ", ".join(self.terms)


NA = MappingCell()

# Rows in canonical order; columns OntoDM, DMOP, Expose, MEX.  None is N/A.
# Exposé's ModelCharacteristic cell is printed as "Model Structure,
# Parameter, ..."; only the two named terms are kept.
_TABLE: dict[str, tuple] = {
    "Task": ("Data mining task", "DM-Task", "Task", "mexcore:ExperimentConfiguration"),
    "Algorithm": ("Data mining algorithm", "DM-Algorithm", "Algorithm", "mexalgo:Algorithm"),
    "Software": ("Data mining software", "DM-Software", None, "mexalgo:Tool"),
    "Implementation": ("Data mining algorithm", "DM-Operator", "Algorithm implementation", None),
    "HyperParameter": ("Parameter", "Parameter", "Parameter", "mexalgo:HyperParameter"),
    "HyperParameterSetting": ("Parameter setting", "OpParameterSetting", "Parameter setting", None),
    "Study": ("Investigation", None, None, "mexcore:Experiment"),
    "Experiment": (None, "DM-Experiment", "Experiment", None),
    "Run": ("Data mining alg. execution", "DM-Operation", "Algorithm execution", "mexcore:Execution"),
    "Data": ("Data item", "DM-Data", None, "mexcore:Example"),
    "Dataset": ("DM dataset", "DataSet", "Dataset", "mexcore:Dataset"),
    "Feature": (None, "Feature", None, "mexcore:Feature"),
    "DataCharacteristic": ("Data specification", "DataCharacteristic", "Dataset specification", None),
    "DatasetCharacteristic": ("Dataset specification", "DataSetCharacteristic", "Data quality", None),
    "FeatureCharacteristic": ("Feature specification", "FeatureCharacteristic", None, None),
    "Model": ("Generalization", "DM-Hypothesis", "Model", "mexcore:Model"),
    "ModelCharacteristic": (
        "Generalization quality", "HypothesisCharacteristic", ("Model Structure", "Parameter"), None,
    ),
    "ModelEvaluation": ("Generalization evaluation", "ModelPerformance", "Evaluation", None),
    "EvaluationMeasure": (
        "Evaluation datum", "ModelEvaluationMeasure", "Evaluation measure", "mexperf:PerformanceMeasure",
    ),
    "EvaluationSpecification": (None, None, None, None),
    "EvaluationProcedure": ("Evaluation algorithm", "ModelEvaluationAlgorithm", "Performance Estimation", None),
}

# Only the MEX roots are published; the separators and the other three
# namespaces are defaults that overlays may replace.
_NAMESPACES: dict[VocabId, tuple[tuple[str, str], ...]] = {
    VocabId.OntoDM: (("ontodm", "http://www.ontodm.com/OntoDM-core/"),),
    VocabId.DMOP: (("dmop", "http://www.e-lico.eu/ontologies/dmo/DMOP/DMOP.owl#"),),
    VocabId.Expose: (("expose", "http://expdb.cs.kuleuven.be/expdb/expose.owl#"),),
    VocabId.MEX: (
        ("mexalgo", "http://mex.aksw.org/mex-algo#"),
        ("mexcore", "http://mex.aksw.org/mex-core#"),
        ("mexperf", "http://mex.aksw.org/mex-perf#"),
        ("prov", "http://www.w3.org/ns/prov#"),
    ),
}

_WORD = re.compile(r"[A-Za-z0-9]+")
_PREFIXED = re.compile(r"([A-Za-z][A-Za-z0-9_\-]*)?:(\S*)")


def camel_case(label: str) -> str:
    """``"Data mining alg. execution"`` -> ``"DataMiningAlgExecution"``.

    Only the first letter of each word is upper-cased, so ``DM-Task``
    becomes ``DMTask`` and ``OpParameterSetting`` is unchanged.
    """
    return "".join(w[0].upper() + w[1:] for w in _WORD.findall(label))


class OverlayParseError(ValueError):
    def __init__(self, message: str, line: int | None = None) -> None:
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class UnknownCanonicalClass(OverlayParseError):
    pass


@dataclass(frozen=True)
class VocabRegistry:
    """Immutable mapping table plus per-vocabulary namespace lists."""

    table: Mapping[tuple[CanonicalClass, VocabId], MappingCell]
    namespaces: Mapping[VocabId, tuple[tuple[str, Iri], ...]]
    _exact: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _local: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _label: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _lowered: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", MappingProxyType(dict(self.table)))
        object.__setattr__(self, "namespaces", MappingProxyType(dict(self.namespaces)))
        for cls in CanonicalClass:
            for vocab in SOURCE_VOCABS:
                if (cls, vocab) not in self.table:
                    raise ValueError(f"missing mapping cell for ({cls}, {vocab})")
        if not self.namespaces.get(VocabId.MLSchema):
            raise ValueError("the canonical vocabulary needs a namespace")
        for vocab in VocabId:
            exact: dict[str, list] = {}
            local: dict[str, list] = {}
            label: dict[str, list] = {}
            for cls in CanonicalClass:
                for term in self.lookup_forward(cls, vocab).terms:
                    if vocab is VocabId.MLSchema or self._is_prefixed(term, vocab):
                        exact.setdefault(self.term_iri(term, vocab).value, []).append((cls, term))
                    else:
                        local.setdefault(camel_case(term), []).append((cls, term))
                        label.setdefault(term, []).append((cls, term))
            self._exact[vocab] = exact
            self._local[vocab] = local
            self._label[vocab] = label
        for vocab in VocabId:
            for cls in CanonicalClass:
                cell = self.lookup_forward(cls, vocab)
                self._lowered[(cls, vocab)] = None if cell.is_na else self.term_iri(cell.first, vocab)

    @property
    def canonical_namespace(self) -> str:
        return self.namespaces[VocabId.MLSchema][0][1].value

    def prefixes(self, vocab: VocabId) -> dict[str, Iri]:
        return dict(self.namespaces.get(vocab, ()))

    def lookup_forward(self, cls: CanonicalClass | str, vocab: VocabId | str) -> MappingCell:
        cls, vocab = CanonicalClass(cls), VocabId.parse(vocab)
        if vocab is VocabId.MLSchema:
            return MappingCell((cls.value,))
        return self.table[(cls, vocab)]

    def lookup_reverse(self, term: str, vocab: VocabId | str) -> frozenset[CanonicalClass]:
        vocab = VocabId.parse(vocab)
        return frozenset(c for c in CanonicalClass if term in self.lookup_forward(c, vocab))

    def _is_prefixed(self, term: str, vocab: VocabId) -> bool:
        m = _PREFIXED.fullmatch(term)
        return m is not None and (m.group(1) or "") in self.prefixes(vocab)

    def term_iri(self, term: str, vocab: VocabId | str) -> Iri:
        """IRI for a cell term: prefixed names expand, labels are CamelCased."""
        vocab = VocabId.parse(vocab)
        if vocab is VocabId.MLSchema:
            return Iri(self.canonical_namespace + term)
        if self._is_prefixed(term, vocab):
            prefix, local = _PREFIXED.fullmatch(term).groups()
            return Iri(self.prefixes(vocab)[prefix or ""].value + local)
        namespaces = self.namespaces.get(vocab)
        if not namespaces:
            raise ValueError(f"{vocab} has no namespace to mint IRIs in")
        return Iri(namespaces[0][1].value + camel_case(term))

    def type_iri(self, cls: CanonicalClass, vocab: VocabId) -> Iri | None:
        """The IRI ``cls`` lowers to in ``vocab`` (first term), or None for N/A."""
        try:
            return self._lowered[(cls, vocab)]
        except KeyError:
            return self._lowered[(CanonicalClass(cls), VocabId.parse(vocab))]

    def match_type(
        self, type_iri: Iri, vocab: VocabId | str, labels: Iterable[str] = ()
    ) -> list[tuple[CanonicalClass, str]]:
        """``(class, term)`` pairs whose cell in ``vocab`` matches a type IRI.

        Prefixed-name cells (and the canonical column) match on the full
        IRI.  Label cells match when the IRI's local name equals the
        CamelCased label, or when one of ``labels`` (the type's rdfs:label
        values) equals the label exactly.  Results follow class order.
        """
        vocab = VocabId.parse(vocab)
        found = list(self._exact[vocab].get(type_iri.value, ()))
        found += self._local[vocab].get(type_iri.local_name, ())
        for text in labels:
            found += self._label[vocab].get(text, ())
        unique = dict.fromkeys(found)
        return sorted(unique, key=lambda pair: pair[0].rank)

    def safe_classes(self, vocab: VocabId | str) -> list[CanonicalClass]:
        """Classes that survive a lower-then-lift trip through ``vocab`` unambiguously."""
        vocab = VocabId.parse(vocab)
        safe = []
        for cls in CanonicalClass:
            iri = self.type_iri(cls, vocab)
            if iri is not None and {c for c, _ in self.match_type(iri, vocab)} == {cls}:
                safe.append(cls)
        return safe


def default_registry(canonical_namespace: str | None = None) -> VocabRegistry:
    """The built-in table; ``canonical_namespace`` replaces the ``mls`` namespace."""
    ns = canonical_namespace or DEFAULT_CANONICAL_NAMESPACE
    if not is_absolute_iri(ns):
        raise ValueError(f"canonical namespace must be an absolute IRI: {ns!r}")
    table = {}
    for row, cells in _TABLE.items():
        for vocab, value in zip(SOURCE_VOCABS, cells):
            if value is None:
                table[(CanonicalClass(row), vocab)] = NA
            elif isinstance(value, tuple):
                table[(CanonicalClass(row), vocab)] = MappingCell(value)
            else:
                table[(CanonicalClass(row), vocab)] = MappingCell((value,))
    namespaces = {v: tuple((p, Iri(i)) for p, i in pairs) for v, pairs in _NAMESPACES.items()}
    namespaces[VocabId.MLSchema] = (("mls", Iri(ns)),)
    return VocabRegistry(table, namespaces)


def _strip_comment(value: str) -> str:
    # '#' is legal inside IRIs, so only whitespace-preceded '#' opens a comment
    return re.split(r"\s#", value, maxsplit=1)[0].strip()


def load_vocab_overlay(registry: VocabRegistry, text: str | bytes) -> VocabRegistry:
    """Return a new registry with the overlay's cells and namespaces applied.

    Overlay lines::

        # comment
        vocab.MEX.Implementation = mexalgo:AlgorithmImplementation | mexalgo:Impl
        vocab.OntoDM.Experiment = NA
        ns.DMOP.dmop = <http://example.org/dmop#>

    The canonical column is fixed; only its namespace may be overridden.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise OverlayParseError(f"overlay is not valid UTF-8: {exc}") from None
    table = dict(registry.table)
    namespaces = {v: list(pairs) for v, pairs in registry.namespaces.items()}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise OverlayParseError("expected 'key = value'", lineno)
        parts = key.strip().split(".")
        if len(parts) != 3 or parts[0] not in ("vocab", "ns"):
            raise OverlayParseError(f"malformed key {key.strip()!r}", lineno)
        kind, vocab_text, name = (p.strip() for p in parts)
        try:
            vocab = VocabId.parse(vocab_text)
        except ValueError as exc:
            raise OverlayParseError(str(exc), lineno) from None
        value = value.strip()
        if kind == "ns":
            if value.startswith("<"):
                end = value.find(">")
                if end < 0 or _strip_comment(" " + value[end + 1:]):
                    raise OverlayParseError("malformed <IRI>", lineno)
                value = value[1:end]
            else:
                value = _strip_comment(value)
            if PREFIX_LABEL.fullmatch(name) is None:
                raise OverlayParseError(f"invalid prefix label {name!r}", lineno)
            if not is_absolute_iri(value):
                raise OverlayParseError(f"not an absolute IRI: {value!r}", lineno)
            pairs = namespaces.setdefault(vocab, [])
            for i, (prefix, _) in enumerate(pairs):
                if prefix == name:
                    pairs[i] = (name, Iri(value))
                    break
            else:
                pairs.append((name, Iri(value)))
            continue
        try:
            cls = CanonicalClass(name)
        except ValueError:
            raise UnknownCanonicalClass(f"unknown canonical class {name!r}", lineno) from None
        if vocab is VocabId.MLSchema:
            raise OverlayParseError("canonical terms cannot be remapped", lineno)
        value = _strip_comment(value)
        if value == "NA":
            table[(cls, vocab)] = NA
        else:
            terms = [t.strip() for t in value.split("|")]
            if not value or any(not t for t in terms):
                raise OverlayParseError("empty term in cell", lineno)
            table[(cls, vocab)] = MappingCell(tuple(terms))
    return VocabRegistry(table, {v: tuple(p) for v, p in namespaces.items()})
