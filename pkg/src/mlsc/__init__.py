"""Parse, validate and convert ML experiment metadata through ML-Schema.

Typical use::

    from mlsc import VocabId, convert_file

    graph, report = convert_file("myFile.ttl", VocabId.OntoDM, VocabId.MEX)
    print(report.summary())
"""

from .converter import ConversionReport, convert, convert_file, from_canonical, to_canonical
from .diagnostics import Code, Diagnostic, Severity
from .model import (
    CanonicalClass,
    CanonicalEntity,
    CanonicalGraph,
    CanonicalRelation,
    CycleViolation,
    DuplicateId,
    SignatureViolation,
    UnknownId,
)
from .registry import (
    MappingCell,
    OverlayParseError,
    UnknownCanonicalClass,
    VocabId,
    VocabRegistry,
    default_registry,
    load_vocab_overlay,
)
from .validator import MINIMAL, STRICT, Profile, validate

__version__ = "0.1.0"

__all__ = [
    "MINIMAL", "STRICT", "CanonicalClass", "CanonicalEntity", "CanonicalGraph", "CanonicalRelation",
    "Code", "ConversionReport", "CycleViolation", "Diagnostic", "DuplicateId", "MappingCell",
    "OverlayParseError", "Profile", "Severity", "SignatureViolation", "UnknownCanonicalClass", "UnknownId",
    "VocabId", "VocabRegistry", "convert", "convert_file", "default_registry", "from_canonical",
    "load_vocab_overlay", "to_canonical", "validate",
]
