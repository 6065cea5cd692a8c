"""Structural checks on a canonical graph.

Rules (all "at least one" obligations):

* R1 every Run executes some Implementation
* R2 every HyperParameterSetting sets the value of some HyperParameter
* R3 every ModelEvaluation evaluates a Model and is specified by a measure
* R4 every Run sits in an Experiment that is part of a Study
* R5 every Implementation executed by a Run implements an Algorithm
* R6 every entity id is an absolute IRI

``minimal`` runs R1-R3; ``strict`` runs all six.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .diagnostics import Code, Diagnostic, subject_text
from .model import CanonicalClass as C
from .model import CanonicalGraph
from .model import CanonicalRelation as R
from .rdf.terms import Iri

RULES = ("R1", "R2", "R3", "R4", "R5", "R6")


@dataclass(frozen=True)
class Profile:
    name: str
    rules: tuple[str, ...]


MINIMAL = Profile("minimal", ("R1", "R2", "R3"))
STRICT = Profile("strict", RULES)
PROFILES = {p.name: p for p in (MINIMAL, STRICT)}


def _r1(graph: CanonicalGraph) -> Iterator[Diagnostic]:
    for run in graph.entities_of(C.Run):
        if not graph.edges_from(run.id, R.executes):
            yield Diagnostic(Code.MISSING_LINK, subject_text(run.id), "Run executes no Implementation", rule="R1")


def _r2(graph: CanonicalGraph) -> Iterator[Diagnostic]:
    for setting in graph.entities_of(C.HyperParameterSetting):
        if not graph.edges_from(setting.id, R.setsValueOf):
            yield Diagnostic(
                Code.MISSING_LINK, subject_text(setting.id),
                "HyperParameterSetting sets the value of no HyperParameter", rule="R2",
            )


def _r3(graph: CanonicalGraph) -> Iterator[Diagnostic]:
    for evaluation in graph.entities_of(C.ModelEvaluation):
        missing = [r.value for r in (R.evaluates, R.specifiedBy) if not graph.edges_from(evaluation.id, r)]
        if missing:
            yield Diagnostic(
                Code.MISSING_LINK, subject_text(evaluation.id),
                f"ModelEvaluation lacks {' and '.join(missing)}", rule="R3",
            )


def _r4(graph: CanonicalGraph) -> Iterator[Diagnostic]:
    for run in graph.entities_of(C.Run):
        placed = False
        for parent, _, _ in graph.edges_to(run.id, R.hasPart):
            if graph.get(parent).cls is not C.Experiment:
                continue
            if any(graph.get(s).cls is C.Study for s, _, _ in graph.edges_to(parent, R.hasPart)):
                placed = True
                break
        if not placed:
            yield Diagnostic(
                Code.BAD_GRANULARITY, subject_text(run.id),
                "Run is not part of an Experiment within a Study", rule="R4",
            )


def _r5(graph: CanonicalGraph) -> Iterator[Diagnostic]:
    referenced = dict.fromkeys(
        impl for run in graph.entities_of(C.Run) for _, _, impl in graph.edges_from(run.id, R.executes)
    )
    for impl in referenced:
        if not graph.edges_from(impl, R.implements):
            yield Diagnostic(
                Code.MISSING_LINK, subject_text(impl),
                "Implementation executed by a Run implements no Algorithm", rule="R5",
            )


def _r6(graph: CanonicalGraph) -> Iterator[Diagnostic]:
    for entity in graph.entities:
        if not isinstance(entity.id, Iri):
            yield Diagnostic(
                Code.NON_ABSOLUTE_ID, subject_text(entity.id),
                f"{entity.cls} id is not an absolute IRI", rule="R6",
            )


_CHECKS: dict[str, Callable[[CanonicalGraph], Iterable[Diagnostic]]] = {
    "R1": _r1, "R2": _r2, "R3": _r3, "R4": _r4, "R5": _r5, "R6": _r6,
}


def validate(
    graph: CanonicalGraph,
    profile: Profile | str = MINIMAL,
    disabled: Iterable[str] = (),
) -> list[Diagnostic]:
    """Run the profile's rules in order; ``disabled`` switches rules off.

    The graph is never modified.
    """
    if isinstance(profile, str):
        try:
            profile = PROFILES[profile]
        except KeyError:
            raise ValueError(f"unknown profile {profile!r}") from None
    off = set(disabled)
    unknown = off - set(RULES)
    if unknown:
        raise ValueError(f"unknown rule(s): {', '.join(sorted(unknown))}")
    out: list[Diagnostic] = []
    for rule in profile.rules:
        if rule in off:
            continue
        out.extend(_CHECKS[rule](graph))
    return out
