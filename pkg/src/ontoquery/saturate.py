"""Forward-chaining saturation of asserted axioms to a fixpoint.

The rule set, applied until nothing new appears:

R1  SubClassOf transitivity
R2  SubProperty transitivity
R3  symmetry + transitivity of EquivalentClass / EquivalentProperty / SameAs
R4  every equivalence implies both subsumptions
R5  symmetry of DisjointClass / DisjointProperty / DifferentFrom
R6  InverseOf symmetry
R7  InstanceOf(x, C) and SubClassOf(C, D) imply InstanceOf(x, D)
R8  (x, P, y) between instances and InverseOf(P, Q) imply (y, Q, x)
R9  SubClassOf(A, B) and EquivalentClass(B, B') imply SubClassOf(A, B')
    (subsumed by R4 + R1, kept to pin the intent)

Reflexive self-facts (C = C in any flavour) are never stored, and the
implicit bottom class / bottom property subsumptions are not
materialized; both query backends therefore agree on what "all facts"
means. A class found both equivalent and disjoint to another is reported
as a DisjointnessViolation diagnostic; saturation still completes.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Union

from .ontology import Ontology
from .rdf import EntityKind, Iri, Lit, PrimitivePredicate, Triple, render_predicate

P = PrimitivePredicate

_SYMMETRIC = (P.DISJOINT_CLASS, P.DISJOINT_PROPERTY, P.DIFFERENT_FROM, P.INVERSE_OF)
_EQUIVALENCES = (P.EQUIVALENT_CLASS, P.EQUIVALENT_PROPERTY, P.SAME_AS)
_TRANSITIVE = (P.SUB_CLASS_OF, P.SUB_PROPERTY)
_EQ_TO_SUB = {P.EQUIVALENT_CLASS: P.SUB_CLASS_OF, P.EQUIVALENT_PROPERTY: P.SUB_PROPERTY}
# Predicates whose reflexive form is an identity tautology, never stored.
_NO_REFLEXIVE = set(_SYMMETRIC) | set(_EQUIVALENCES) | set(_TRANSITIVE)

_CLASHES = (
    (P.EQUIVALENT_CLASS, P.DISJOINT_CLASS),
    (P.EQUIVALENT_PROPERTY, P.DISJOINT_PROPERTY),
    (P.SAME_AS, P.DIFFERENT_FROM),
)


@dataclass(frozen=True)
class DisjointnessViolation:
    """A term derived as both equivalent and disjoint to some other term."""

    iri: Iri


@dataclass(frozen=True)
class SaturatedSet:
    base: frozenset[Triple]
    inferred: frozenset[Triple]
    diagnostics: tuple[DisjointnessViolation, ...] = ()

    @property
    def all(self) -> frozenset[Triple]:
        return self.base | self.inferred


def _rule_pass(triples: set[Triple], instances: set[Iri]) -> set[Triple]:
    """One full application of R1-R9 over the given facts. Returns only
    facts that are new with respect to the input."""
    by_pred: dict[PrimitivePredicate, set[tuple[Iri, Iri]]] = defaultdict(set)
    prop_assertions: list[Triple] = []
    for t in triples:
        if isinstance(t.p, PrimitivePredicate):
            if isinstance(t.o, Iri):
                by_pred[t.p].add((t.s, t.o))
        elif isinstance(t.o, Iri) and t.s in instances and t.o in instances:
            prop_assertions.append(t)

    new: set[Triple] = set()

    def emit(s: Iri, p: PrimitivePredicate, o: Iri) -> None:
        if s == o and p in _NO_REFLEXIVE:
            return
        t = Triple(s, p, o)
        if t not in triples:
            new.add(t)

    for pred in _SYMMETRIC:
        for a, b in by_pred[pred]:
            emit(b, pred, a)

    for pred in _EQUIVALENCES:
        pairs = by_pred[pred]
        succ = defaultdict(set)
        for a, b in pairs:
            emit(b, pred, a)
            succ[a].add(b)
        for a, b in pairs:
            for c in succ[b]:
                emit(a, pred, c)

    for eq_pred, sub_pred in _EQ_TO_SUB.items():
        for a, b in by_pred[eq_pred]:
            emit(a, sub_pred, b)
            emit(b, sub_pred, a)

    for pred in _TRANSITIVE:
        succ = defaultdict(set)
        for a, b in by_pred[pred]:
            succ[a].add(b)
        for a, b in by_pred[pred]:
            for c in succ[b]:
                emit(a, pred, c)

    # R9: substitute equivalents on the right of a subsumption.
    eq_succ = defaultdict(set)
    for a, b in by_pred[P.EQUIVALENT_CLASS]:
        eq_succ[a].add(b)
    for a, b in by_pred[P.SUB_CLASS_OF]:
        for c in eq_succ[b]:
            emit(a, P.SUB_CLASS_OF, c)

    # R7: propagate instances up the (saturated) class hierarchy.
    sup = defaultdict(set)
    for c, d in by_pred[P.SUB_CLASS_OF]:
        sup[c].add(d)
    for x, c in by_pred[P.INSTANCE_OF]:
        for d in sup[c]:
            emit(x, P.INSTANCE_OF, d)

    # R8: mirror instance-level assertions along property inverses.
    inverses = defaultdict(set)
    for p_iri, q_iri in by_pred[P.INVERSE_OF]:
        inverses[p_iri].add(q_iri)
    for t in prop_assertions:
        for q_iri in inverses.get(t.p, ()):
            cand = Triple(t.o, q_iri, t.s)
            if cand not in triples:
                new.add(cand)

    return new


def _instance_set(o: Ontology) -> set[Iri]:
    return {iri for iri, kind in o.entities.values() if kind is EntityKind.INSTANCE}


def saturate(o: Ontology) -> SaturatedSet:
    """Close the asserted triples under R1-R9 and collect diagnostics."""
    instances = _instance_set(o)
    facts: set[Triple] = set(o.asserted)
    while True:
        new = _rule_pass(facts, instances)
        if not new:
            break
        facts |= new

    diagnostics: list[DisjointnessViolation] = []
    flagged: set[Iri] = set()
    pairs_by_pred = defaultdict(set)
    for t in facts:
        if isinstance(t.p, PrimitivePredicate) and isinstance(t.o, Iri):
            pairs_by_pred[t.p].add((t.s, t.o))
    for eq_pred, dis_pred in _CLASHES:
        for pair in pairs_by_pred[eq_pred] & pairs_by_pred[dis_pred]:
            flagged.add(pair[0])
    for s, o_ in pairs_by_pred[P.DISJOINT_CLASS] | pairs_by_pred[P.DISJOINT_PROPERTY]:
        if s == o_:
            flagged.add(s)
    diagnostics = [DisjointnessViolation(i) for i in sorted(flagged, key=lambda i: i.local_name)]

    base = frozenset(o.asserted)
    return SaturatedSet(base=base, inferred=frozenset(facts) - base, diagnostics=tuple(diagnostics))


def is_saturated(triples: Union[frozenset[Triple], Iterable[Triple]], o: Ontology) -> bool:
    """True when one full rule pass over the triples adds nothing."""
    facts = set(triples)
    return not _rule_pass(facts, _instance_set(o))


def dump_inferred(s: SaturatedSet) -> str:
    """Diagnostic listing: one inferred triple per line, tab separated,
    sorted lexicographically so runs can be diffed."""
    lines = []
    for t in s.inferred:
        obj = t.o.local_name if isinstance(t.o, Iri) else f'"{t.o.value}"'
        lines.append(f"{t.s.local_name}\t{render_predicate(t.p)}\t{obj}")
    return "\n".join(sorted(lines))
