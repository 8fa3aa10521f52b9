"""Turn resolved keywords into executable query plans.

A plan has two parts:

* per-keyword info queries - everything the system knows how to say
  about a single entity of a given kind (equivalents, disjoints, subs,
  membership, annotations, domains/ranges);
* combination queries - joint questions asked when two or three
  keywords resolve inside the same ontology (how are two classes
  linked, which classes does a property connect, does a class contain
  an instance, ...).  Four or more keywords fall back to info-only.

A keyword that resolves to several entities (or kinds) fans out into
one kind assignment per choice, capped at 16 assignments with direct
name matches taking precedence; the union of their combination queries
is deduplicated into a single plan.

A facet narrows the plan to one query tag; ``ALL`` keeps everything.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .rdf import EntityKind, Iri, PrimitivePredicate, TriplePattern, Var
from .rdf import Bgp
from .resolver import Match, ResolvedKeyword, Tier

ALL = "ALL"

_ASSIGNMENT_CAP = 16


class IncompatibleFacetError(Exception):
    """The selected facet is illegal for every resolved entity."""

    def __init__(self, facet: str, kinds: Sequence[EntityKind]):
        self.facet = facet
        self.kinds = tuple(kinds)
        names = sorted(k.value for k in self.kinds)
        super().__init__(f"facet {facet!r} applies to none of {names}")


class InfoTag(enum.Enum):
    SUB_CLASSES = "SubClasses"
    EQUIVALENT_CLASSES = "EquivalentClasses"
    DISJOINT_CLASSES = "DisjointClasses"
    INSTANCES = "Instances"
    ANNOTATION = "Annotation"
    SUB_PROPERTIES = "SubProperties"
    EQUIVALENT_PROPERTIES = "EquivalentProperties"
    DISJOINT_PROPERTIES = "DisjointProperties"
    INVERSE_PROPERTIES = "InverseProperties"
    DOMAINS_AND_RANGES = "DomainsAndRanges"
    SAME_INSTANCES = "SameInstances"
    DIFFERENT_INSTANCES = "DifferentInstances"
    INSTANCE_CLASSES = "InstanceClasses"
    LINK_BETWEEN_CLASSES = "LinkBetweenClasses"
    CLASS_CONTAINS_INSTANCE = "ClassContainsInstance"
    DOMAIN_OF_CLASS_VIA = "DomainOfClassVia"
    RANGE_OF_CLASS_VIA = "RangeOfClassVia"


@dataclass(frozen=True)
class InfoQuery:
    tag: InfoTag
    subject: Iri
    ontology_id: str
    bgp: Bgp
    via_property: Optional[Iri] = None


@dataclass(frozen=True)
class KeywordQueries:
    surface: str
    queries: tuple[InfoQuery, ...]


@dataclass(frozen=True)
class QueryPlan:
    per_keyword: tuple[KeywordQueries, ...]
    combinations: tuple[InfoQuery, ...]

    def all_queries(self) -> tuple[InfoQuery, ...]:
        return tuple(
            q for kw in self.per_keyword for q in kw.queries
        ) + self.combinations


_X = Var("x")
_Y = Var("y")
_P = Var("p")

_INFO_TAGS: dict[EntityKind, tuple[InfoTag, ...]] = {
    EntityKind.CLASS: (
        InfoTag.SUB_CLASSES,
        InfoTag.EQUIVALENT_CLASSES,
        InfoTag.DISJOINT_CLASSES,
        InfoTag.INSTANCES,
        InfoTag.ANNOTATION,
    ),
    EntityKind.OBJECT_PROPERTY: (
        InfoTag.SUB_PROPERTIES,
        InfoTag.EQUIVALENT_PROPERTIES,
        InfoTag.DISJOINT_PROPERTIES,
        InfoTag.INVERSE_PROPERTIES,
        InfoTag.DOMAINS_AND_RANGES,
        InfoTag.ANNOTATION,
    ),
    EntityKind.DATA_PROPERTY: (
        InfoTag.SUB_PROPERTIES,
        InfoTag.EQUIVALENT_PROPERTIES,
        InfoTag.DISJOINT_PROPERTIES,
        InfoTag.DOMAINS_AND_RANGES,
        InfoTag.ANNOTATION,
    ),
    EntityKind.INSTANCE: (
        InfoTag.SAME_INSTANCES,
        InfoTag.DIFFERENT_INSTANCES,
        InfoTag.INSTANCE_CLASSES,
        InfoTag.ANNOTATION,
    ),
}

# Info tags asking "which ?x stands in <predicate> to the entity".
_INCOMING = {
    InfoTag.SUB_CLASSES: PrimitivePredicate.SUB_CLASS_OF,
    InfoTag.EQUIVALENT_CLASSES: PrimitivePredicate.EQUIVALENT_CLASS,
    InfoTag.DISJOINT_CLASSES: PrimitivePredicate.DISJOINT_CLASS,
    InfoTag.INSTANCES: PrimitivePredicate.INSTANCE_OF,
    InfoTag.SUB_PROPERTIES: PrimitivePredicate.SUB_PROPERTY,
    InfoTag.EQUIVALENT_PROPERTIES: PrimitivePredicate.EQUIVALENT_PROPERTY,
    InfoTag.DISJOINT_PROPERTIES: PrimitivePredicate.DISJOINT_PROPERTY,
    InfoTag.INVERSE_PROPERTIES: PrimitivePredicate.INVERSE_OF,
    InfoTag.SAME_INSTANCES: PrimitivePredicate.SAME_AS,
    InfoTag.DIFFERENT_INSTANCES: PrimitivePredicate.DIFFERENT_FROM,
}

_TIER_ORDER = {Tier.DIRECT: 0, Tier.SYNONYM: 1, Tier.LABEL: 2}


def legal_facets(kind: EntityKind) -> tuple[str, ...]:
    """Facet tags selectable for a given entity kind, ALL last."""
    return tuple(t.value for t in _INFO_TAGS[kind]) + (ALL,)


def _info_queries(m: Match) -> list[InfoQuery]:
    e, oid = m.iri, m.ontology_id
    out: list[InfoQuery] = []
    for tag in _INFO_TAGS[m.kind]:
        if tag is InfoTag.ANNOTATION:
            out.append(InfoQuery(tag, e, oid, (TriplePattern(e, PrimitivePredicate.HAS_LABEL, _X),)))
            out.append(InfoQuery(tag, e, oid, (TriplePattern(e, PrimitivePredicate.HAS_COMMENT, _X),)))
        elif tag is InfoTag.DOMAINS_AND_RANGES:
            out.append(InfoQuery(tag, e, oid, (TriplePattern(_X, e, _Y),)))
        elif tag is InfoTag.INSTANCE_CLASSES:
            out.append(InfoQuery(tag, e, oid, (TriplePattern(e, PrimitivePredicate.INSTANCE_OF, _X),)))
        else:
            out.append(InfoQuery(tag, e, oid, (TriplePattern(_X, _INCOMING[tag], e),)))
    return out


def _link(a: Iri, b: Iri, oid: str) -> list[InfoQuery]:
    t = InfoTag.LINK_BETWEEN_CLASSES
    return [
        InfoQuery(t, a, oid, (TriplePattern(a, _P, b),)),
        InfoQuery(t, b, oid, (TriplePattern(b, _P, a),)),
    ]


def _range_via(c: Iri, p: Iri, oid: str) -> InfoQuery:
    return InfoQuery(InfoTag.RANGE_OF_CLASS_VIA, c, oid, (TriplePattern(c, p, _X),), p)


def _domain_via(c: Iri, p: Iri, oid: str) -> InfoQuery:
    return InfoQuery(InfoTag.DOMAIN_OF_CLASS_VIA, c, oid, (TriplePattern(_X, p, c),), p)


def _membership(c: Iri, i: Iri, oid: str) -> InfoQuery:
    return InfoQuery(InfoTag.CLASS_CONTAINS_INSTANCE, c, oid, (TriplePattern(i, PrimitivePredicate.INSTANCE_OF, c),))


def _domains_ranges(p: Iri, oid: str) -> InfoQuery:
    return InfoQuery(InfoTag.DOMAINS_AND_RANGES, p, oid, (TriplePattern(_X, p, _Y),))


def _instance_classes(i: Iri, oid: str) -> InfoQuery:
    return InfoQuery(InfoTag.INSTANCE_CLASSES, i, oid, (TriplePattern(i, PrimitivePredicate.INSTANCE_OF, _X),))


def _combination_queries(assignment: Sequence[Match]) -> list[InfoQuery]:
    """Combination rows for one kind assignment, all in one ontology."""
    oid = assignment[0].ontology_id
    classes = [m.iri for m in assignment if m.kind is EntityKind.CLASS]
    props = [
        m.iri
        for m in assignment
        if m.kind in (EntityKind.OBJECT_PROPERTY, EntityKind.DATA_PROPERTY)
    ]
    insts = [m.iri for m in assignment if m.kind is EntityKind.INSTANCE]
    shape = (len(classes), len(props), len(insts))

    if shape == (2, 0, 0):
        return _link(classes[0], classes[1], oid)
    if shape == (1, 1, 0):
        return [_range_via(classes[0], props[0], oid), _domain_via(classes[0], props[0], oid)]
    if shape == (1, 0, 1):
        return [_membership(classes[0], insts[0], oid)]
    if shape == (0, 2, 0) or shape == (0, 3, 0):
        return [_domains_ranges(p, oid) for p in props]
    if shape == (0, 0, 2) or shape == (0, 0, 3) or shape == (1, 0, 2):
        return [_instance_classes(i, oid) for i in insts]
    if shape == (2, 1, 0):
        p = props[0]
        return (
            [_domains_ranges(p, oid)]
            + [_range_via(c, p, oid) for c in classes]
            + [_domain_via(c, p, oid) for c in classes]
        )
    if shape == (2, 0, 1):
        i = insts[0]
        return [_instance_classes(i, oid)] + [_membership(c, i, oid) for c in classes]
    if shape == (1, 2, 0):
        c = classes[0]
        return (
            [_domains_ranges(p, oid) for p in props]
            + [_domain_via(c, p, oid) for p in props]
            + [_range_via(c, p, oid) for p in props]
        )
    # Remaining shapes are info-only per the combination tables:
    # three classes, any mix involving both a property and an instance.
    return []


def _group_combinations(resolved: Sequence[ResolvedKeyword]) -> list[InfoQuery]:
    by_ontology: dict[str, list[list[Match]]] = {}
    for rk in resolved:
        per: dict[str, list[Match]] = {}
        for m in rk.matches:
            per.setdefault(m.ontology_id, []).append(m)
        for oid, ms in per.items():
            by_ontology.setdefault(oid, []).append(ms)

    out: list[InfoQuery] = []
    for oid in sorted(by_ontology):
        groups = by_ontology[oid]
        if not 2 <= len(groups) <= 3:
            continue
        ranked = [
            sorted(ms, key=lambda m: (_TIER_ORDER[m.tier], m.iri.local_name))
            for ms in groups
        ]
        for assignment in itertools.islice(itertools.product(*ranked), _ASSIGNMENT_CAP):
            out.extend(_combination_queries(assignment))
    return out


def _dedup(queries: Iterable[InfoQuery]) -> tuple[InfoQuery, ...]:
    seen: set[InfoQuery] = set()
    out: list[InfoQuery] = []
    for q in queries:
        if q not in seen:
            seen.add(q)
            out.append(q)
    return tuple(out)


def plan(resolved: Sequence[ResolvedKeyword], facet: str = ALL) -> QueryPlan:
    """Build the full query plan for already-resolved keywords.

    Raises :class:`IncompatibleFacetError` when ``facet`` is neither
    ALL nor legal for at least one resolved entity kind.
    """
    if not resolved:
        raise ValueError("plan requires at least one resolved keyword")

    kinds = {m.kind for rk in resolved for m in rk.matches}
    if facet != ALL and not any(facet in legal_facets(k) for k in kinds):
        raise IncompatibleFacetError(facet, sorted(kinds, key=lambda k: k.value))

    def keep(q: InfoQuery) -> bool:
        return facet == ALL or q.tag.value == facet

    per_keyword = tuple(
        KeywordQueries(
            rk.surface,
            _dedup(q for m in rk.matches for q in _info_queries(m) if keep(q)),
        )
        for rk in resolved
    )
    combinations = _dedup(q for q in _group_combinations(resolved) if keep(q))
    return QueryPlan(per_keyword, combinations)
