"""Core RDF vocabulary: IRIs, entity kinds, predicates, triples and patterns.

Everything here is immutable; ontologies, saturated sets and graphs are
built once and never mutated afterwards.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Union


class MalformedIriError(ValueError):
    """Raised for IRI text that does not fit the prefix#local shape."""


class UnknownPrefixError(ValueError):
    """Raised when a prefixed name uses an undeclared prefix label."""

    def __init__(self, label: str):
        super().__init__(f"unknown prefix label {label!r}")
        self.label = label


@dataclass(frozen=True, order=True)
class Iri:
    """An absolute IRI split into a namespace prefix and a local name.

    The full form is always ``prefix_iri + "#" + local_name``; the local
    name may not be empty nor contain '#' or whitespace.
    """

    prefix_iri: str
    local_name: str

    def __post_init__(self) -> None:
        if not self.local_name:
            raise MalformedIriError("empty local name")
        if "#" in self.local_name or any(c.isspace() for c in self.local_name):
            raise MalformedIriError(f"bad local name {self.local_name!r}")

    @property
    def full(self) -> str:
        return f"{self.prefix_iri}#{self.local_name}"

    def render(self) -> str:
        return f"<{self.full}>"


def parse_iri(text: str, prefix_map: dict[str, str]) -> Iri:
    """Parse ``<absolute>`` or ``label:local`` notation into an Iri.

    Absolute IRIs are split at the last '#'. Prefixed names look up the
    label in ``prefix_map`` (the empty label is a valid key). Blank node
    notation is rejected outright: this vocabulary has no anonymous terms.
    """
    if text.startswith("_:"):
        raise MalformedIriError("blank nodes are not supported")
    if text.startswith("<") and text.endswith(">"):
        inner = text[1:-1]
        if "#" not in inner:
            raise MalformedIriError(f"no fragment separator in {text!r}")
        prefix, local = inner.rsplit("#", 1)
        return Iri(prefix, local)
    if ":" in text:
        label, local = text.split(":", 1)
        if label not in prefix_map:
            raise UnknownPrefixError(label)
        return Iri(_strip_hash(prefix_map[label]), local)
    raise MalformedIriError(f"not an IRI: {text!r}")


def _strip_hash(iri: str) -> str:
    # Prefix declarations may carry a trailing '#'; normalize it away so
    # the full form never doubles the separator.
    return iri[:-1] if iri.endswith("#") else iri


class EntityKind(enum.Enum):
    CLASS = "Class"
    OBJECT_PROPERTY = "ObjectProperty"
    DATA_PROPERTY = "DataProperty"
    INSTANCE = "Instance"


class PrimitivePredicate(enum.Enum):
    """The fixed predicate vocabulary connecting ontology entities.

    TYPE_PROPERTY is reserved for property-characteristic axioms
    (functional, symmetric, ...) which the input grammar cannot express;
    no parser or rule ever produces it.
    """

    SUB_CLASS_OF = "SubClassOf"
    EQUIVALENT_CLASS = "EquivalentClass"
    DISJOINT_CLASS = "DisjointClass"
    INSTANCE_OF = "InstanceOf"
    HAS_LABEL = "HasLabel"
    HAS_COMMENT = "HasComment"
    SUB_PROPERTY = "SubProperty"
    EQUIVALENT_PROPERTY = "EquivalentProperty"
    DISJOINT_PROPERTY = "DisjointProperty"
    INVERSE_OF = "InverseOf"
    TYPE_PROPERTY = "TypeProperty"
    DOMAIN = "Domain"
    RANGE = "Range"
    SAME_AS = "SameAs"
    DIFFERENT_FROM = "DifferentFrom"

    def rel_type(self) -> str:
        """UPPER_SNAKE relationship-type rendering (SubClassOf -> SUB_CLASS_OF)."""
        return self.name


# A predicate is either primitive or an ontology-defined property.
Predicate = Union[PrimitivePredicate, Iri]


def render_predicate(p: Predicate) -> str:
    """Canonical surface form shared by both backends: UPPER_SNAKE for
    primitives, the verbatim local name for ontology properties."""
    if isinstance(p, PrimitivePredicate):
        return p.rel_type()
    return p.local_name


@dataclass(frozen=True, order=True)
class Lit:
    """A literal value with an optional datatype tag (string by default)."""

    value: str
    tag: str = "string"

    def __post_init__(self) -> None:
        if self.tag not in ("string", "integer", "decimal", "boolean"):
            raise ValueError(f"unknown datatype tag {self.tag!r}")


@dataclass(frozen=True, order=True)
class Var:
    """A query variable. Names carry no leading '?'."""

    name: str

    def __post_init__(self) -> None:
        if not self.name or not self.name.replace("_", "").isalnum():
            raise ValueError(f"bad variable name {self.name!r}")


# Pattern term positions: subject (Iri | Var), predicate (Predicate | Var),
# object (Iri | Var | Lit).
SubjectTerm = Union[Iri, Var]
PredicateTerm = Union[PrimitivePredicate, Iri, Var]
ObjectTerm = Union[Iri, Var, Lit]


@dataclass(frozen=True)
class Triple:
    """A ground fact: subject entity, predicate, object entity or literal."""

    s: Iri
    p: Predicate
    o: Union[Iri, Lit]

    def __post_init__(self) -> None:
        if isinstance(self.o, Lit) and isinstance(self.p, PrimitivePredicate):
            if self.p not in (
                PrimitivePredicate.HAS_LABEL,
                PrimitivePredicate.HAS_COMMENT,
                PrimitivePredicate.RANGE,
                PrimitivePredicate.TYPE_PROPERTY,
            ):
                raise ValueError(f"{self.p.value} cannot take a literal object")


@dataclass(frozen=True)
class TriplePattern:
    """A triple with variables allowed in any position.

    A fully constant pattern is legal and acts as a membership test.
    """

    s: SubjectTerm
    p: PredicateTerm
    o: ObjectTerm


# A basic graph pattern: conjunction of triple patterns, evaluated in order.
Bgp = tuple[TriplePattern, ...]


def pattern_vars(t: TriplePattern) -> tuple[Var, ...]:
    """Variables of one pattern in subject, predicate, object order."""
    out: list[Var] = []
    for term in (t.s, t.p, t.o):
        if isinstance(term, Var):
            out.append(term)
    return tuple(out)


def bgp_vars(q: Bgp) -> tuple[Var, ...]:
    """Distinct variables of a BGP in first-occurrence order."""
    seen: dict[Var, None] = {}
    for t in q:
        for v in pattern_vars(t):
            seen.setdefault(v)
    return tuple(seen)


@dataclass(frozen=True)
class PropertySignature:
    """Declared domain/range pairs for one ontology property.

    ``ranges`` holds class IRIs for object properties and datatype tags
    (as plain strings) for data properties.
    """

    prop: Iri
    domains: tuple[Iri, ...] = field(default_factory=tuple)
    ranges: tuple[Union[Iri, str], ...] = field(default_factory=tuple)
