"""Reader for a small Turtle subset producing a typed ontology.

Supported grammar, line oriented and UTF-8:

- full-line comments starting with ``#``
- ``@prefix label: <iri> .`` declarations; the labels ``""``, ``owl`` and
  ``rdfs`` must all be declared
- statements ``subject verb object (; verb object)* .``
- verbs: ``a``, the rdfs/owl axiom verbs listed in ``_AXIOM_VERBS``, or
  any declared property
- declarations via ``a``: ``owl:Class``, ``owl:ObjectProperty``,
  ``owl:DatatypeProperty``, ``owl:NamedIndividual``, or a class IRI
  (instance typing)
- string literals in double quotes; the only escapes are ``\\"`` and
  ``\\\\``; a data-property range is a quoted datatype tag such as
  ``"integer"``

Only asserted axioms are extracted; every inferred fact is the
saturator's business. Declarations are gathered in a first pass so
forward references are legal. Object-property domain/range signatures
additionally assert one (domain, property, range) triple per pair, the
class-level link both query backends rely on.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

from .rdf import (
    EntityKind,
    Iri,
    Lit,
    MalformedIriError,
    PrimitivePredicate,
    PropertySignature,
    Triple,
    parse_iri,
)

OWL_NS = "http://www.w3.org/2002/07/owl"

_DATATYPE_TAGS = ("string", "integer", "decimal", "boolean")
_REQUIRED_PREFIXES = ("", "owl", "rdfs")
_RESERVED_NAMES = ("Thing", "Nothing")

_KIND_DECLARATIONS = {
    "owl:Class": EntityKind.CLASS,
    "owl:ObjectProperty": EntityKind.OBJECT_PROPERTY,
    "owl:DatatypeProperty": EntityKind.DATA_PROPERTY,
    "owl:NamedIndividual": EntityKind.INSTANCE,
}

_AXIOM_VERBS = (
    "rdfs:subClassOf",
    "owl:equivalentClass",
    "owl:disjointWith",
    "rdfs:subPropertyOf",
    "owl:equivalentProperty",
    "owl:propertyDisjointWith",
    "owl:inverseOf",
    "rdfs:domain",
    "rdfs:range",
    "rdfs:label",
    "rdfs:comment",
    "owl:sameAs",
    "owl:differentFrom",
)


class OntoSyntaxError(ValueError):
    """Malformed source text; carries a 1-based line and column."""

    def __init__(self, line: int, col: int, msg: str):
        super().__init__(f"line {line}, col {col}: {msg}")
        self.line = line
        self.col = col


class KindConflictError(ValueError):
    """An entity is declared or used with incompatible kinds."""

    def __init__(self, iri: Iri, msg: str):
        super().__init__(f"{iri.local_name}: {msg}")
        self.iri = iri


class DanglingReferenceError(ValueError):
    """An axiom references a name that was never declared."""

    def __init__(self, iri: Iri, msg: str = "referenced but never declared"):
        super().__init__(f"{iri.local_name}: {msg}")
        self.iri = iri


@dataclass(frozen=True)
class Ontology:
    """One parsed ontology: registry, asserted triples and side tables."""

    prefix_map: dict[str, str]
    entities: dict[str, tuple[Iri, EntityKind]]
    asserted: tuple[Triple, ...]
    labels: dict[Iri, tuple[str, ...]]
    comments: dict[Iri, tuple[str, ...]]
    signatures: dict[Iri, PropertySignature]

    @property
    def thing(self) -> Iri:
        return Iri(self.prefix_map["owl"], "Thing")

    @property
    def nothing(self) -> Iri:
        return Iri(self.prefix_map["owl"], "Nothing")

    def entity_kind(self, name: str) -> Optional[tuple[Iri, EntityKind]]:
        """Exact, case-sensitive lookup; also resolves the implicit
        top/bottom classes, which never appear in the listings below."""
        hit = self.entities.get(name)
        if hit is not None:
            return hit
        if name in _RESERVED_NAMES:
            return (Iri(self.prefix_map["owl"], name), EntityKind.CLASS)
        return None

    def _names_of(self, kind: EntityKind) -> list[str]:
        return sorted(n for n, (_, k) in self.entities.items() if k is kind)

    def classes(self) -> list[str]:
        return self._names_of(EntityKind.CLASS)

    def object_properties(self) -> list[str]:
        return self._names_of(EntityKind.OBJECT_PROPERTY)

    def data_properties(self) -> list[str]:
        return self._names_of(EntityKind.DATA_PROPERTY)

    def instances(self) -> list[str]:
        return self._names_of(EntityKind.INSTANCE)


@dataclass(frozen=True)
class _Token:
    kind: str  # iriref | pname | string | a | punct | prefix
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<prefix>@prefix\b)
      | (?P<iriref><[^<>\s]*>)
      | (?P<string>"(?:[^"\\\n]|\\[^\n])*")
      | (?P<pname>(?:[A-Za-z0-9_][A-Za-z0-9_-]*)?:[A-Za-z0-9_][A-Za-z0-9_-]*
                 |[A-Za-z0-9_][A-Za-z0-9_-]*:
                 |_:[A-Za-z0-9_-]+
                 |:)
      | (?P<a>a\b)
      | (?P<punct>[.;])
    """,
    re.VERBOSE,
)


def _tokenize(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    for lineno, raw in enumerate(source.splitlines(), start=1):
        if raw.lstrip().startswith("#"):
            continue
        pos = 0
        while pos < len(raw):
            m = _TOKEN_RE.match(raw, pos)
            if m is None:
                raise OntoSyntaxError(lineno, pos + 1, f"unexpected character {raw[pos]!r}")
            kind = m.lastgroup
            if kind != "ws":
                tokens.append(_Token(kind, m.group(), lineno, m.start() + 1))
            pos = m.end()
    return tokens


@dataclass(frozen=True)
class _Term:
    """A resolved statement operand with its source position."""

    value: Union[Iri, Lit]
    raw: str
    line: int
    col: int


@dataclass(frozen=True)
class _Statement:
    subject: _Term
    verb: _Term  # raw == "a" for typing/declaration statements
    obj: _Term


class _Reader:
    """Token cursor plus prefix environment."""

    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0
        self.prefixes: dict[str, str] = {}

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self, expect: str) -> _Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else _Token("punct", "", 1, 1)
            raise OntoSyntaxError(last.line, last.col, f"unexpected end of input, expected {expect}")
        self.i += 1
        return tok

    def resolve(self, tok: _Token) -> _Term:
        if tok.kind == "string":
            return _Term(Lit(_unescape(tok)), tok.text, tok.line, tok.col)
        if tok.kind in ("iriref", "pname"):
            try:
                return _Term(parse_iri(tok.text, self.prefixes), tok.text, tok.line, tok.col)
            except MalformedIriError as e:
                raise OntoSyntaxError(tok.line, tok.col, str(e)) from e
        raise OntoSyntaxError(tok.line, tok.col, f"expected a term, got {tok.text!r}")


def _unescape(tok: _Token) -> str:
    body = tok.text[1:-1]
    out: list[str] = []
    i = 0
    while i < len(body):
        c = body[i]
        if c == "\\":
            nxt = body[i + 1] if i + 1 < len(body) else ""
            if nxt not in ('"', "\\"):
                raise OntoSyntaxError(tok.line, tok.col, f"illegal escape \\{nxt}")
            out.append(nxt)
            i += 2
        else:
            out.append(c)
            i += 1
    return "".join(out)


def _read_statements(source: str) -> tuple[dict[str, str], list[_Statement]]:
    rd = _Reader(_tokenize(source))
    statements: list[_Statement] = []
    while True:
        tok = rd.peek()
        if tok is None:
            break
        if tok.kind == "prefix":
            rd.next("@prefix")
            label_tok = rd.next("prefix label")
            if label_tok.kind != "pname" or not label_tok.text.endswith(":") or label_tok.text.count(":") != 1:
                raise OntoSyntaxError(label_tok.line, label_tok.col, "expected a prefix label ending in ':'")
            iri_tok = rd.next("prefix IRI")
            if iri_tok.kind != "iriref":
                raise OntoSyntaxError(iri_tok.line, iri_tok.col, "expected <iri> after prefix label")
            dot = rd.next("'.'")
            if dot.text != ".":
                raise OntoSyntaxError(dot.line, dot.col, "expected '.' after prefix declaration")
            iri = iri_tok.text[1:-1]
            rd.prefixes[label_tok.text[:-1]] = iri[:-1] if iri.endswith("#") else iri
            continue
        subject = rd.resolve(rd.next("a subject"))
        while True:
            verb_tok = rd.next("a verb")
            if verb_tok.kind == "a":
                verb = _Term(Lit("a"), "a", verb_tok.line, verb_tok.col)
            else:
                verb = rd.resolve(verb_tok)
            obj = rd.resolve(rd.next("an object"))
            statements.append(_Statement(subject, verb, obj))
            sep = rd.next("';' or '.'")
            if sep.kind != "punct":
                raise OntoSyntaxError(sep.line, sep.col, f"expected ';' or '.', got {sep.text!r}")
            if sep.text == ".":
                break
    return rd.prefixes, statements


class _Builder:
    def __init__(self, prefixes: dict[str, str]):
        self.prefixes = prefixes
        self.entities: dict[str, tuple[Iri, EntityKind]] = {}
        self.triples: list[Triple] = []
        self.seen: set[Triple] = set()
        self.labels: dict[Iri, list[str]] = {}
        self.comments: dict[Iri, list[str]] = {}
        self.domains: dict[Iri, list[Iri]] = {}
        self.ranges: dict[Iri, list[Union[Iri, str]]] = {}
        self.prop_order: list[Iri] = []
        self.typed: set[Iri] = set()

    def add(self, t: Triple) -> None:
        if t not in self.seen:
            self.seen.add(t)
            self.triples.append(t)

    def declare(self, term: _Term, kind: EntityKind) -> Iri:
        iri = self._as_iri(term)
        if iri.local_name in _RESERVED_NAMES:
            raise KindConflictError(iri, "reserved name of an implicit class")
        existing = self.entities.get(iri.local_name)
        if existing is not None:
            if existing[0] != iri:
                raise KindConflictError(iri, "local name already bound to a different IRI")
            if existing[1] is not kind:
                raise KindConflictError(iri, f"declared both {existing[1].value} and {kind.value}")
            return iri
        self.entities[iri.local_name] = (iri, kind)
        if kind in (EntityKind.OBJECT_PROPERTY, EntityKind.DATA_PROPERTY):
            self.prop_order.append(iri)
            self.domains[iri] = []
            self.ranges[iri] = []
        return iri

    def _as_iri(self, term: _Term) -> Iri:
        if not isinstance(term.value, Iri):
            raise OntoSyntaxError(term.line, term.col, "expected an IRI, got a literal")
        return term.value

    def require(self, term: _Term, kinds: tuple[EntityKind, ...], role: str) -> Iri:
        iri = self._as_iri(term)
        if iri.local_name in _RESERVED_NAMES and EntityKind.CLASS in kinds:
            return Iri(self.prefixes["owl"], iri.local_name)
        entry = self.entities.get(iri.local_name)
        if entry is None or entry[0] != iri:
            raise DanglingReferenceError(iri)
        if entry[1] not in kinds:
            raise KindConflictError(iri, f"{role} must be a {' or '.join(k.value for k in kinds)}")
        return iri

    def literal(self, term: _Term) -> Lit:
        if not isinstance(term.value, Lit):
            raise OntoSyntaxError(term.line, term.col, "expected a string literal")
        return term.value


def parse_ontology(source: str) -> Ontology:
    """Parse source text into an Ontology. Raises OntoSyntaxError,
    UnknownPrefixError, KindConflictError or DanglingReferenceError."""
    prefixes, statements = _read_statements(source)
    for label in _REQUIRED_PREFIXES:
        if label not in prefixes:
            from .rdf import UnknownPrefixError

            raise UnknownPrefixError(label)

    b = _Builder(prefixes)
    P = PrimitivePredicate

    # Pass 1: explicit kind declarations, then instance typings, so that
    # statement order in the file never matters.
    typings: list[_Statement] = []
    for st in statements:
        if st.verb.raw != "a":
            continue
        kind = _KIND_DECLARATIONS.get(st.obj.raw)
        if kind is not None:
            b.declare(st.subject, kind)
        else:
            typings.append(st)
    for st in typings:
        b.declare(st.subject, EntityKind.INSTANCE)

    # Pass 2: axioms.
    for st in statements:
        _apply(b, st)

    # Pass 3: individuals never typed by a class belong to the implicit top.
    thing = Iri(prefixes["owl"], "Thing")
    for name, (iri, kind) in b.entities.items():
        if kind is EntityKind.INSTANCE and iri not in b.typed:
            b.add(Triple(iri, P.INSTANCE_OF, thing))

    # Pass 4: class-level property links from object-property signatures.
    signatures: dict[Iri, PropertySignature] = {}
    for prop in b.prop_order:
        signatures[prop] = PropertySignature(prop, tuple(b.domains[prop]), tuple(b.ranges[prop]))
        if b.entities[prop.local_name][1] is EntityKind.OBJECT_PROPERTY:
            for d in b.domains[prop]:
                for r in b.ranges[prop]:
                    b.add(Triple(d, prop, r))

    return Ontology(
        prefix_map=dict(prefixes),
        entities=dict(b.entities),
        asserted=tuple(b.triples),
        labels={k: tuple(v) for k, v in b.labels.items()},
        comments={k: tuple(v) for k, v in b.comments.items()},
        signatures=signatures,
    )


_CLS = (EntityKind.CLASS,)
_PROPS = (EntityKind.OBJECT_PROPERTY, EntityKind.DATA_PROPERTY)
_OBJ_PROP = (EntityKind.OBJECT_PROPERTY,)
_INST = (EntityKind.INSTANCE,)


def _apply(b: _Builder, st: _Statement) -> None:
    P = PrimitivePredicate
    verb = st.verb.raw
    if verb == "a":
        if st.obj.raw in _KIND_DECLARATIONS:
            return  # handled in pass 1
        s = b.require(st.subject, _INST, "typed subject")
        c = b.require(st.obj, _CLS, "type")
        b.typed.add(s)
        b.add(Triple(s, P.INSTANCE_OF, c))
        return

    if verb == "rdfs:subClassOf":
        b.add(Triple(b.require(st.subject, _CLS, "subclass"), P.SUB_CLASS_OF, b.require(st.obj, _CLS, "superclass")))
    elif verb == "owl:equivalentClass":
        b.add(Triple(b.require(st.subject, _CLS, "class"), P.EQUIVALENT_CLASS, b.require(st.obj, _CLS, "class")))
    elif verb == "owl:disjointWith":
        b.add(Triple(b.require(st.subject, _CLS, "class"), P.DISJOINT_CLASS, b.require(st.obj, _CLS, "class")))
    elif verb == "rdfs:subPropertyOf":
        s = b.require(st.subject, _PROPS, "subproperty")
        o = b.require(st.obj, _PROPS, "superproperty")
        _same_property_kind(b, s, o)
        b.add(Triple(s, P.SUB_PROPERTY, o))
    elif verb == "owl:equivalentProperty":
        s = b.require(st.subject, _PROPS, "property")
        o = b.require(st.obj, _PROPS, "property")
        _same_property_kind(b, s, o)
        b.add(Triple(s, P.EQUIVALENT_PROPERTY, o))
    elif verb == "owl:propertyDisjointWith":
        s = b.require(st.subject, _PROPS, "property")
        o = b.require(st.obj, _PROPS, "property")
        _same_property_kind(b, s, o)
        b.add(Triple(s, P.DISJOINT_PROPERTY, o))
    elif verb == "owl:inverseOf":
        s = b.require(st.subject, _OBJ_PROP, "inverse subject")
        o = b.require(st.obj, _OBJ_PROP, "inverse object")
        b.add(Triple(s, P.INVERSE_OF, o))
    elif verb == "rdfs:domain":
        p = b.require(st.subject, _PROPS, "property")
        c = b.require(st.obj, _CLS, "domain")
        b.domains[p].append(c)
        b.add(Triple(p, P.DOMAIN, c))
    elif verb == "rdfs:range":
        _range_axiom(b, st)
    elif verb == "rdfs:label":
        s = b._as_iri(st.subject)
        b.require(st.subject, _CLS + _PROPS + _INST, "labeled entity")
        lit = b.literal(st.obj)
        b.labels.setdefault(s, []).append(lit.value)
        b.add(Triple(s, P.HAS_LABEL, lit))
    elif verb == "rdfs:comment":
        s = b._as_iri(st.subject)
        b.require(st.subject, _CLS + _PROPS + _INST, "commented entity")
        lit = b.literal(st.obj)
        b.comments.setdefault(s, []).append(lit.value)
        b.add(Triple(s, P.HAS_COMMENT, lit))
    elif verb == "owl:sameAs":
        b.add(Triple(b.require(st.subject, _INST, "instance"), P.SAME_AS, b.require(st.obj, _INST, "instance")))
    elif verb == "owl:differentFrom":
        b.add(Triple(b.require(st.subject, _INST, "instance"), P.DIFFERENT_FROM, b.require(st.obj, _INST, "instance")))
    else:
        _property_assertion(b, st)


def _same_property_kind(b: _Builder, s: Iri, o: Iri) -> None:
    if b.entities[s.local_name][1] is not b.entities[o.local_name][1]:
        raise KindConflictError(s, "property axiom operands must share a kind")


def _range_axiom(b: _Builder, st: _Statement) -> None:
    P = PrimitivePredicate
    p = b.require(st.subject, _PROPS, "property")
    kind = b.entities[p.local_name][1]
    if kind is EntityKind.OBJECT_PROPERTY:
        c = b.require(st.obj, _CLS, "range")
        b.ranges[p].append(c)
        b.add(Triple(p, P.RANGE, c))
    else:
        tag = b.literal(st.obj).value
        if tag not in _DATATYPE_TAGS:
            raise OntoSyntaxError(st.obj.line, st.obj.col, f"unknown datatype tag {tag!r}")
        b.ranges[p].append(tag)
        b.add(Triple(p, P.RANGE, Lit(tag)))


def _property_assertion(b: _Builder, st: _Statement) -> None:
    """A verb that is itself a declared property: instance-level assertion
    ((x, P, y) between instances, or (x, P, lit) for data properties) or
    an explicit class-level link between two classes."""
    verb_iri = b._as_iri(st.verb)
    entry = b.entities.get(verb_iri.local_name)
    if entry is None or entry[0] != verb_iri:
        raise DanglingReferenceError(verb_iri, "verb is neither an axiom keyword nor a declared property")
    prop, kind = entry
    if kind is EntityKind.OBJECT_PROPERTY:
        if isinstance(st.obj.value, Lit):
            raise OntoSyntaxError(st.obj.line, st.obj.col, "object property needs an entity object")
        s_entry = b.entities.get(b._as_iri(st.subject).local_name)
        if s_entry is not None and s_entry[1] is EntityKind.CLASS:
            s = b.require(st.subject, _CLS, "subject")
            o = b.require(st.obj, _CLS, "object")
        else:
            s = b.require(st.subject, _INST, "subject")
            o = b.require(st.obj, _INST, "object")
        b.add(Triple(s, prop, o))
    elif kind is EntityKind.DATA_PROPERTY:
        s = b.require(st.subject, _INST, "subject")
        b.add(Triple(s, prop, b.literal(st.obj)))
    else:
        raise KindConflictError(prop, "verb must be a property")
