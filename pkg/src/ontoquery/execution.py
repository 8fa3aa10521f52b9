"""Run each query against both backends and compare.

The same basic graph pattern is evaluated twice: once over the
saturated triple set (``eval_bgp``) and once, after a structural
translation, over the property graph (``match_pattern``).  Both produce
a :class:`ResultSet` of rendered strings; the two must be equal, and an
``equal=False`` outcome is a reportable defect rather than an error.

The module also emits the two surface query texts (a SPARQL-DL style
string and a Cypher style string).  These are presentation artifacts
for the user; nothing parses them back.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Union

from .graph import (
    EdgePattern,
    GraphPattern,
    NameIs,
    NodeTerm,
    PropertyGraph,
    RelTerm,
    ValueIs,
    gp_vars,
    match_pattern,
)
from .planner import InfoQuery
from .rdf import (
    Bgp,
    Iri,
    Lit,
    PrimitivePredicate,
    TriplePattern,
    Var,
    bgp_vars,
)
from .saturate import SaturatedSet


class UntranslatablePatternError(Exception):
    """A pattern with a literal in subject position has no graph image."""


@dataclass(frozen=True)
class ResultSet:
    """Rendered query results: row set semantics, no duplicates."""

    variables: tuple[str, ...]
    rows: frozenset[tuple[str, ...]]


@dataclass(frozen=True)
class ExecEnv:
    """Everything needed to run one ontology's queries."""

    prefix_iri: str
    saturated: SaturatedSet
    graph: PropertyGraph


@dataclass(frozen=True)
class DualResult:
    sparqldl_text: str
    cypher_text: str
    triple_results: ResultSet
    graph_results: ResultSet
    equal: bool
    triple_seconds: float
    graph_seconds: float


Term = Union[Iri, Lit, PrimitivePredicate]


def render_term(term: Term) -> str:
    """The shared surface rendering: local names for entities, lexical
    values for literals, relationship types for primitive predicates."""
    if isinstance(term, Lit):
        return term.value
    if isinstance(term, PrimitivePredicate):
        return term.rel_type()
    return term.local_name


def eval_bgp(saturated: SaturatedSet, bgp: Bgp) -> ResultSet:
    """All total variable assignments satisfying every pattern.

    Joins run left to right with binding propagation; a fully constant
    pattern acts as a membership test (one empty row when it holds).
    """
    facts = [(t.s, t.p, t.o) for t in saturated.all]
    variables = bgp_vars(bgp)

    bindings: list[dict[Var, Term]] = [{}]
    for pattern in bgp:
        terms = (pattern.s, pattern.p, pattern.o)
        next_bindings: list[dict[Var, Term]] = []
        for binding in bindings:
            for fact in facts:
                candidate = dict(binding)
                for term, value in zip(terms, fact):
                    if isinstance(term, Var):
                        held = candidate.get(term)
                        if held is None:
                            candidate[term] = value
                        elif held != value:
                            break
                    elif term != value:
                        break
                else:
                    next_bindings.append(candidate)
        bindings = next_bindings
        if not bindings:
            break

    rows = {
        tuple(render_term(b[v]) for v in variables) for b in bindings
    }
    return ResultSet(tuple(v.name for v in variables), frozenset(rows))


def _node_term(term: Union[Var, Iri, Lit], position: str) -> NodeTerm:
    if isinstance(term, Var):
        return term
    if isinstance(term, Iri):
        return NameIs(term.local_name)
    if position == "subject":
        raise UntranslatablePatternError("literal subjects have no graph node")
    return ValueIs(term.value)


def _rel_term(term: Union[Var, Iri, PrimitivePredicate]) -> RelTerm:
    if isinstance(term, Var):
        return term
    if isinstance(term, PrimitivePredicate):
        return term.rel_type()
    return term.local_name


def translate(bgp: Bgp) -> GraphPattern:
    """Structure-preserving rewrite: one edge constraint per pattern,
    constants become name/value constraints, variables carry over."""
    return GraphPattern(
        tuple(
            EdgePattern(
                _node_term(p.s, "subject"),
                _rel_term(p.p),
                _node_term(p.o, "object"),
            )
            for p in bgp
        )
    )


# --- surface text emission -------------------------------------------------

_ATOMS = {
    PrimitivePredicate.SUB_CLASS_OF: "SubClassOf",
    PrimitivePredicate.EQUIVALENT_CLASS: "EquivalentClass",
    PrimitivePredicate.DISJOINT_CLASS: "DisjointWith",
    PrimitivePredicate.INSTANCE_OF: "Type",
    PrimitivePredicate.SUB_PROPERTY: "SubPropertyOf",
    PrimitivePredicate.EQUIVALENT_PROPERTY: "EquivalentProperty",
    PrimitivePredicate.DISJOINT_PROPERTY: "DisjointProperty",
    PrimitivePredicate.INVERSE_OF: "InverseOf",
    PrimitivePredicate.TYPE_PROPERTY: "TypeProperty",
    PrimitivePredicate.DOMAIN: "Domain",
    PrimitivePredicate.RANGE: "Range",
    PrimitivePredicate.SAME_AS: "SameAs",
    PrimitivePredicate.DIFFERENT_FROM: "DifferentFrom",
}

_ANNOTATION_ATOMS = {
    PrimitivePredicate.HAS_LABEL: "rdfs:label",
    PrimitivePredicate.HAS_COMMENT: "rdfs:comment",
}


def _quote(value: str) -> str:
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _sparqldl_term(term: Union[Var, Iri, Lit]) -> str:
    if isinstance(term, Var):
        return f"?{term.name}"
    if isinstance(term, Iri):
        return f":{term.local_name}"
    return _quote(term.value)


def _sparqldl_atom(p: TriplePattern) -> str:
    s, o = _sparqldl_term(p.s), _sparqldl_term(p.o)
    if isinstance(p.p, PrimitivePredicate):
        marker = _ANNOTATION_ATOMS.get(p.p)
        if marker is not None:
            return f"Annotation({s}, {marker}, {o})"
        return f"{_ATOMS[p.p]}({s}, {o})"
    pred = f"?{p.p.name}" if isinstance(p.p, Var) else f":{p.p.local_name}"
    return f"PropertyValue({s}, {pred}, {o})"


def emit_sparqldl(q: InfoQuery, prefix_iri: str) -> str:
    variables = bgp_vars(q.bgp)
    body = ", ".join(_sparqldl_atom(p) for p in q.bgp)
    head = f"PREFIX : <{prefix_iri}#>"
    if not variables:
        return f"{head}\nASK WHERE {{ {body} }}"
    select = " ".join(f"?{v.name}" for v in variables)
    return f"{head}\nSELECT {select} WHERE {{ {body} }}"


def emit_cypher(q: InfoQuery) -> str:
    binders: dict[tuple[str, str], str] = {}

    def binder(key: tuple[str, str]) -> str:
        if key not in binders:
            binders[key] = "c" if not binders else f"c{len(binders) + 1}"
        return binders[key]

    def node(term: Union[Var, Iri, Lit]) -> str:
        if isinstance(term, Var):
            return f"({term.name})"
        if isinstance(term, Iri):
            key = ("name", term.local_name)
        else:
            key = ("value", term.value)
        return f"({binder(key)} {{{key[0]}:{_quote(key[1])}}})"

    def rel(term: Union[Var, Iri, PrimitivePredicate]) -> str:
        if isinstance(term, Var):
            return f"[{term.name}]"
        if isinstance(term, PrimitivePredicate):
            return f"[:{term.rel_type()}]"
        return f"[:{term.local_name}]"

    parts = [f"{node(p.s)}-{rel(p.p)}->{node(p.o)}" for p in q.bgp]

    rel_vars = {p.p for p in q.bgp if isinstance(p.p, Var)}
    value_vars = {
        p.o
        for p in q.bgp
        if isinstance(p.o, Var) and p.p in _ANNOTATION_ATOMS
    }
    variables = bgp_vars(q.bgp)
    if not variables:
        returns = "*"
    else:
        rendered = []
        for v in variables:
            if v in rel_vars:
                rendered.append(f"type({v.name})")
            elif v in value_vars:
                rendered.append(f"{v.name}.value")
            else:
                rendered.append(f"{v.name}.name")
        returns = ", ".join(rendered)
    return f"MATCH {', '.join(parts)} RETURN {returns}"


def execute_dual(env: ExecEnv, q: InfoQuery) -> DualResult:
    """Evaluate one query on both backends and compare the rows."""
    t0 = time.perf_counter()
    triple_results = eval_bgp(env.saturated, q.bgp)
    triple_seconds = time.perf_counter() - t0

    t0 = time.perf_counter()
    gp = translate(q.bgp)
    raw = match_pattern(env.graph, gp)
    graph_seconds = time.perf_counter() - t0
    graph_results = ResultSet(tuple(v.name for v in gp_vars(gp)), raw)

    return DualResult(
        sparqldl_text=emit_sparqldl(q, env.prefix_iri),
        cypher_text=emit_cypher(q),
        triple_results=triple_results,
        graph_results=graph_results,
        equal=triple_results == graph_results,
        triple_seconds=triple_seconds,
        graph_seconds=graph_seconds,
    )
