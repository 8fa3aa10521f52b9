"""In-memory labeled property graph mirroring a saturated triple set.

Loading renders every fact as one typed, directed relationship between
named nodes: primitive predicates become UPPER_SNAKE relationship types,
ontology properties keep their local name verbatim, and prefixes are
dropped entirely (node names are bare local names). Labels and comments
are stored twice, as node properties and as HAS_LABEL / HAS_COMMENT
relationships to value-keyed literal nodes.

Synonym nodes: for every synonym of a part of an entity's segmented
name, a node carrying the entity's outgoing relationships (annotations
excluded). A synonym is an alias for querying, not a distinct result, so
pattern variables never bind to synonym nodes and `neighbors` never
returns them; only a constant name can address one. Without that rule
the two query backends could not agree whenever a lexicon is loaded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .lexicon import SynonymLexicon, segment_name, synonyms_of
from .ontology import Ontology
from .rdf import (
    EntityKind,
    Iri,
    Lit,
    PrimitivePredicate,
    Triple,
    Var,
    render_predicate,
)

_ANNOTATION_RELS = ("HAS_LABEL", "HAS_COMMENT")


class DuplicateNameError(ValueError):
    """Two distinct nodes would share one (name, ontology) pair."""

    def __init__(self, name: str, ontology: str):
        super().__init__(f"duplicate node name {name!r} in ontology {ontology}")
        self.name = name
        self.ontology = ontology


@dataclass
class GNode:
    id: int
    labels: frozenset[str]
    props: dict[str, str]


@dataclass(frozen=True)
class GRel:
    from_id: int
    rel_type: str
    to_id: int


@dataclass
class PropertyGraph:
    ontology_iri: str
    nodes: dict[int, GNode] = field(default_factory=dict)
    rels: list[GRel] = field(default_factory=list)
    name_index: dict[str, int] = field(default_factory=dict)
    _value_index: dict[tuple[str, str], int] = field(default_factory=dict)
    _rel_seen: set[tuple[int, str, int]] = field(default_factory=set)
    _out: dict[int, dict[str, list[int]]] = field(default_factory=dict)
    _in: dict[int, dict[str, list[int]]] = field(default_factory=dict)

    def add_named_node(self, name: str, labels: frozenset[str], extra: Optional[dict[str, str]] = None) -> int:
        if name in self.name_index:
            raise DuplicateNameError(name, self.ontology_iri)
        nid = len(self.nodes)
        props = {"name": name, "ontology": self.ontology_iri}
        if extra:
            props.update(extra)
        self.nodes[nid] = GNode(nid, labels, props)
        self.name_index[name] = nid
        return nid

    def literal_node(self, lit: Lit) -> int:
        key = (lit.tag, lit.value)
        nid = self._value_index.get(key)
        if nid is None:
            nid = len(self.nodes)
            self.nodes[nid] = GNode(
                nid, frozenset({"Literal"}), {"value": lit.value, "ontology": self.ontology_iri}
            )
            self._value_index[key] = nid
        return nid

    def add_rel(self, from_id: int, rel_type: str, to_id: int) -> None:
        key = (from_id, rel_type, to_id)
        if key in self._rel_seen:
            return
        self._rel_seen.add(key)
        self.rels.append(GRel(from_id, rel_type, to_id))
        self._out.setdefault(from_id, {}).setdefault(rel_type, []).append(to_id)
        self._in.setdefault(to_id, {}).setdefault(rel_type, []).append(from_id)

    def display(self, node_id: int) -> str:
        node = self.nodes[node_id]
        if "Literal" in node.labels:
            return node.props["value"]
        return node.props["name"]

    def is_synonym(self, node_id: int) -> bool:
        return "Synonym" in self.nodes[node_id].labels


def load_graph(s, o: Ontology, lex: SynonymLexicon) -> PropertyGraph:
    """Build the graph for one ontology from its saturated facts."""
    g = PropertyGraph(ontology_iri=o.prefix_map[""])

    for special in ("Thing", "Nothing"):
        g.add_named_node(special, frozenset({"Class"}))

    for name in sorted(o.entities):
        iri, kind = o.entities[name]
        extra: dict[str, str] = {}
        if iri in o.labels:
            extra["label"] = "|".join(o.labels[iri])
        if iri in o.comments:
            extra["comment"] = "|".join(o.comments[iri])
        g.add_named_node(name, frozenset({kind.value}), extra)

    def endpoint(term: Union[Iri, Lit]) -> int:
        if isinstance(term, Lit):
            return g.literal_node(term)
        return g.name_index[term.local_name]

    ordered = sorted(
        s.all,
        key=lambda t: (
            t.s.local_name,
            render_predicate(t.p),
            t.o.local_name if isinstance(t.o, Iri) else t.o.value,
        ),
    )
    for t in ordered:
        g.add_rel(g.name_index[t.s.local_name], render_predicate(t.p), endpoint(t.o))

    # Synonym nodes, built after the fact edges so copies are complete.
    for name in sorted(o.entities):
        _, kind = o.entities[name]
        entity_id = g.name_index[name]
        words = sorted({w for part in segment_name(name) for w in synonyms_of(lex, part)})
        for word in words:
            existing = g.name_index.get(word)
            if existing is not None and not g.is_synonym(existing):
                raise DuplicateNameError(word, g.ontology_iri)
            if existing is None:
                syn_id = g.add_named_node(word, frozenset({kind.value, "Synonym"}))
            else:
                syn_id = existing
                node = g.nodes[syn_id]
                node.labels = node.labels | {kind.value}
            for rel_type, targets in g._out.get(entity_id, {}).items():
                if rel_type in _ANNOTATION_RELS:
                    continue
                for to_id in list(targets):
                    g.add_rel(syn_id, rel_type, to_id)
    return g


# --- pattern matching ------------------------------------------------------


@dataclass(frozen=True)
class NameIs:
    """Constant node constraint by entity or synonym name."""

    name: str


@dataclass(frozen=True)
class ValueIs:
    """Constant node constraint by literal value."""

    value: str


NodeTerm = Union[Var, NameIs, ValueIs]
RelTerm = Union[Var, str]


@dataclass(frozen=True)
class EdgePattern:
    src: NodeTerm
    rel: RelTerm
    dst: NodeTerm


@dataclass(frozen=True)
class GraphPattern:
    edges: tuple[EdgePattern, ...]


def gp_vars(gp: GraphPattern) -> tuple[Var, ...]:
    """Distinct variables in first-occurrence order (src, rel, dst)."""
    seen: dict[Var, None] = {}
    for e in gp.edges:
        for term in (e.src, e.rel, e.dst):
            if isinstance(term, Var):
                seen.setdefault(term)
    return tuple(seen)


def match_pattern(g: PropertyGraph, gp: GraphPattern) -> frozenset[tuple[str, ...]]:
    """Exact subgraph matching with constant constraints.

    Returns distinct rows aligned to gp_vars(gp); node variables render
    as the node's name (or literal value), relationship variables as the
    relationship type. A fully constant pattern is a membership test
    yielding one empty row when it holds.
    """
    variables = gp_vars(gp)
    rows: set[tuple[str, ...]] = set()

    def node_candidates(term: NodeTerm, binding: dict[Var, object]) -> Optional[list[int]]:
        """Resolved candidate ids, or None when the term is a free variable."""
        if isinstance(term, NameIs):
            nid = g.name_index.get(term.name)
            return [] if nid is None else [nid]
        if isinstance(term, ValueIs):
            hits = [nid for (tag, value), nid in g._value_index.items() if value == term.value]
            return hits
        bound = binding.get(term)
        return None if bound is None else [bound]  # type: ignore[list-item]

    def solve(i: int, binding: dict[Var, object]) -> None:
        if i == len(gp.edges):
            row = []
            for v in variables:
                val = binding[v]
                row.append(g.display(val) if isinstance(val, int) else str(val))
            rows.add(tuple(row))
            return
        e = gp.edges[i]
        srcs = node_candidates(e.src, binding)
        dsts = node_candidates(e.dst, binding)

        if isinstance(e.rel, Var):
            rel_bound = binding.get(e.rel)
            rel_fixed = rel_bound if isinstance(rel_bound, str) else None
        else:
            rel_fixed = e.rel

        def expand(from_id: int, rel_type: str, to_id: int) -> None:
            nb = dict(binding)
            if isinstance(e.src, Var) and e.src not in binding:
                if g.is_synonym(from_id):
                    return
                nb[e.src] = from_id
            if isinstance(e.rel, Var) and e.rel not in binding:
                nb[e.rel] = rel_type
            if isinstance(e.dst, Var) and e.dst not in binding:
                if g.is_synonym(to_id):
                    return
                nb[e.dst] = to_id
            solve(i + 1, nb)

        if srcs is not None:
            for from_id in srcs:
                for rel_type, targets in g._out.get(from_id, {}).items():
                    if rel_fixed is not None and rel_type != rel_fixed:
                        continue
                    for to_id in targets:
                        if dsts is not None and to_id not in dsts:
                            continue
                        expand(from_id, rel_type, to_id)
        elif dsts is not None:
            for to_id in dsts:
                for rel_type, sources in g._in.get(to_id, {}).items():
                    if rel_fixed is not None and rel_type != rel_fixed:
                        continue
                    for from_id in sources:
                        expand(from_id, rel_type, to_id)
        else:
            for r in g.rels:
                if rel_fixed is not None and r.rel_type != rel_fixed:
                    continue
                expand(r.from_id, r.rel_type, r.to_id)

    solve(0, {})
    return frozenset(rows)


def neighbors(g: PropertyGraph, name: str, rel_type: str, direction: str) -> list[str]:
    """Sorted distinct neighbor names along one relationship type;
    synonym nodes are aliases and never appear. Unknown names or
    relationship types give []."""
    if direction not in ("out", "in"):
        raise ValueError(f"direction must be 'out' or 'in', got {direction!r}")
    nid = g.name_index.get(name)
    if nid is None:
        return []
    adj = g._out if direction == "out" else g._in
    found = adj.get(nid, {}).get(rel_type, [])
    return sorted({g.display(other) for other in found if not g.is_synonym(other)})


def dump_graph(g: PropertyGraph) -> str:
    """Stable text form: node lines then edge lines, each sorted."""
    node_lines = []
    for node in g.nodes.values():
        labels = ",".join(sorted(node.labels))
        props = ",".join(f"{k}={v}" for k, v in sorted(node.props.items()))
        node_lines.append(f"node\t{labels}\t{props}")
    edge_lines = []
    for r in g.rels:
        frm = _dump_name(g, r.from_id)
        to = _dump_name(g, r.to_id)
        edge_lines.append(f"edge\t{frm}\t{r.rel_type}\t{to}")
    return "\n".join(sorted(node_lines) + sorted(edge_lines))


def _dump_name(g: PropertyGraph, node_id: int) -> str:
    node = g.nodes[node_id]
    if "Literal" in node.labels:
        return f'"{node.props["value"]}"'
    return node.props["name"]
