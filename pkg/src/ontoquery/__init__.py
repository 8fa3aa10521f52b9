"""Ontology-backed keyword search with dual query execution.

The package parses a small Turtle subset into typed axioms, saturates
them to a fixpoint, mirrors the result into an in-memory property graph,
and answers keyword searches by generating basic graph patterns that are
executed against both representations and checked for agreement.
"""

from .execution import (
    DualResult,
    ExecEnv,
    ResultSet,
    UntranslatablePatternError,
    emit_cypher,
    emit_sparqldl,
    eval_bgp,
    execute_dual,
    translate,
)
from .graph import (
    DuplicateNameError,
    EdgePattern,
    GraphPattern,
    NameIs,
    PropertyGraph,
    ValueIs,
    load_graph,
    match_pattern,
    neighbors,
)
from .lexicon import (
    EmptyQueryError,
    StopwordList,
    SynonymLexicon,
    preprocess,
    segment_name,
)
from .ontology import (
    DanglingReferenceError,
    KindConflictError,
    OntoSyntaxError,
    Ontology,
    parse_ontology,
)
from .planner import (
    ALL,
    IncompatibleFacetError,
    InfoQuery,
    InfoTag,
    KeywordQueries,
    QueryPlan,
    legal_facets,
    plan,
)
from .rdf import (
    Bgp,
    EntityKind,
    Iri,
    Lit,
    MalformedIriError,
    PrimitivePredicate,
    PropertySignature,
    Triple,
    TriplePattern,
    Var,
    bgp_vars,
    parse_iri,
)
from .registry import (
    DuplicateOntologyIdError,
    EmptyRegistryError,
    OntologySummary,
    Registry,
    SearchResponse,
    run_bench,
)
from .resolver import (
    Match,
    NoKeywordResolvedError,
    ResolvedKeyword,
    Tier,
    resolve,
)
from .saturate import (
    DisjointnessViolation,
    SaturatedSet,
    is_saturated,
    saturate,
)

__all__ = [
    "ALL",
    "Bgp",
    "DanglingReferenceError",
    "DisjointnessViolation",
    "DualResult",
    "DuplicateNameError",
    "DuplicateOntologyIdError",
    "EdgePattern",
    "EmptyQueryError",
    "EmptyRegistryError",
    "EntityKind",
    "ExecEnv",
    "GraphPattern",
    "IncompatibleFacetError",
    "InfoQuery",
    "InfoTag",
    "Iri",
    "KeywordQueries",
    "KindConflictError",
    "Lit",
    "MalformedIriError",
    "Match",
    "NameIs",
    "NoKeywordResolvedError",
    "OntoSyntaxError",
    "Ontology",
    "OntologySummary",
    "PrimitivePredicate",
    "PropertyGraph",
    "PropertySignature",
    "QueryPlan",
    "Registry",
    "ResolvedKeyword",
    "ResultSet",
    "SaturatedSet",
    "SearchResponse",
    "StopwordList",
    "SynonymLexicon",
    "Tier",
    "Triple",
    "TriplePattern",
    "UntranslatablePatternError",
    "ValueIs",
    "Var",
    "bgp_vars",
    "emit_cypher",
    "emit_sparqldl",
    "eval_bgp",
    "execute_dual",
    "is_saturated",
    "legal_facets",
    "load_graph",
    "match_pattern",
    "neighbors",
    "parse_iri",
    "parse_ontology",
    "plan",
    "preprocess",
    "resolve",
    "run_bench",
    "saturate",
    "segment_name",
    "translate",
]
