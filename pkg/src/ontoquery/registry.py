"""Multi-ontology registry, keyword search orchestration, benchmarking.

The registry owns the full artifact chain per ontology id (parsed
ontology, saturated triple set, property graph).  A search preprocesses
the query once, resolves keywords across every registered ontology,
plans per-ontology queries, and executes each on both backends; the
caller gets one merged response, as if a single graph had been queried.
"""

from __future__ import annotations

import csv
import io
import statistics
import threading
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .execution import DualResult, ExecEnv, execute_dual
from .graph import PropertyGraph, load_graph
from .lexicon import StopwordList, SynonymLexicon, preprocess
from .ontology import Ontology, parse_ontology
from .planner import ALL, InfoQuery, plan
from .resolver import NoKeywordResolvedError, ResolvedKeyword, resolve
from .saturate import SaturatedSet, saturate

VIEWS = ("SparqlDl", "Cypher", "Both")


class DuplicateOntologyIdError(Exception):
    def __init__(self, ontology_id: str):
        self.ontology_id = ontology_id
        super().__init__(f"ontology id {ontology_id!r} is already registered")


class EmptyRegistryError(Exception):
    def __init__(self) -> None:
        super().__init__("no ontologies are registered")


@dataclass(frozen=True)
class OntologySummary:
    id: str
    classes: int
    object_properties: int
    data_properties: int
    instances: int
    base_triples: int
    inferred_triples: int
    load_ms: int


@dataclass(frozen=True)
class RegisteredOntology:
    ontology: Ontology
    saturated: SaturatedSet
    graph: PropertyGraph
    summary: OntologySummary

    def env(self) -> ExecEnv:
        return ExecEnv(self.ontology.prefix_map[""], self.saturated, self.graph)


@dataclass(frozen=True)
class MatchReport:
    ontology_id: str
    name: str
    kind: str
    tier: str
    via_word: Optional[str]


@dataclass(frozen=True)
class KeywordReport:
    surface: str
    matches: tuple[MatchReport, ...]


@dataclass(frozen=True)
class QueryReport:
    ontology_id: str
    tag: str
    subject: str
    via_property: Optional[str]
    for_keyword: Optional[str]
    sparqldl: Optional[str]
    cypher: Optional[str]
    variables: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]
    equal: bool
    triple_ms: int
    graph_ms: int


@dataclass(frozen=True)
class SearchResponse:
    query: str
    facet: str
    view: str
    keywords: tuple[KeywordReport, ...]
    unresolved: tuple[str, ...]
    results: tuple[QueryReport, ...]
    defect: bool
    elapsed_ms: int


def _ms(seconds: float) -> int:
    return round(seconds * 1000)


def _report(q: InfoQuery, d: DualResult, view: str, for_keyword: Optional[str]) -> QueryReport:
    return QueryReport(
        ontology_id=q.ontology_id,
        tag=q.tag.value,
        subject=q.subject.local_name,
        via_property=q.via_property.local_name if q.via_property else None,
        for_keyword=for_keyword,
        sparqldl=d.sparqldl_text if view in ("SparqlDl", "Both") else None,
        cypher=d.cypher_text if view in ("Cypher", "Both") else None,
        variables=d.triple_results.variables,
        rows=tuple(sorted(d.triple_results.rows)),
        equal=d.equal,
        triple_ms=_ms(d.triple_seconds),
        graph_ms=_ms(d.graph_seconds),
    )


class Registry:
    """id -> (ontology, saturated set, property graph), plus search."""

    def __init__(self, stopwords: Optional[StopwordList] = None,
                 lexicon: Optional[SynonymLexicon] = None):
        self.stopwords = stopwords if stopwords is not None else StopwordList.default()
        self.lexicon = lexicon if lexicon is not None else SynonymLexicon.empty()
        self._entries: dict[str, RegisteredOntology] = {}
        self._write_lock = threading.Lock()

    def register(self, ontology_id: str, source: str) -> OntologySummary:
        """Parse, saturate and load one ontology; records the combined
        duration as the load time."""
        with self._write_lock:
            if ontology_id in self._entries:
                raise DuplicateOntologyIdError(ontology_id)
            t0 = time.perf_counter()
            ontology = parse_ontology(source)
            saturated = saturate(ontology)
            graph = load_graph(saturated, ontology, self.lexicon)
            load_ms = _ms(time.perf_counter() - t0)
            summary = OntologySummary(
                id=ontology_id,
                classes=len(ontology.classes()),
                object_properties=len(ontology.object_properties()),
                data_properties=len(ontology.data_properties()),
                instances=len(ontology.instances()),
                base_triples=len(saturated.base),
                inferred_triples=len(saturated.inferred),
                load_ms=load_ms,
            )
            self._entries[ontology_id] = RegisteredOntology(ontology, saturated, graph, summary)
            return summary

    def ids(self) -> list[str]:
        return sorted(self._entries)

    def summaries(self) -> list[OntologySummary]:
        return [self._entries[i].summary for i in self.ids()]

    def entry(self, ontology_id: str) -> RegisteredOntology:
        return self._entries[ontology_id]

    def _known_names(self, entries: dict[str, RegisteredOntology]) -> tuple[str, ...]:
        return tuple(
            name for e in entries.values() for name in e.ontology.entities
        )

    def search(self, query: str, facet: str = ALL, view: str = "Both") -> SearchResponse:
        """Preprocess, resolve horizontally over all ontologies, plan,
        execute on both backends, merge."""
        if view not in VIEWS:
            raise ValueError(f"view must be one of {VIEWS}")
        entries = dict(self._entries)  # consistent snapshot for this search
        if not entries:
            raise EmptyRegistryError()
        t0 = time.perf_counter()

        tokens = preprocess(query, self.stopwords, self._known_names(entries))
        ontologies = {oid: e.ontology for oid, e in entries.items()}
        try:
            resolved, unresolved = resolve(tokens, ontologies, self.lexicon)
        except NoKeywordResolvedError as err:
            return SearchResponse(
                query=query, facet=facet, view=view,
                keywords=(), unresolved=tuple(err.tokens), results=(),
                defect=False, elapsed_ms=_ms(time.perf_counter() - t0),
            )

        the_plan = plan(resolved, facet)

        results: list[QueryReport] = []
        for kw in the_plan.per_keyword:
            for q in kw.queries:
                d = execute_dual(entries[q.ontology_id].env(), q)
                results.append(_report(q, d, view, kw.surface))
        for q in the_plan.combinations:
            d = execute_dual(entries[q.ontology_id].env(), q)
            results.append(_report(q, d, view, None))

        return SearchResponse(
            query=query,
            facet=facet,
            view=view,
            keywords=_keyword_reports(resolved),
            unresolved=tuple(unresolved),
            results=tuple(results),
            defect=any(not r.equal for r in results),
            elapsed_ms=_ms(time.perf_counter() - t0),
        )


def _keyword_reports(resolved: Sequence[ResolvedKeyword]) -> tuple[KeywordReport, ...]:
    return tuple(
        KeywordReport(
            rk.surface,
            tuple(
                MatchReport(
                    m.ontology_id, m.iri.local_name, m.kind.value,
                    m.tier.value, m.via_word,
                )
                for m in rk.matches
            ),
        )
        for rk in resolved
    )


BENCH_COLUMNS = ("ontology", "run", "parse_load_ms", "resp_sparqldl_ms", "resp_graph_ms")


def run_bench(
    source: str,
    queries: Sequence[str],
    runs: int,
    ontology_id: str = "bench",
    stopwords: Optional[StopwordList] = None,
    lexicon: Optional[SynonymLexicon] = None,
) -> str:
    """Repeat the full protocol ``runs`` times and report a CSV.

    Each run parses, saturates and loads the ontology from scratch,
    then answers every query line; per-backend response time is the
    shared keyword pipeline plus that backend's summed execution time.
    A final sentinel row holds the per-column arithmetic means.
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    stopwords = stopwords if stopwords is not None else StopwordList.default()
    lexicon = lexicon if lexicon is not None else SynonymLexicon.empty()

    rows: list[tuple[int, int, int]] = []
    for _ in range(runs):
        t0 = time.perf_counter()
        ontology = parse_ontology(source)
        saturated = saturate(ontology)
        graph = load_graph(saturated, ontology, lexicon)
        parse_load = time.perf_counter() - t0
        env = ExecEnv(ontology.prefix_map[""], saturated, graph)

        sparq = 0.0
        cyph = 0.0
        for query in queries:
            t0 = time.perf_counter()
            queries_to_run: list[InfoQuery] = []
            try:
                tokens = preprocess(query, stopwords, tuple(ontology.entities))
                resolved, _ = resolve(tokens, {ontology_id: ontology}, lexicon)
                queries_to_run = list(plan(resolved, ALL).all_queries())
            except NoKeywordResolvedError:
                pass  # zero-result line: the pipeline time still counts
            pipeline = time.perf_counter() - t0
            sparq += pipeline
            cyph += pipeline
            for q in queries_to_run:
                d = execute_dual(env, q)
                sparq += d.triple_seconds
                cyph += d.graph_seconds
        rows.append((_ms(parse_load), _ms(sparq), _ms(cyph)))

    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(BENCH_COLUMNS)
    for run_no, row in enumerate(rows, start=1):
        writer.writerow((ontology_id, str(run_no), *row))
    means = tuple(round(statistics.mean(col)) for col in zip(*rows))
    writer.writerow((ontology_id, "mean", *means))
    return out.getvalue()
