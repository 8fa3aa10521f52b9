"""End-to-end checks pinning the package's headline behaviours.

Each test prints one pass/fail summary line (also echoed in the
terminal summary, see conftest) and then asserts, so a red run both
fails loudly and names the broken guarantee.
"""

import dataclasses
import itertools
import random
import statistics
import time
from csv import reader as csv_reader
from io import StringIO

from conftest import (
    HEADER,
    dag_source,
    make_dag,
    random_ontology_source,
    reachable_pairs,
    record_acceptance,
)

from ontoquery.execution import (
    ExecEnv,
    ResultSet,
    eval_bgp,
    execute_dual,
    render_term,
)
from ontoquery.graph import load_graph
from ontoquery.lexicon import StopwordList, SynonymLexicon, preprocess
from ontoquery.ontology import parse_ontology
from ontoquery.planner import plan
from ontoquery.rdf import PrimitivePredicate, Triple, Var, bgp_vars
from ontoquery.registry import Registry, run_bench
from ontoquery.resolver import resolve
from ontoquery.saturate import is_saturated, saturate


def _check(label: str, ok: bool, detail: str) -> None:
    line = f"{label}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(line)
    record_acceptance(line)


def test_dual_backend_agreement_on_fixture_keyword_subsets(pizza_source, lexicon_path):
    """Every query planned from every 1-3 entity-name subset returns the
    same rows from the triple store and from the property graph."""
    ontology = parse_ontology(pizza_source)
    saturated = saturate(ontology)
    lex = SynonymLexicon.from_file(lexicon_path)
    graph = load_graph(saturated, ontology, lex)
    env = ExecEnv(ontology.prefix_map[""], saturated, graph)

    names = sorted(ontology.entities)
    assert len(names) == 13

    mismatches = []
    n_subsets = n_queries = 0
    t0 = time.perf_counter()
    for k in (1, 2, 3):
        for subset in itertools.combinations(names, k):
            n_subsets += 1
            resolved, unresolved = resolve(list(subset), {"pizza": ontology}, lex)
            assert not unresolved
            for q in plan(resolved).all_queries():
                n_queries += 1
                d = execute_dual(env, q)
                if not d.equal:
                    mismatches.append((subset, q.tag.value, q.subject.local_name))
    elapsed = time.perf_counter() - t0

    ok = not mismatches and elapsed < 10.0
    _check(
        "dual-backend agreement across fixture keyword subsets",
        ok,
        f"{n_subsets} subsets, {n_queries} queries, {elapsed:.2f}s",
    )
    assert not mismatches, mismatches[:5]
    assert elapsed < 10.0


def test_subclass_saturation_equals_reachability():
    """Saturated SubClassOf facts on random DAGs coincide with BFS
    reachability minus reflexive pairs."""
    rng = random.Random(20_260_814)
    mismatching = 0
    for _ in range(100):
        n, edges = make_dag(rng)
        saturated = saturate(parse_ontology(dag_source(n, edges)))
        got = {
            (int(t.s.local_name[1:]), int(t.o.local_name[1:]))
            for t in saturated.all
            if t.p is PrimitivePredicate.SUB_CLASS_OF
        }
        if got != reachable_pairs(n, edges):
            mismatching += 1

    ok = mismatching == 0
    _check(
        "subclass saturation equals graph reachability",
        ok,
        f"100 random DAGs, {mismatching} mismatching",
    )
    assert mismatching == 0


def test_saturation_idempotent_and_equivalence_gives_subsumption(
    pizza_source, mouse_source
):
    """One more rule pass over a saturated set derives nothing, and every
    equivalence fact is accompanied by both subsumption directions."""
    rng = random.Random(97)
    sources = [pizza_source, mouse_source]
    sources += [random_ontology_source(rng) for _ in range(100)]

    not_idempotent = 0
    missing_subsumptions = 0
    eq_facts = 0
    for source in sources:
        ontology = parse_ontology(source)
        saturated = saturate(ontology)
        if not is_saturated(saturated.all, ontology):
            not_idempotent += 1
        facts = saturated.all
        for eq_pred, sub_pred in (
            (PrimitivePredicate.EQUIVALENT_CLASS, PrimitivePredicate.SUB_CLASS_OF),
            (PrimitivePredicate.EQUIVALENT_PROPERTY, PrimitivePredicate.SUB_PROPERTY),
        ):
            for t in facts:
                if t.p is eq_pred:
                    eq_facts += 1
                    if (
                        Triple(t.s, sub_pred, t.o) not in facts
                        or Triple(t.o, sub_pred, t.s) not in facts
                    ):
                        missing_subsumptions += 1

    ok = not_idempotent == 0 and missing_subsumptions == 0 and eq_facts > 0
    _check(
        "saturation idempotent; equivalence implies mutual subsumption",
        ok,
        f"{len(sources)} ontologies, {eq_facts} equivalence facts",
    )
    assert not_idempotent == 0
    assert missing_subsumptions == 0
    assert eq_facts > 0


def _brute_force(saturated, bgp) -> ResultSet:
    """Naive oracle: try every assignment of facts' terms to variables."""
    facts = {(t.s, t.p, t.o) for t in saturated.all}
    universe = {term for fact in facts for term in fact}
    variables = bgp_vars(bgp)

    rows = set()
    for combo in itertools.product(universe, repeat=len(variables)):
        sub = dict(zip(variables, combo))

        def value(term):
            return sub[term] if isinstance(term, Var) else term

        if all((value(p.s), value(p.p), value(p.o)) in facts for p in bgp):
            rows.add(tuple(render_term(sub[v]) for v in variables))
    return ResultSet(tuple(v.name for v in variables), frozenset(rows))


def test_pattern_evaluator_agrees_with_brute_force():
    """The join evaluator and the enumerate-everything oracle agree on
    every planner-generated pattern over random ontologies."""
    rng = random.Random(424_242)
    checked = 0
    disagreements = 0
    largest = 0
    for case in range(50):
        size = 100 if case == 0 else rng.choice((15, 25, 40))
        ontology = parse_ontology(random_ontology_source(rng, max_classes=size))
        assert len(ontology.entities) <= 200
        largest = max(largest, len(ontology.entities))
        saturated = saturate(ontology)

        names = sorted(ontology.entities)
        tokens = rng.sample(names, rng.randint(1, min(3, len(names))))
        resolved, _ = resolve(tokens, {"g": ontology}, SynonymLexicon.empty())
        for q in plan(resolved).all_queries():
            assert len(bgp_vars(q.bgp)) <= 3
            checked += 1
            if eval_bgp(saturated, q.bgp) != _brute_force(saturated, q.bgp):
                disagreements += 1

    ok = disagreements == 0 and checked >= 50
    _check(
        "pattern evaluator agrees with brute-force oracle",
        ok,
        f"50 cases, {checked} patterns, largest ontology {largest} entities",
    )
    assert disagreements == 0
    assert checked >= 50


def test_fixture_entity_counts(pizza_source):
    """Parsed entity counts match an independent count of the fixture's
    declaration lines."""
    oracle = {
        "classes": pizza_source.count("a owl:Class"),
        "object_properties": pizza_source.count("a owl:ObjectProperty"),
        "data_properties": pizza_source.count("a owl:DatatypeProperty"),
        "instances": pizza_source.count("a owl:NamedIndividual"),
    }
    assert oracle == {
        "classes": 8,
        "object_properties": 3,
        "data_properties": 0,
        "instances": 2,
    }

    ontology = parse_ontology(pizza_source)
    got = {
        "classes": len(ontology.classes()),
        "object_properties": len(ontology.object_properties()),
        "data_properties": len(ontology.data_properties()),
        "instances": len(ontology.instances()),
    }
    summary = Registry().register("pizza", pizza_source)
    summary_counts = (
        summary.classes,
        summary.object_properties,
        summary.data_properties,
        summary.instances,
    )

    ok = got == oracle and summary_counts == (8, 3, 0, 2)
    _check("fixture entity counts", ok, f"{got}")
    assert got == oracle
    assert summary_counts == (8, 3, 0, 2)


def test_canonical_keyword_query_resolution(pizza_source):
    """The canonical query resolves to exactly one direct and one
    synonym match with the shipped stopword list."""
    ontology = parse_ontology(pizza_source)
    lex = SynonymLexicon({"hot": frozenset({"thermal"}), "thermal": frozenset({"hot"})})

    tokens = preprocess(
        "What are FishTopping and thermal ?",
        StopwordList.default(),
        tuple(ontology.entities),
    )
    resolved, unresolved = resolve(tokens, {"pizza": ontology}, lex)
    got = {
        (m.iri.local_name, m.kind.value, m.tier.value)
        for rk in resolved
        for m in rk.matches
    }
    expected = {("FishTopping", "Class", "Direct"), ("Hot", "Class", "Synonym")}

    ok = tokens == ["FishTopping", "thermal"] and got == expected and not unresolved
    _check("canonical keyword query resolution", ok, f"{sorted(got)}")
    assert tokens == ["FishTopping", "thermal"]
    assert got == expected
    assert not unresolved


def test_four_keywords_stay_info_only(pizza_source):
    """Four resolved keywords still get per-entity info queries but no
    combination queries."""
    ontology = parse_ontology(pizza_source)
    resolved, _ = resolve(
        ["Pizza", "Topping", "hasBase", "Italy"],
        {"pizza": ontology},
        SynonymLexicon.empty(),
    )
    assert len(resolved) == 4
    p = plan(resolved)
    info_count = sum(len(kw.queries) for kw in p.per_keyword)

    ok = p.combinations == () and info_count > 0
    _check(
        "more than three keywords stay info-only",
        ok,
        f"{info_count} info queries, {len(p.combinations)} combination queries",
    )
    assert p.combinations == ()
    assert info_count > 0


def _stripped_results(response):
    return {
        dataclasses.replace(r, triple_ms=0, graph_ms=0) for r in response.results
    }


def _keyword_pairs(response):
    return {(k.surface, m) for k in response.keywords for m in k.matches}


def test_multi_ontology_routing_matches_union(pizza_source, mouse_source):
    """A query spanning two ontologies routes each keyword to its owner
    and returns exactly the union of the single-ontology responses."""
    both = Registry()
    both.register("pizza", pizza_source)
    both.register("mouse", mouse_source)
    pizza_only = Registry()
    pizza_only.register("pizza", pizza_source)
    mouse_only = Registry()
    mouse_only.register("mouse", mouse_source)

    query = "FishTopping MA-0001480 hasBase"
    merged = both.search(query)
    alone_p = pizza_only.search(query)
    alone_m = mouse_only.search(query)

    owners = {k.surface: {m.ontology_id for m in k.matches} for k in merged.keywords}
    routing_ok = owners == {
        "FishTopping": {"pizza"},
        "MA-0001480": {"mouse"},
        "hasBase": {"pizza"},
    }
    union_ok = (
        _stripped_results(merged)
        == _stripped_results(alone_p) | _stripped_results(alone_m)
        and _keyword_pairs(merged) == _keyword_pairs(alone_p) | _keyword_pairs(alone_m)
        and merged.unresolved == ()
    )

    ok = routing_ok and union_ok
    _check(
        "multi-ontology routing and merge",
        ok,
        f"{len(merged.results)} merged results",
    )
    assert routing_ok, owners
    assert union_ok


def test_bench_emits_run_rows_and_mean_row(pizza_source, queries_path, lexicon_path):
    """Five runs yield five numbered rows plus a mean row whose values
    match the per-column averages within 1 ms of rounding."""
    queries = [line for line in queries_path.read_text().splitlines() if line.strip()]
    report = run_bench(
        pizza_source,
        queries,
        runs=5,
        ontology_id="pizza_mini",
        lexicon=SynonymLexicon.from_file(lexicon_path),
    )
    rows = list(csv_reader(StringIO(report)))

    header_ok = rows[0] == [
        "ontology",
        "run",
        "parse_load_ms",
        "resp_sparqldl_ms",
        "resp_graph_ms",
    ]
    shape_ok = len(rows) == 7 and [r[1] for r in rows[1:]] == [
        "1",
        "2",
        "3",
        "4",
        "5",
        "mean",
    ]
    mean_ok = shape_ok and all(
        abs(int(rows[6][col]) - statistics.mean(int(r[col]) for r in rows[1:6])) <= 1
        for col in (2, 3, 4)
    )

    ok = header_ok and shape_ok and mean_ok
    _check(
        "bench emits run rows plus a matching mean row",
        ok,
        f"{len(rows) - 1} data rows",
    )
    assert header_ok
    assert shape_ok
    assert mean_ok


# One ontology with enough of every kind to form every supported
# keyword-shape: three classes, three object properties, one data
# property, three instances.
_COVERAGE_SOURCE = HEADER + """
:Alpha a owl:Class .
:Beta a owl:Class .
:Gamma a owl:Class .
:bridges a owl:ObjectProperty ;
    rdfs:domain :Alpha ;
    rdfs:range :Beta .
:connects a owl:ObjectProperty ;
    rdfs:domain :Beta ;
    rdfs:range :Gamma .
:relates a owl:ObjectProperty .
:code a owl:DatatypeProperty ;
    rdfs:domain :Alpha ;
    rdfs:range "string" .
:one a owl:NamedIndividual ;
    a :Alpha .
:two a owl:NamedIndividual ;
    a :Beta .
:three a owl:NamedIndividual .
"""

# (row name, keywords, expected combination tags as a multiset).
_SHAPE_ROWS = [
    ("single class", ["Alpha"], []),
    ("single object property", ["bridges"], []),
    ("single data property", ["code"], []),
    ("single instance", ["one"], []),
    ("two classes", ["Alpha", "Beta"], ["LinkBetweenClasses"] * 2),
    ("two properties", ["bridges", "connects"], ["DomainsAndRanges"] * 2),
    ("two instances", ["one", "two"], ["InstanceClasses"] * 2),
    ("class and property", ["Alpha", "bridges"],
     ["DomainOfClassVia", "RangeOfClassVia"]),
    ("class and instance", ["Alpha", "one"], ["ClassContainsInstance"]),
    ("property and instance", ["bridges", "one"], []),
    ("three classes", ["Alpha", "Beta", "Gamma"], []),
    ("three properties", ["bridges", "connects", "relates"],
     ["DomainsAndRanges"] * 3),
    ("three instances", ["one", "two", "three"], ["InstanceClasses"] * 3),
    ("two classes and a property", ["Alpha", "Beta", "bridges"],
     ["DomainsAndRanges"] + ["RangeOfClassVia"] * 2 + ["DomainOfClassVia"] * 2),
    ("two classes and an instance", ["Alpha", "Beta", "one"],
     ["InstanceClasses"] + ["ClassContainsInstance"] * 2),
    ("two properties and a class", ["bridges", "connects", "Alpha"],
     ["DomainsAndRanges"] * 2 + ["DomainOfClassVia"] * 2 + ["RangeOfClassVia"] * 2),
    ("two properties and an instance", ["bridges", "connects", "one"], []),
    ("two instances and a class", ["one", "two", "Alpha"],
     ["InstanceClasses"] * 2),
    ("two instances and a property", ["one", "two", "bridges"], []),
    ("one of each kind", ["one", "bridges", "Alpha"], []),
]


def test_every_keyword_shape_row_yields_its_queries():
    """Every supported kind multiset (the full one/two/three keyword
    catalog) produces at least one query and exactly its expected
    combination tags; failures name the offending row."""
    ontology = parse_ontology(_COVERAGE_SOURCE)
    failures = []
    for name, tokens, expected_tags in _SHAPE_ROWS:
        resolved, unresolved = resolve(tokens, {"t": ontology}, SynonymLexicon.empty())
        if unresolved:
            failures.append(f"{name}: unresolved keywords {unresolved}")
            continue
        p = plan(resolved)
        if not p.all_queries():
            failures.append(f"{name}: produced no queries at all")
            continue
        got = sorted(q.tag.value for q in p.combinations)
        if got != sorted(expected_tags):
            failures.append(
                f"{name}: combination tags {got} != {sorted(expected_tags)}"
            )

    ok = not failures
    _check("keyword-shape catalog coverage", ok, f"{len(_SHAPE_ROWS)} rows")
    assert not failures, "\n".join(failures)
