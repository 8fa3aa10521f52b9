"""Shared fixtures and independent oracles used across the suite.

The oracles (BFS reachability, brute-force pattern evaluation) are kept
deliberately naive so they share no code with the implementations they
check.
"""

import itertools
import random
from collections import defaultdict
from pathlib import Path

import pytest

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# One line per headline check, echoed once the run finishes so the
# pass/fail roll-up is visible without -s.
ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance summary")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

HEADER = (
    "@prefix : <http://ex.org/t> .\n"
    "@prefix owl: <http://www.w3.org/2002/07/owl> .\n"
    "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema> .\n"
)


def make_dag(rng: random.Random, max_nodes: int = 50, density: float = 0.3):
    """A random subclass DAG as (node_count, edge list over indexes)."""
    n = rng.randint(2, max_nodes)
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < rng.uniform(0.02, density)
    ]
    return n, edges


def dag_source(n: int, edges: list[tuple[int, int]]) -> str:
    """Render a class DAG as parseable source text."""
    lines = [HEADER]
    lines += [f":C{i} a owl:Class ." for i in range(n)]
    lines += [f":C{a} rdfs:subClassOf :C{b} ." for a, b in edges]
    return "\n".join(lines) + "\n"


def reachable_pairs(n: int, edges: list[tuple[int, int]]) -> set[tuple[int, int]]:
    """BFS oracle: all (a, b) with a path a -> b of length >= 1."""
    adj = defaultdict(set)
    for a, b in edges:
        adj[a].add(b)
    pairs = set()
    for start in range(n):
        seen: set[int] = set()
        frontier = [start]
        while frontier:
            node = frontier.pop()
            for nxt in adj[node]:
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        pairs.update((start, t) for t in seen if t != start)
    return pairs


def random_ontology_source(rng: random.Random, max_classes: int = 20) -> str:
    """A richer random ontology: DAG plus equivalences, disjointness,
    properties and typed instances."""
    n, edges = make_dag(rng, max_nodes=max_classes)
    lines = [HEADER]
    lines += [f":C{i} a owl:Class ." for i in range(n)]
    lines += [f":C{a} rdfs:subClassOf :C{b} ." for a, b in edges]
    for _ in range(rng.randint(0, max(1, n // 4))):
        a, b = rng.sample(range(n), 2)
        lines.append(f":C{a} owl:equivalentClass :C{b} .")
    for _ in range(rng.randint(0, 2)):
        a, b = rng.sample(range(n), 2)
        lines.append(f":C{a} owl:disjointWith :C{b} .")
    n_props = rng.randint(0, 3)
    for p in range(n_props):
        lines.append(f":p{p} a owl:ObjectProperty .")
        if rng.random() < 0.7:
            lines.append(f":p{p} rdfs:domain :C{rng.randrange(n)} .")
            lines.append(f":p{p} rdfs:range :C{rng.randrange(n)} .")
    if n_props >= 2 and rng.random() < 0.5:
        lines.append(":p0 owl:inverseOf :p1 .")
    n_inst = rng.randint(0, 4)
    for i in range(n_inst):
        lines.append(f":x{i} a owl:NamedIndividual .")
        if rng.random() < 0.8:
            lines.append(f":x{i} a :C{rng.randrange(n)} .")
    if n_inst >= 2:
        if rng.random() < 0.5:
            lines.append(":x0 owl:sameAs :x1 .")
        if rng.random() < 0.5:
            lines.append(":x0 owl:differentFrom :x1 .")
        if n_props >= 1 and rng.random() < 0.6:
            lines.append(":x0 :p0 :x1 .")
    return "\n".join(lines) + "\n"


@pytest.fixture(scope="session")
def pizza_source() -> str:
    return (FIXTURES / "pizza_mini.ttl").read_text()


@pytest.fixture(scope="session")
def mouse_source() -> str:
    return (FIXTURES / "mouse_mini.ttl").read_text()


@pytest.fixture(scope="session")
def lexicon_path() -> Path:
    return FIXTURES / "lexicon.tsv"


@pytest.fixture(scope="session")
def queries_path() -> Path:
    return FIXTURES / "queries.txt"
