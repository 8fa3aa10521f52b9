"""Command-line entry points.

``serve`` runs the HTTP service; ``load`` and ``query`` are thin
clients for a running service; ``bench`` runs the measurement protocol
in-process so it needs no server.
"""

from __future__ import annotations

from pathlib import Path

import click
import httpx

from .lexicon import StopwordList, SynonymLexicon
from .registry import run_bench

DEFAULT_URL = "http://127.0.0.1:8000"

_VIEWS = {"sparqldl": "SparqlDl", "cypher": "Cypher", "both": "Both"}


def _client(url: str) -> httpx.Client:
    return httpx.Client(base_url=url, timeout=60.0)


def _fail(resp: httpx.Response) -> None:
    try:
        detail = resp.json().get("detail", resp.text)
    except ValueError:
        detail = resp.text
    raise click.ClickException(f"{resp.status_code}: {detail}")


@click.group()
def main() -> None:
    """Keyword search over ontologies with dual query execution."""


@main.command()
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--stopwords", type=click.Path(exists=True, dir_okay=False),
              help="Stopword list file, one word per line.")
@click.option("--lexicon", type=click.Path(exists=True, dir_okay=False),
              help="Synonym lexicon file, two tab-separated words per line.")
def serve(port: int, host: str, stopwords: str, lexicon: str) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .api import create_app

    uvicorn.run(create_app(stopwords, lexicon), host=host, port=port)


@main.command()
@click.option("--ontology", "ontology_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--id", "ontology_id", required=True)
@click.option("--url", default=DEFAULT_URL, show_default=True)
def load(ontology_path: str, ontology_id: str, url: str) -> None:
    """Upload an ontology file to a running service."""
    path = Path(ontology_path)
    with _client(url) as client:
        resp = client.post(
            "/ontologies",
            data={"id": ontology_id},
            files={"source": (path.name, path.read_bytes(), "text/turtle")},
        )
    if resp.status_code != 200:
        _fail(resp)
    s = resp.json()
    click.echo(
        f"registered {s['id']}: {s['classes']} classes, "
        f"{s['objectProperties']} object properties, "
        f"{s['dataProperties']} data properties, {s['instances']} instances "
        f"({s['baseTriples']} asserted + {s['inferredTriples']} inferred triples, "
        f"{s['loadMs']} ms)"
    )


@main.command()
@click.option("--keywords", required=True)
@click.option("--facet", default="all", show_default=True,
              help="A facet tag such as SubClasses, or 'all'.")
@click.option("--view", default="both", show_default=True,
              type=click.Choice(sorted(_VIEWS)))
@click.option("--url", default=DEFAULT_URL, show_default=True)
def query(keywords: str, facet: str, view: str, url: str) -> None:
    """Search the registered ontologies by keywords."""
    payload = {
        "query": keywords,
        "facet": "ALL" if facet.lower() == "all" else facet,
        "view": _VIEWS[view],
    }
    with _client(url) as client:
        resp = client.post("/search", json=payload)
    if resp.status_code != 200:
        _fail(resp)
    body = resp.json()

    for kw in body["keywords"]:
        for m in kw["matches"]:
            via = f" (via {m['viaWord']})" if m["viaWord"] else ""
            click.echo(
                f"{kw['surface']} -> {m['name']} [{m['kind']}] "
                f"{m['tier']}{via} @{m['ontologyId']}"
            )
    if body["unresolved"]:
        click.echo("unresolved: " + ", ".join(body["unresolved"]))
    for r in body["results"]:
        subject = r["subject"]
        if r["viaProperty"]:
            subject += f" via {r['viaProperty']}"
        rows = "; ".join(", ".join(row) for row in r["rows"]) or "-"
        status = "ok" if r["equal"] else "MISMATCH"
        click.echo(f"[{r['ontologyId']}] {r['tag']}({subject}): {rows} [{status}]")
        if r["sparqldl"]:
            click.echo("  " + r["sparqldl"].replace("\n", "\n  "))
        if r["cypher"]:
            click.echo("  " + r["cypher"])
    if body["defect"]:
        click.echo("warning: the two backends disagreed on at least one query", err=True)


@main.command()
@click.option("--ontology", "ontology_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--queries", "queries_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Query lines, one keyword query per line.")
@click.option("--runs", default=5, show_default=True, type=click.IntRange(min=1))
@click.option("--out", "out_path", default="-", show_default=True,
              help="CSV destination; '-' writes to stdout.")
@click.option("--id", "ontology_id", help="Ontology column label; file stem when omitted.")
@click.option("--stopwords", type=click.Path(exists=True, dir_okay=False))
@click.option("--lexicon", type=click.Path(exists=True, dir_okay=False))
def bench(
    ontology_path: str,
    queries_path: str,
    runs: int,
    out_path: str,
    ontology_id: str,
    stopwords: str,
    lexicon: str,
) -> None:
    """Measure parse+load and per-backend response times in-process."""
    source = Path(ontology_path).read_text()
    queries = [
        line.strip()
        for line in Path(queries_path).read_text().splitlines()
        if line.strip()
    ]
    report = run_bench(
        source,
        queries,
        runs,
        ontology_id or Path(ontology_path).stem,
        StopwordList.from_file(stopwords) if stopwords else None,
        SynonymLexicon.from_file(lexicon) if lexicon else None,
    )
    if out_path == "-":
        click.echo(report, nl=False)
    else:
        Path(out_path).write_text(report)
        click.echo(f"wrote {out_path}")
