"""HTTP facade over the registry.

Endpoints:

* ``POST /ontologies`` - multipart upload (``id`` + ``source`` file).
* ``GET /ontologies``  - registered ontology summaries.
* ``POST /search``     - ``{query, facet, view}`` keyword search.
* ``GET /facets``      - legal facet tags for an entity kind.
* ``GET /health``      - liveness plus registry size.

Domain errors map to conventional statuses: malformed input 400,
duplicate id 409, unusable request state (empty query, empty registry,
incompatible facet) 422.
"""

from __future__ import annotations

import dataclasses
from typing import Literal, Optional

from fastapi import FastAPI, File, Form, HTTPException, Request, UploadFile
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict
from pydantic.alias_generators import to_camel

from .graph import DuplicateNameError
from .lexicon import EmptyQueryError, StopwordList, SynonymLexicon
from .ontology import (
    DanglingReferenceError,
    KindConflictError,
    OntoSyntaxError,
)
from .planner import IncompatibleFacetError, legal_facets
from .rdf import EntityKind, MalformedIriError
from .registry import (
    DuplicateOntologyIdError,
    EmptyRegistryError,
    Registry,
)


class ApiModel(BaseModel):
    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True)


class OntologySummaryModel(ApiModel):
    id: str
    classes: int
    object_properties: int
    data_properties: int
    instances: int
    base_triples: int
    inferred_triples: int
    load_ms: int


class MatchModel(ApiModel):
    ontology_id: str
    name: str
    kind: str
    tier: str
    via_word: Optional[str]


class KeywordModel(ApiModel):
    surface: str
    matches: list[MatchModel]


class QueryReportModel(ApiModel):
    ontology_id: str
    tag: str
    subject: str
    via_property: Optional[str]
    for_keyword: Optional[str]
    sparqldl: Optional[str]
    cypher: Optional[str]
    variables: list[str]
    rows: list[list[str]]
    equal: bool
    triple_ms: int
    graph_ms: int


class SearchResponseModel(ApiModel):
    query: str
    facet: str
    view: str
    keywords: list[KeywordModel]
    unresolved: list[str]
    results: list[QueryReportModel]
    defect: bool
    elapsed_ms: int


class SearchRequest(ApiModel):
    query: str
    facet: str = "ALL"
    view: Literal["SparqlDl", "Cypher", "Both"] = "Both"


class FacetsModel(ApiModel):
    kind: str
    facets: list[str]


class HealthModel(ApiModel):
    status: str
    ontologies: int


_BAD_REQUEST = (
    OntoSyntaxError,
    KindConflictError,
    DanglingReferenceError,
    MalformedIriError,
    DuplicateNameError,
)
_UNPROCESSABLE = (EmptyQueryError, EmptyRegistryError, IncompatibleFacetError)


def create_app(
    stopwords_path: Optional[str] = None,
    lexicon_path: Optional[str] = None,
    registry: Optional[Registry] = None,
) -> FastAPI:
    if registry is None:
        stopwords = (
            StopwordList.from_file(stopwords_path)
            if stopwords_path
            else StopwordList.default()
        )
        lexicon = (
            SynonymLexicon.from_file(lexicon_path)
            if lexicon_path
            else SynonymLexicon.empty()
        )
        registry = Registry(stopwords=stopwords, lexicon=lexicon)

    app = FastAPI(title="ontology keyword query service")
    app.state.registry = registry

    def _error(status: int):
        async def handler(request: Request, exc: Exception) -> JSONResponse:
            return JSONResponse(status_code=status, content={"detail": str(exc)})

        return handler

    for exc_type in _BAD_REQUEST:
        app.add_exception_handler(exc_type, _error(400))
    for exc_type in _UNPROCESSABLE:
        app.add_exception_handler(exc_type, _error(422))
    app.add_exception_handler(DuplicateOntologyIdError, _error(409))

    @app.post("/ontologies", response_model=OntologySummaryModel)
    async def upload_ontology(
        id: str = Form(...), source: UploadFile = File(...)
    ) -> OntologySummaryModel:
        text = (await source.read()).decode("utf-8")
        summary = registry.register(id, text)
        return OntologySummaryModel(**dataclasses.asdict(summary))

    @app.get("/ontologies", response_model=list[OntologySummaryModel])
    async def list_ontologies() -> list[OntologySummaryModel]:
        return [
            OntologySummaryModel(**dataclasses.asdict(s))
            for s in registry.summaries()
        ]

    @app.post("/search", response_model=SearchResponseModel)
    async def search(request: SearchRequest) -> SearchResponseModel:
        response = registry.search(request.query, request.facet, request.view)
        return SearchResponseModel(**dataclasses.asdict(response))

    @app.get("/facets", response_model=FacetsModel)
    async def facets(kind: str) -> FacetsModel:
        try:
            entity_kind = EntityKind(kind)
        except ValueError:
            raise HTTPException(
                status_code=422,
                detail=f"unknown entity kind {kind!r}; expected one of "
                f"{[k.value for k in EntityKind]}",
            )
        return FacetsModel(kind=kind, facets=list(legal_facets(entity_kind)))

    @app.get("/health", response_model=HealthModel)
    async def health() -> HealthModel:
        return HealthModel(status="ok", ontologies=len(registry.ids()))

    return app
