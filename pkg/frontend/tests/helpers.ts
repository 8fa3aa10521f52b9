/** Canned server payloads and a recording fetch stub shared by the
 * tests. The stub is the "mocked server": it returns whatever the
 * handler says and records every call for assertions. */

import type {
  FetchLike,
  QueryResult,
  RequestInitLike,
  ResponseLike,
  SearchResponse,
} from "../src/api.js";

export const CLASS_FACETS = [
  "SubClasses",
  "EquivalentClasses",
  "DisjointClasses",
  "Instances",
  "Annotation",
  "ALL",
];

export function jsonResponse(body: unknown, status = 200): ResponseLike {
  return { ok: status < 400, status, json: async () => body };
}

export function brokenResponse(status: number): ResponseLike {
  return {
    ok: false,
    status,
    json: async () => {
      throw new Error("not json");
    },
  };
}

export interface RecordedCall {
  url: string;
  init?: RequestInitLike;
}

export interface FetchStub {
  fn: FetchLike;
  calls: RecordedCall[];
}

export function fetchStub(
  handler: (
    url: string,
    init?: RequestInitLike,
  ) => ResponseLike | Promise<ResponseLike>,
): FetchStub {
  const calls: RecordedCall[] = [];
  const fn: FetchLike = async (url, init) => {
    calls.push({ url, init });
    return handler(url, init);
  };
  return { fn, calls };
}

export function makeResult(overrides: Partial<QueryResult> = {}): QueryResult {
  return {
    ontologyId: "pizza",
    tag: "SubClasses",
    subject: "Hot",
    viaProperty: null,
    forKeyword: "thermal",
    sparqldl:
      "PREFIX : <http://ex.org/pizza#>\nSELECT ?x WHERE { SubClassOf(?x, :Hot) }",
    cypher: 'MATCH (x)-[:SUB_CLASS_OF]->(c {name:"Hot"}) RETURN x.name',
    variables: ["x"],
    rows: [["Spicy"]],
    equal: true,
    tripleMs: 0,
    graphMs: 0,
    ...overrides,
  };
}

export function makeResponse(
  overrides: Partial<SearchResponse> = {},
): SearchResponse {
  return {
    query: "thermal",
    facet: "ALL",
    view: "Both",
    keywords: [
      {
        surface: "thermal",
        matches: [
          {
            ontologyId: "pizza",
            name: "Hot",
            kind: "Class",
            tier: "Synonym",
            viaWord: "thermal",
          },
        ],
      },
    ],
    unresolved: [],
    results: [makeResult()],
    defect: false,
    elapsedMs: 1,
    ...overrides,
  };
}

/** A mocked server answering /search with the given response and
 * /facets with the class facet list. */
export function mockServer(searchResponse: SearchResponse): FetchStub {
  return fetchStub((url) => {
    if (url.startsWith("/search")) {
      return jsonResponse(searchResponse);
    }
    if (url.startsWith("/facets")) {
      return jsonResponse({ kind: "Class", facets: CLASS_FACETS });
    }
    throw new Error(`unexpected request: ${url}`);
  });
}
