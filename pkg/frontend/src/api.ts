/** Typed client for the search service's JSON API.
 *
 * The fetch function is injected so tests can stand in a mocked server;
 * only the structural subset of the Fetch API that the client touches
 * is required.
 */

export interface MatchInfo {
  ontologyId: string;
  name: string;
  kind: string;
  tier: string;
  viaWord: string | null;
}

export interface KeywordInfo {
  surface: string;
  matches: MatchInfo[];
}

export interface QueryResult {
  ontologyId: string;
  tag: string;
  subject: string;
  viaProperty: string | null;
  forKeyword: string | null;
  sparqldl: string | null;
  cypher: string | null;
  variables: string[];
  rows: string[][];
  equal: boolean;
  tripleMs: number;
  graphMs: number;
}

export interface SearchResponse {
  query: string;
  facet: string;
  view: string;
  keywords: KeywordInfo[];
  unresolved: string[];
  results: QueryResult[];
  defect: boolean;
  elapsedMs: number;
}

export interface FacetList {
  kind: string;
  facets: string[];
}

export interface ResponseLike {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export interface RequestInitLike {
  method?: string;
  headers?: Record<string, string>;
  body?: string;
}

export type FetchLike = (url: string, init?: RequestInitLike) => Promise<ResponseLike>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

async function detailOf(resp: ResponseLike): Promise<string> {
  try {
    const body = (await resp.json()) as { detail?: unknown };
    if (typeof body.detail === "string") {
      return body.detail;
    }
    return JSON.stringify(body.detail ?? body);
  } catch {
    return `request failed with status ${resp.status}`;
  }
}

export class ApiClient {
  constructor(
    private readonly fetchFn: FetchLike,
    private readonly baseUrl = "",
  ) {}

  /** POST /search. Both query texts are always requested; the view
   * toggle in the UI is purely presentational. */
  async search(query: string, facet: string): Promise<SearchResponse> {
    const resp = await this.fetchFn(`${this.baseUrl}/search`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ query, facet, view: "Both" }),
    });
    if (!resp.ok) {
      throw new ApiError(resp.status, await detailOf(resp));
    }
    return (await resp.json()) as SearchResponse;
  }

  /** GET /facets?kind=... */
  async facetsFor(kind: string): Promise<string[]> {
    const resp = await this.fetchFn(
      `${this.baseUrl}/facets?kind=${encodeURIComponent(kind)}`,
    );
    if (!resp.ok) {
      throw new ApiError(resp.status, await detailOf(resp));
    }
    return ((await resp.json()) as FacetList).facets;
  }
}
