/** Screen controller: holds the UI state, talks to the API client and
 * pushes rendered HTML to subscribers.
 *
 * Searches are sequenced: each request takes a ticket and a response is
 * dropped when a newer search has started since, so a slow reply can
 * never overwrite a fresh one.
 */

import { ApiClient, ApiError } from "./api.js";
import type { FetchLike, SearchResponse } from "./api.js";
import { initialState, renderApp, VIEWS } from "./render.js";
import type { UiState, View } from "./render.js";

export type Listener = (html: string) => void;

export const EMPTY_QUERY_MESSAGE = "Enter at least one keyword.";

export class App {
  private readonly api: ApiClient;
  private readonly listeners: Listener[] = [];
  private state: UiState = initialState();
  private seq = 0;

  constructor(fetchFn: FetchLike, baseUrl = "") {
    this.api = new ApiClient(fetchFn, baseUrl);
  }

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
    listener(this.html());
  }

  html(): string {
    return renderApp(this.state);
  }

  getState(): Readonly<UiState> {
    return this.state;
  }

  private emit(): void {
    const html = this.html();
    for (const listener of this.listeners) {
      listener(html);
    }
  }

  /** Submit the query from the search form. An empty or whitespace-only
   * query renders an inline error and makes no request. */
  async submit(query: string): Promise<void> {
    this.state.query = query;
    const trimmed = query.trim();
    if (!trimmed) {
      this.state.error = EMPTY_QUERY_MESSAGE;
      this.state.response = null;
      this.emit();
      return;
    }
    await this.runSearch(trimmed, this.state.facet);
  }

  /** Select a facet chip; re-runs the current query narrowed to it. */
  async setFacet(facet: string): Promise<void> {
    this.state.facet = facet;
    const trimmed = this.state.query.trim();
    if (trimmed) {
      await this.runSearch(trimmed, facet);
    } else {
      this.emit();
    }
  }

  /** Switch which surface query texts are shown. Local only: both texts
   * were already delivered, so no request is made. */
  setView(view: View): void {
    if (VIEWS.includes(view)) {
      this.state.view = view;
      this.emit();
    }
  }

  private async runSearch(query: string, facet: string): Promise<void> {
    const ticket = ++this.seq;
    this.state.busy = true;
    this.state.error = null;
    this.emit();
    try {
      const response = await this.api.search(query, facet);
      const facets = await this.loadFacets(response);
      if (ticket !== this.seq) {
        return; // a newer search superseded this one
      }
      this.state.response = response;
      this.state.facets = facets;
    } catch (err) {
      if (ticket !== this.seq) {
        return;
      }
      this.state.error = err instanceof ApiError ? err.message : String(err);
      this.state.response = null;
    } finally {
      if (ticket === this.seq) {
        this.state.busy = false;
        this.emit();
      }
    }
  }

  /** Union of the legal facets of every kind the keywords resolved to,
   * in first-seen order, with ALL last. Falls back to ALL alone if the
   * facet listing fails; the search result is still useful without it. */
  private async loadFacets(response: SearchResponse): Promise<string[]> {
    const kinds = [
      ...new Set(
        response.keywords.flatMap((k) => k.matches.map((m) => m.kind)),
      ),
    ].sort();
    const facets: string[] = [];
    try {
      const lists = await Promise.all(kinds.map((k) => this.api.facetsFor(k)));
      for (const list of lists) {
        for (const facet of list) {
          if (facet !== "ALL" && !facets.includes(facet)) {
            facets.push(facet);
          }
        }
      }
    } catch {
      facets.length = 0;
    }
    facets.push("ALL");
    return facets;
  }
}
