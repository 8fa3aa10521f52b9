/** Pure HTML renderers: state in, markup string out. No DOM access, so
 * every screen is testable as plain string comparison. */

import type { KeywordInfo, QueryResult, SearchResponse } from "./api.js";

export type View = "SparqlDl" | "Cypher" | "Both";

export const VIEWS: readonly View[] = ["SparqlDl", "Cypher", "Both"];

export interface UiState {
  query: string;
  facet: string;
  view: View;
  facets: string[];
  response: SearchResponse | null;
  error: string | null;
  busy: boolean;
}

export function initialState(): UiState {
  return {
    query: "",
    facet: "ALL",
    view: "Both",
    facets: ["ALL"],
    response: null,
    error: null,
    busy: false,
  };
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderSearchForm(state: UiState): string {
  const error = state.error
    ? `<p class="form-error" role="alert">${escapeHtml(state.error)}</p>`
    : "";
  return [
    `<form data-role="search" class="search-form">`,
    `<input name="query" type="text" placeholder="Enter keywords"`,
    ` value="${escapeHtml(state.query)}" autocomplete="off">`,
    `<button type="submit"${state.busy ? " disabled" : ""}>Search</button>`,
    `</form>`,
    error,
  ].join("");
}

export function renderFacetPicker(state: UiState): string {
  const chips = state.facets
    .map((facet) => {
      const active = facet === state.facet ? " active" : "";
      return (
        `<button type="button" class="facet-chip${active}"` +
        ` data-facet="${escapeHtml(facet)}">${escapeHtml(facet)}</button>`
      );
    })
    .join("");
  return `<nav class="facet-picker" aria-label="facets">${chips}</nav>`;
}

export function renderViewToggle(state: UiState): string {
  const buttons = VIEWS.map((view) => {
    const active = view === state.view ? " active" : "";
    return (
      `<button type="button" class="view-option${active}"` +
      ` data-view="${view}">${view}</button>`
    );
  }).join("");
  return `<nav class="view-toggle" aria-label="query syntax">${buttons}</nav>`;
}

function renderMatches(keyword: KeywordInfo): string {
  const matches = keyword.matches
    .map((m) => {
      const via = m.viaWord ? ` via ${escapeHtml(m.viaWord)}` : "";
      return (
        `<li class="match">${escapeHtml(m.name)}` +
        ` <span class="kind">[${escapeHtml(m.kind)}]</span>` +
        ` <span class="tier">${escapeHtml(m.tier)}${via}</span>` +
        ` <span class="owner">@${escapeHtml(m.ontologyId)}</span></li>`
      );
    })
    .join("");
  return (
    `<li class="keyword"><span class="surface">${escapeHtml(keyword.surface)}</span>` +
    `<ul>${matches}</ul></li>`
  );
}

export function renderKeywords(response: SearchResponse): string {
  const resolved = response.keywords.map(renderMatches).join("");
  const unresolved = response.unresolved.length
    ? `<p class="unresolved">Unresolved: ${response.unresolved
        .map(escapeHtml)
        .join(", ")}</p>`
    : "";
  return `<section class="keywords"><ul>${resolved}</ul>${unresolved}</section>`;
}

function renderRows(result: QueryResult): string {
  if (result.variables.length === 0) {
    const held = result.rows.length > 0;
    return `<p class="membership">${held ? "holds" : "does not hold"}</p>`;
  }
  if (result.rows.length === 0) {
    return `<p class="no-rows">no rows</p>`;
  }
  const header = result.variables
    .map((v) => `<th>${escapeHtml(v)}</th>`)
    .join("");
  const body = result.rows
    .map(
      (row) =>
        `<tr>${row.map((cell) => `<td>${escapeHtml(cell)}</td>`).join("")}</tr>`,
    )
    .join("");
  return (
    `<table class="rows"><thead><tr>${header}</tr></thead>` +
    `<tbody>${body}</tbody></table>`
  );
}

function renderQueryTexts(result: QueryResult, view: View): string {
  const parts: string[] = [];
  if (view !== "Cypher" && result.sparqldl) {
    parts.push(
      `<pre class="query-text sparqldl">${escapeHtml(result.sparqldl)}</pre>`,
    );
  }
  if (view !== "SparqlDl" && result.cypher) {
    parts.push(
      `<pre class="query-text cypher">${escapeHtml(result.cypher)}</pre>`,
    );
  }
  return parts.join("");
}

function renderResult(result: QueryResult, view: View): string {
  const via = result.viaProperty
    ? ` via ${escapeHtml(result.viaProperty)}`
    : "";
  const marker = result.equal
    ? `<span class="agreement ok">ok</span>`
    : `<span class="agreement mismatch">backends disagree</span>`;
  return (
    `<article class="result">` +
    `<h3>${escapeHtml(result.subject)}${via}` +
    ` <span class="owner">@${escapeHtml(result.ontologyId)}</span> ${marker}</h3>` +
    renderRows(result) +
    renderQueryTexts(result, view) +
    `</article>`
  );
}

export function renderResults(state: UiState): string {
  const response = state.response;
  if (!response) {
    return "";
  }
  const defect = response.defect
    ? `<div class="defect-warning" role="alert">Warning: the two backends` +
      ` returned different results for at least one query.</div>`
    : "";

  const byTag = new Map<string, QueryResult[]>();
  for (const result of response.results) {
    const bucket = byTag.get(result.tag);
    if (bucket) {
      bucket.push(result);
    } else {
      byTag.set(result.tag, [result]);
    }
  }
  const sections = [...byTag.entries()]
    .map(([tag, results]) => {
      const items = results.map((r) => renderResult(r, state.view)).join("");
      return (
        `<section class="result-section" data-tag="${escapeHtml(tag)}">` +
        `<h2>${escapeHtml(tag)}</h2>${items}</section>`
      );
    })
    .join("");
  const empty =
    response.results.length === 0
      ? `<p class="no-results">No queries were generated.</p>`
      : "";
  return (
    defect +
    renderKeywords(response) +
    renderFacetPicker(state) +
    renderViewToggle(state) +
    sections +
    empty
  );
}

export function renderApp(state: UiState): string {
  const busy = state.busy ? `<p class="busy">Searching...</p>` : "";
  return (
    `<main class="facet-search">` +
    `<h1>Ontology keyword search</h1>` +
    renderSearchForm(state) +
    busy +
    renderResults(state) +
    `</main>`
  );
}
