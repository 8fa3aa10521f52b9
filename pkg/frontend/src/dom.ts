/** Browser bootstrap: the only module that touches the DOM. It mounts
 * the app into #root and forwards form submits and facet/view clicks
 * through event delegation, so re-rendering never re-binds handlers. */

import { App } from "./app.js";
import type { View } from "./render.js";

export function mount(root: HTMLElement, app: App): void {
  app.subscribe((html) => {
    root.innerHTML = html;
  });

  root.addEventListener("submit", (event) => {
    const form = event.target as HTMLElement;
    if (form.matches("form[data-role=search]")) {
      event.preventDefault();
      const input = form.querySelector<HTMLInputElement>("input[name=query]");
      void app.submit(input ? input.value : "");
    }
  });

  root.addEventListener("click", (event) => {
    const el = (event.target as HTMLElement).closest<HTMLElement>(
      "[data-facet],[data-view]",
    );
    if (!el) {
      return;
    }
    if (el.dataset.facet !== undefined) {
      void app.setFacet(el.dataset.facet);
    } else if (el.dataset.view !== undefined) {
      app.setView(el.dataset.view as View);
    }
  });
}

declare global {
  interface Window {
    facetSearchApp?: App;
  }
}

if (typeof document !== "undefined") {
  const root = document.getElementById("root");
  if (root) {
    const app = new App((url, init) => fetch(url, init));
    window.facetSearchApp = app;
    mount(root, app);
  }
}
