/**
 * App shell: routes the three views off the URL, which is the single
 * source of truth for all selection state. Each selection change
 * re-renders from the URL; superseded in-flight requests are aborted
 * and their views detached, so the latest selection always wins.
 */

import { Selection, currentSelection, pushSelection } from "./url-state.js";
import { el } from "./views/common.js";
import { renderScenario } from "./views/scenario.js";
import { renderTrends } from "./views/trends.js";
import { renderWeights, ViewContext } from "./views/weights.js";

const VIEW_TITLES: Record<Selection["view"], string> = {
  weights: "Weights",
  trends: "Trends",
  scenario: "What-if scenarios",
};

let controller: AbortController | null = null;

export function render(root: HTMLElement): void {
  const sel = currentSelection();
  controller?.abort();
  controller = new AbortController();

  const nav = el("nav");
  for (const view of Object.keys(VIEW_TITLES) as Selection["view"][]) {
    const link = el("a", {
      href: "#",
      class: sel.view === view ? "active" : "",
      "data-view": view,
    }, VIEW_TITLES[view]);
    link.addEventListener("click", (event) => {
      event.preventDefault();
      pushSelection({ ...sel, view });
      render(root);
    });
    nav.appendChild(link);
  }

  const viewRoot = el("main", { class: `view view-${sel.view}` });
  root.replaceChildren(nav, viewRoot);

  const ctx: ViewContext = {
    onSelect: (update) => {
      pushSelection({ ...currentSelection(), ...update });
      render(root);
    },
    signal: controller.signal,
  };

  const view = sel.view === "trends" ? renderTrends
    : sel.view === "scenario" ? renderScenario
    : renderWeights;
  view(viewRoot, sel, ctx).catch((err: Error) => {
    if (err.name === "AbortError") return;
    viewRoot.appendChild(el("p", { class: "error-box" },
                            `unexpected failure: ${err.message}`));
  });
}

export function start(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app mount point");
  window.addEventListener("popstate", () => render(root));
  render(root);
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  start();
}
