import { ErrorEnvelope, MetricsRowDoc } from "../api.js";
import { categoryName, fmtExcess, fmtWeight } from "../format.js";

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  if (text !== undefined) node.textContent = text;
  return node;
}

export function option(value: string, label: string, selected: boolean,
                       ): HTMLOptionElement {
  const node = el("option", { value }, label);
  if (selected) node.selected = true;
  return node;
}

/** Inline service-error panel with a retry affordance. */
export function errorBox(error: ErrorEnvelope, status: number,
                         onRetry: () => void): HTMLElement {
  const box = el("div", { class: "error-box", role: "alert" });
  box.appendChild(el("strong", {}, `Error ${status || ""} (${error.code})`));
  box.appendChild(el("p", {}, error.message));
  const retry = el("button", { class: "retry", type: "button" }, "Retry");
  retry.addEventListener("click", onRetry);
  box.appendChild(retry);
  return box;
}

function numberCell(field: string, raw: number | null,
                    formatted: string): HTMLTableCellElement {
  const cell = el("td", { "data-field": field }, formatted);
  cell.dataset.raw = raw === null ? "null" : JSON.stringify(raw);
  return cell;
}

/**
 * AW/RW/EP table for one body's rows. Each numeric cell carries the raw
 * payload value in data-raw, so traceability is checkable in tests.
 */
export function metricsTable(rows: MetricsRowDoc[]): HTMLTableElement {
  const table = el("table", { class: "metrics" });
  const head = el("tr");
  for (const title of ["Category", "AW", "RW", "EP"]) {
    head.appendChild(el("th", {}, title));
  }
  table.appendChild(el("thead")).appendChild(head);
  const body = table.appendChild(el("tbody"));
  for (const row of rows) {
    const tr = el("tr", { "data-category": row.category_code });
    tr.appendChild(el("td", {}, categoryName(row.category_code)));
    tr.appendChild(numberCell("absolute_weight", row.absolute_weight,
                              fmtWeight(row.absolute_weight)));
    tr.appendChild(numberCell("relative_weight", row.relative_weight,
                              fmtWeight(row.relative_weight)));
    tr.appendChild(numberCell("excess_population", row.excess_population,
                              fmtExcess(row.excess_population)));
    body.appendChild(tr);
  }
  return table;
}
