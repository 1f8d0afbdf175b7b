import { getMetrics } from "../api.js";
import { barChart, chartsAvailable } from "../charts.js";
import {
  BASELINES,
  BODY_NAMES,
  VARIABLES,
  VARIABLE_NAMES,
  categoryName,
} from "../format.js";
import { Selection } from "../url-state.js";
import { el, errorBox, metricsTable, option } from "./common.js";

export interface ViewContext {
  onSelect: (update: Partial<Selection>) => void;
  signal?: AbortSignal;
}

function selectors(sel: Selection, ctx: ViewContext,
                   years: number[]): HTMLElement {
  const bar = el("div", { class: "selectors" });

  const yearSel = el("select", { "data-control": "year" });
  for (const year of years) {
    yearSel.appendChild(option(String(year), String(year), sel.year === year));
  }
  yearSel.addEventListener("change", () =>
    ctx.onSelect({ year: Number(yearSel.value) }));

  const variableSel = el("select", { "data-control": "variable" });
  for (const variable of VARIABLES) {
    variableSel.appendChild(option(variable, VARIABLE_NAMES[variable],
                                   sel.variable === variable));
  }
  variableSel.addEventListener("change", () =>
    ctx.onSelect({ variable: variableSel.value }));

  const bodySel = el("select", { "data-control": "body" });
  for (const [body, name] of Object.entries(BODY_NAMES)) {
    bodySel.appendChild(option(body, name, sel.body === body));
  }
  bodySel.addEventListener("change", () =>
    ctx.onSelect({ body: bodySel.value }));

  const baselineSel = el("select", { "data-control": "baseline" });
  for (const [value, name] of Object.entries(BASELINES)) {
    baselineSel.appendChild(option(value, name, sel.baseline === value));
  }
  baselineSel.addEventListener("change", () =>
    ctx.onSelect({ baseline: baselineSel.value }));

  for (const [label, control] of [
    ["Year", yearSel], ["Variable", variableSel],
    ["Body", bodySel], ["Baseline", baselineSel],
  ] as const) {
    const wrap = el("label", {}, `${label} `);
    wrap.appendChild(control);
    bar.appendChild(wrap);
  }
  return bar;
}

export async function renderWeights(root: HTMLElement, sel: Selection,
                                    ctx: ViewContext): Promise<void> {
  root.textContent = "";
  root.appendChild(selectors(sel, ctx, [2000, 2010, 2020]));
  const content = root.appendChild(el("div", { class: "content" }));
  content.appendChild(el("p", { class: "loading" }, "Loading..."));

  const result = await getMetrics(sel, ctx.signal);

  content.textContent = "";
  if (!result.ok) {
    content.appendChild(errorBox(result.error, result.status,
                                 () => ctx.onSelect({})));
    return;
  }

  const rows = result.data.rows;
  content.appendChild(el(
    "h2", {},
    `${VARIABLE_NAMES[sel.variable] ?? sel.variable} weights, ` +
    `${BODY_NAMES[sel.body] ?? sel.body}, ${sel.year}`));

  if (chartsAvailable()) {
    const chart = content.appendChild(el("div", { class: "chart" }));
    barChart(chart, rows.map((row) => ({
      label: categoryName(row.category_code),
      value: row.absolute_weight,
    })));
  }
  content.appendChild(metricsTable(rows));
}
