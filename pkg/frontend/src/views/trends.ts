import { getTrends, TrendSeriesDoc } from "../api.js";
import { chartsAvailable, lineChart } from "../charts.js";
import {
  BASELINES,
  BODY_NAMES,
  VARIABLES,
  VARIABLE_NAMES,
  categoryName,
  fmtWeight,
} from "../format.js";
import { Selection } from "../url-state.js";
import { el, errorBox, option } from "./common.js";
import { ViewContext } from "./weights.js";

const ALL_YEARS = [2000, 2010, 2020];

function selectors(sel: Selection, ctx: ViewContext): HTMLElement {
  const bar = el("div", { class: "selectors" });

  const variableSel = el("select", { "data-control": "variable" });
  for (const variable of VARIABLES) {
    variableSel.appendChild(option(variable, VARIABLE_NAMES[variable],
                                   sel.variable === variable));
  }
  variableSel.addEventListener("change", () =>
    ctx.onSelect({ variable: variableSel.value }));
  const wrap = el("label", {}, "Variable ");
  wrap.appendChild(variableSel);
  bar.appendChild(wrap);

  for (const year of ALL_YEARS) {
    const box = el("input", { type: "checkbox", "data-year": String(year) });
    (box as HTMLInputElement).checked = sel.years.includes(year);
    box.addEventListener("change", () => {
      const years = ALL_YEARS.filter((y) =>
        y === year
          ? (box as HTMLInputElement).checked
          : sel.years.includes(y));
      ctx.onSelect({ years });
    });
    const label = el("label", { class: "year-toggle" });
    label.appendChild(box);
    label.appendChild(document.createTextNode(String(year)));
    bar.appendChild(label);
  }

  const baselineSel = el("select", { "data-control": "baseline" });
  for (const [value, name] of Object.entries(BASELINES)) {
    baselineSel.appendChild(option(value, name, sel.baseline === value));
  }
  baselineSel.addEventListener("change", () =>
    ctx.onSelect({ baseline: baselineSel.value }));
  const blWrap = el("label", {}, "Baseline ");
  blWrap.appendChild(baselineSel);
  bar.appendChild(blWrap);

  return bar;
}

function facetTable(series: TrendSeriesDoc[], years: number[],
                    ): HTMLTableElement {
  const table = el("table", { class: "metrics trend" });
  const head = el("tr");
  head.appendChild(el("th", {}, "Category"));
  for (const year of years) head.appendChild(el("th", {}, String(year)));
  table.appendChild(el("thead")).appendChild(head);
  const body = table.appendChild(el("tbody"));
  for (const s of series) {
    const tr = el("tr", { "data-category": s.category_code });
    tr.appendChild(el("td", {}, categoryName(s.category_code)));
    const byYear = new Map(s.points.map((p) => [p.year, p.absolute_weight]));
    for (const year of years) {
      if (!byYear.has(year)) {
        tr.appendChild(el("td", { "data-year": String(year) }, "–"));
        continue;
      }
      const raw = byYear.get(year) ?? null;
      const cell = el("td", { "data-year": String(year),
                              "data-field": "absolute_weight" },
                      fmtWeight(raw));
      cell.dataset.raw = raw === null ? "null" : JSON.stringify(raw);
      tr.appendChild(cell);
    }
    body.appendChild(tr);
  }
  return table;
}

export async function renderTrends(root: HTMLElement, sel: Selection,
                                   ctx: ViewContext): Promise<void> {
  root.textContent = "";
  root.appendChild(selectors(sel, ctx));
  const content = root.appendChild(el("div", { class: "content" }));
  content.appendChild(el("p", { class: "loading" }, "Loading..."));

  const result = await getTrends(
    { years: sel.years, variable: sel.variable, baseline: sel.baseline },
    ctx.signal);

  content.textContent = "";
  if (!result.ok) {
    content.appendChild(errorBox(result.error, result.status,
                                 () => ctx.onSelect({})));
    return;
  }

  const doc = result.data;
  content.appendChild(el(
    "h2", {},
    `${VARIABLE_NAMES[sel.variable] ?? sel.variable} absolute weights, ` +
    `${sel.years.join("/")}`));

  // Legend carries exactly the harmonized categories the service chose.
  const categories: string[] = [];
  for (const s of doc.series) {
    if (!categories.includes(s.category_code)) {
      categories.push(s.category_code);
    }
  }
  const legend = content.appendChild(el("ul", { class: "legend" }));
  for (const code of categories) {
    legend.appendChild(el("li", { "data-category": code },
                          categoryName(code)));
  }

  for (const body of ["house", "senate", "ec"]) {
    const facetSeries = doc.series.filter((s) => s.body === body);
    if (!facetSeries.length) continue;
    const facet = content.appendChild(
      el("section", { class: "facet", "data-body": body }));
    facet.appendChild(el("h3", {}, BODY_NAMES[body]));
    if (chartsAvailable()) {
      const chart = facet.appendChild(el("div", { class: "chart" }));
      lineChart(
        chart,
        facetSeries.map((s) => ({
          label: categoryName(s.category_code),
          points: s.points.map((p) => ({ x: p.year, y: p.absolute_weight })),
        })),
        sel.years.slice().sort());
    }
    facet.appendChild(facetTable(facetSeries, sel.years.slice().sort()));
    for (const note of facetSeries[0].assumptions) {
      facet.appendChild(el("p", { class: "assumption" }, note));
    }
  }
}
