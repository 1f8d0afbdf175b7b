import {
  MetricsRowDoc,
  ScenarioRequestBody,
  ScenarioResponse,
  postScenario,
} from "../api.js";
import {
  BASELINES,
  BODY_NAMES,
  VARIABLES,
  VARIABLE_NAMES,
  categoryName,
  fmtWeight,
} from "../format.js";
import { Selection, pushSelection } from "../url-state.js";
import { el, errorBox, option } from "./common.js";
import { ViewContext } from "./weights.js";

// The default-scenario comparison base, cached per (year, variable) so a
// submission costs exactly one request.
const comparisonCache = new Map<string, ScenarioResponse>();

export function resetScenarioCache(): void {
  comparisonCache.clear();
}

function scenarioBody(sel: Selection): ScenarioRequestBody {
  return {
    year: sel.year,
    variable: sel.variable,
    body: "all",
    baseline_variant: sel.scenarioBaseline,
    house_seat_total: sel.seatTotal,
    apportionment_source: sel.scenarioSource,
    elector_award_method: sel.awardOverrides,
  };
}

function formSelection(root: HTMLElement, sel: Selection): Selection {
  const pick = <T extends HTMLElement>(css: string) =>
    root.querySelector(css) as T;
  const overrides: Record<string, string> = {};
  for (const row of root.querySelectorAll(".override-row")) {
    const state = (row.querySelector(".state") as HTMLInputElement).value
      .trim().toUpperCase();
    const method = (row.querySelector(".method") as HTMLSelectElement).value;
    if (state) overrides[state] = method;
  }
  return {
    ...sel,
    scenarioBaseline: pick<HTMLSelectElement>("[data-control=sbaseline]").value,
    seatTotal: Number(pick<HTMLInputElement>("[data-control=seats]").value),
    scenarioSource:
      pick<HTMLInputElement>("[data-control=recompute]").checked
        ? "recomputed" : "from_input_data",
    awardOverrides: overrides,
  };
}

function overrideRow(state: string, method: string): HTMLElement {
  const row = el("div", { class: "override-row" });
  const stateInput = el("input", {
    class: "state", type: "text", maxlength: "2",
    placeholder: "State", value: state,
  });
  const methodSel = el("select", { class: "method" });
  methodSel.appendChild(option("by_district", "By district",
                               method === "by_district"));
  methodSel.appendChild(option("statewide", "Statewide",
                               method === "statewide"));
  const remove = el("button", { type: "button", class: "remove" }, "x");
  remove.addEventListener("click", () => row.remove());
  row.appendChild(stateInput);
  row.appendChild(methodSel);
  row.appendChild(remove);
  return row;
}

function comparisonTables(content: HTMLElement, defaults: ScenarioResponse,
                          scenario: ScenarioResponse | null): void {
  const holder = el("div", { class: "comparison" });
  for (const body of ["house", "senate", "ec"]) {
    const defaultRows = defaults.rows.filter((r) => r.body === body);
    if (!defaultRows.length) continue;
    const scenarioRows = new Map<string, MetricsRowDoc>();
    for (const row of (scenario?.rows ?? [])) {
      if (row.body === body) scenarioRows.set(row.category_code, row);
    }

    const facet = el("section", { class: "facet", "data-body": body });
    facet.appendChild(el("h3", {}, BODY_NAMES[body]));

    const votes = el("p", { class: "votes" });
    const defaultVotes = defaults.allocations[body]?.total_votes;
    votes.appendChild(el("span", { "data-field": "default_total_votes" },
                         `default votes: ${defaultVotes}`));
    if (scenario) {
      const scenarioVotes = scenario.allocations[body]?.total_votes;
      votes.appendChild(document.createTextNode("  "));
      votes.appendChild(el("span", { "data-field": "scenario_total_votes" },
                           `scenario votes: ${scenarioVotes}`));
    }
    facet.appendChild(votes);

    const table = el("table", { class: "metrics compare" });
    const head = el("tr");
    head.appendChild(el("th", {}, "Category"));
    head.appendChild(el("th", {}, "Default AW"));
    if (scenario) head.appendChild(el("th", {}, "Scenario AW"));
    table.appendChild(el("thead")).appendChild(head);
    const tbody = table.appendChild(el("tbody"));
    for (const row of defaultRows) {
      const tr = el("tr", { "data-category": row.category_code });
      tr.appendChild(el("td", {}, categoryName(row.category_code)));
      const defaultCell = el("td", { "data-field": "default_aw" },
                             fmtWeight(row.absolute_weight));
      defaultCell.dataset.raw = row.absolute_weight === null
        ? "null" : JSON.stringify(row.absolute_weight);
      tr.appendChild(defaultCell);
      if (scenario) {
        const srow = scenarioRows.get(row.category_code);
        const aw = srow ? srow.absolute_weight : null;
        const cell = el("td", { "data-field": "scenario_aw" }, fmtWeight(aw));
        cell.dataset.raw = aw === null ? "null" : JSON.stringify(aw);
        tr.appendChild(cell);
      }
      tbody.appendChild(tr);
    }
    facet.appendChild(table);
    holder.appendChild(facet);
  }
  content.appendChild(holder);
}

export async function renderScenario(root: HTMLElement, sel: Selection,
                                     ctx: ViewContext): Promise<void> {
  root.textContent = "";

  const form = root.appendChild(el("form", { class: "scenario-form" }));
  form.addEventListener("submit", (event) => event.preventDefault());

  const variableSel = el("select", { "data-control": "variable" });
  for (const variable of VARIABLES) {
    variableSel.appendChild(option(variable, VARIABLE_NAMES[variable],
                                   sel.variable === variable));
  }
  variableSel.addEventListener("change", () =>
    ctx.onSelect({ variable: variableSel.value, scenarioRun: false }));
  const varWrap = el("label", {}, "Variable ");
  varWrap.appendChild(variableSel);
  form.appendChild(varWrap);

  const baselineSel = el("select", { "data-control": "sbaseline" });
  for (const [value, name] of Object.entries(BASELINES)) {
    baselineSel.appendChild(option(value, name,
                                   sel.scenarioBaseline === value));
  }
  const blWrap = el("label", {}, "Baseline ");
  blWrap.appendChild(baselineSel);
  form.appendChild(blWrap);

  const seatsInput = el("input", {
    "data-control": "seats", type: "number", min: "1",
    value: String(sel.seatTotal),
  });
  const seatWrap = el("label", {}, "House seats ");
  seatWrap.appendChild(seatsInput);
  form.appendChild(seatWrap);

  const recompute = el("input", { "data-control": "recompute",
                                  type: "checkbox" });
  (recompute as HTMLInputElement).checked =
    sel.scenarioSource === "recomputed";
  const recomputeWrap = el("label", { class: "recompute" });
  recomputeWrap.appendChild(recompute);
  recomputeWrap.appendChild(
    document.createTextNode(" recompute districts from seat total"));
  form.appendChild(recomputeWrap);

  const overrides = form.appendChild(
    el("fieldset", { class: "overrides" }));
  overrides.appendChild(el("legend", {}, "Elector award overrides"));
  const entries = Object.entries(sel.awardOverrides).sort();
  for (const [state, method] of entries) {
    overrides.appendChild(overrideRow(state, method));
  }
  const addButton = el("button", { type: "button", class: "add-override" },
                       "Add override");
  addButton.addEventListener("click", () => {
    overrides.appendChild(overrideRow("", "by_district"));
  });
  overrides.appendChild(addButton);

  const submit = el("button", { type: "submit", class: "run" },
                    "Run scenario");
  form.appendChild(submit);
  const validation = form.appendChild(
    el("p", { class: "validation", role: "alert" }));

  const content = root.appendChild(el("div", { class: "content" }));
  content.appendChild(el("p", { class: "loading" }, "Loading..."));

  // Comparison base: the default scenario for this year/variable.
  const cacheKey = `${sel.year}:${sel.variable}`;
  let defaults = comparisonCache.get(cacheKey);
  if (!defaults) {
    const result = await postScenario(
      { year: sel.year, variable: sel.variable, body: "all" }, ctx.signal);
    if (!result.ok) {
      content.textContent = "";
      content.appendChild(errorBox(result.error, result.status,
                                   () => ctx.onSelect({})));
      return;
    }
    defaults = result.data;
    comparisonCache.set(cacheKey, defaults);
  }
  const stateCount =
    Object.keys(defaults.allocations.house?.seats ?? {}).length;

  const renderResults = (scenario: ScenarioResponse | null) => {
    content.textContent = "";
    comparisonTables(content, defaults as ScenarioResponse, scenario);
  };

  const runScenario = async (runSel: Selection) => {
    seatsInput.classList.remove("invalid");
    overrides.classList.remove("invalid");
    validation.textContent = "";
    if (stateCount && runSel.seatTotal < stateCount) {
      seatsInput.classList.add("invalid");
      validation.textContent =
        `House seat total must be at least the state count (${stateCount})`;
      return;
    }
    const result = await postScenario(scenarioBody(runSel), ctx.signal);
    if (!result.ok) {
      const message = result.error.message || "";
      if (/seat/.test(message)) seatsInput.classList.add("invalid");
      if (/award|elector|district data/.test(message)) {
        overrides.classList.add("invalid");
      }
      content.textContent = "";
      content.appendChild(errorBox(result.error, result.status,
                                   () => void runScenario(runSel)));
      return;
    }
    renderResults(result.data);
  };

  submit.addEventListener("click", () => {
    const runSel = { ...formSelection(root, sel), scenarioRun: true };
    pushSelection(runSel);
    void runScenario(runSel);
  });

  if (sel.scenarioRun) {
    await runScenario(sel);
  } else {
    renderResults(null);
  }
}
