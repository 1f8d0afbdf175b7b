/**
 * The URL query string is the single source of truth for what the app
 * shows. Controls write here; rendering only ever reads from here, so
 * any view is shareable and reproducible from its address.
 */

export interface Selection {
  view: "weights" | "trends" | "scenario";
  year: number;
  variable: string;
  body: string;
  baseline: string;
  years: number[];
  seatTotal: number;
  scenarioBaseline: string;
  scenarioSource: string;
  awardOverrides: Record<string, string>;
  scenarioRun: boolean;
}

export const DEFAULT_SELECTION: Selection = {
  view: "weights",
  year: 2020,
  variable: "race_ethnicity",
  body: "senate",
  baseline: "with_dc",
  years: [2000, 2010, 2020],
  seatTotal: 435,
  scenarioBaseline: "with_dc",
  scenarioSource: "from_input_data",
  awardOverrides: {},
  scenarioRun: false,
};

const VIEWS = new Set(["weights", "trends", "scenario"]);

export function readSelection(search: string): Selection {
  const params = new URLSearchParams(search);
  const sel: Selection = { ...DEFAULT_SELECTION, awardOverrides: {} };

  const view = params.get("view");
  if (view && VIEWS.has(view)) sel.view = view as Selection["view"];
  const year = Number(params.get("year"));
  if (Number.isInteger(year) && year > 0) sel.year = year;
  sel.variable = params.get("variable") || sel.variable;
  sel.body = params.get("body") || sel.body;
  sel.baseline = params.get("baseline") || sel.baseline;

  const years = params.get("years");
  if (years) {
    const parsed = years.split(",").map(Number).filter(Number.isInteger);
    if (parsed.length) sel.years = parsed;
  }
  const seats = Number(params.get("seats"));
  if (Number.isInteger(seats) && seats > 0) sel.seatTotal = seats;
  sel.scenarioBaseline = params.get("sbaseline") || sel.scenarioBaseline;
  sel.scenarioSource = params.get("source") || sel.scenarioSource;
  const methods = params.get("methods");
  if (methods) {
    for (const pair of methods.split(",")) {
      const [state, method] = pair.split(":");
      if (state && method) sel.awardOverrides[state] = method;
    }
  }
  sel.scenarioRun = params.get("run") === "1";
  return sel;
}

export function writeSelection(sel: Selection): string {
  const params = new URLSearchParams();
  params.set("view", sel.view);
  if (sel.view === "weights") {
    params.set("year", String(sel.year));
    params.set("variable", sel.variable);
    params.set("body", sel.body);
    params.set("baseline", sel.baseline);
  } else if (sel.view === "trends") {
    params.set("years", sel.years.join(","));
    params.set("variable", sel.variable);
    params.set("baseline", sel.baseline);
  } else {
    params.set("year", String(sel.year));
    params.set("variable", sel.variable);
    params.set("sbaseline", sel.scenarioBaseline);
    params.set("seats", String(sel.seatTotal));
    params.set("source", sel.scenarioSource);
    const methods = Object.entries(sel.awardOverrides)
      .map(([state, method]) => `${state}:${method}`)
      .sort()
      .join(",");
    if (methods) params.set("methods", methods);
    if (sel.scenarioRun) params.set("run", "1");
  }
  return `?${params}`;
}

export function pushSelection(sel: Selection): void {
  const params = new URLSearchParams(writeSelection(sel));
  // Deployment knobs (backend origin, chart toggle) ride along untouched.
  const current = new URLSearchParams(window.location.search);
  for (const key of ["api", "charts"]) {
    const value = current.get(key);
    if (value !== null) params.set(key, value);
  }
  const query = `?${params}`;
  if (window.location.search !== query) {
    window.history.replaceState(null, "", query + window.location.hash);
  }
}

export function currentSelection(): Selection {
  return readSelection(window.location.search);
}
