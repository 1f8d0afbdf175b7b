import { vi } from "vitest";
import {
  MetricsResponse,
  MetricsRowDoc,
  ScenarioResponse,
  TrendsResponse,
} from "../src/api.js";

export interface RecordedCall {
  url: string;
  method: string;
  body: unknown;
}

export interface FetchStub {
  calls: RecordedCall[];
  route: (pattern: string, responder: Responder) => void;
  restore: () => void;
}

type Responder = (call: RecordedCall) =>
  | { status?: number; json: unknown }
  | Promise<{ status?: number; json: unknown }>;

export function stubFetch(): FetchStub {
  const calls: RecordedCall[] = [];
  const routes: [string, Responder][] = [];

  const mock = vi.fn(async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    const call: RecordedCall = {
      url,
      method: init?.method ?? "GET",
      body: init?.body ? JSON.parse(String(init.body)) : null,
    };
    calls.push(call);
    for (const [pattern, responder] of routes) {
      if (url.includes(pattern)) {
        const out = await responder(call);
        return new Response(JSON.stringify(out.json), {
          status: out.status ?? 200,
          headers: { "Content-Type": "application/json" },
        });
      }
    }
    throw new Error(`unrouted fetch: ${url}`);
  });
  vi.stubGlobal("fetch", mock);

  return {
    calls,
    route: (pattern, responder) => routes.push([pattern, responder]),
    restore: () => vi.unstubAllGlobals(),
  };
}

export function row(body: string, category: string, aw: number | null,
                    rw: number | null, ep: number,
                    extra: Partial<MetricsRowDoc> = {}): MetricsRowDoc {
  return {
    variable: "sex",
    category_code: category,
    body,
    census_year: 2020,
    baseline_variant: "with_dc",
    unit_of_analysis: "population",
    pi0: 0.5,
    pib: 0.5,
    absolute_weight: aw,
    relative_weight: rw,
    excess_population: ep,
    ...extra,
  };
}

export function metricsPayload(body = "senate"): MetricsResponse {
  return {
    year: 2020,
    variable: "sex",
    body,
    baseline: "with_dc",
    rows: [
      row(body, "female", 1.0184512345678, 1.0, 1234567.89),
      row(body, "male", 0.97312987654321, 0.95550123, -1234567.89),
    ],
  };
}

export function scenarioPayload(kind: "default" | "custom"): ScenarioResponse {
  const shift = kind === "default" ? 0 : 0.01;
  const rows: MetricsRowDoc[] = [];
  for (const body of ["house", "senate", "ec"]) {
    rows.push(row(body, "female", 1.018 + shift, 1.0, 5000.5));
    rows.push(row(body, "male", 0.973 - shift, 0.955, -5000.5));
  }
  return {
    year: 2020,
    variable: "sex",
    body: "all",
    baseline: "with_dc",
    rows,
    allocations: {
      house: {
        total_votes: 435,
        assumptions: [],
        seats: { AA: 3, BB: 2, CC: 1 },
      },
      senate: { total_votes: 6, assumptions: [] },
      ec: { total_votes: kind === "default" ? 12 : 12, assumptions: [] },
    },
  };
}

export function trendsPayload(): TrendsResponse {
  const series = [];
  for (const body of ["house", "senate", "ec"]) {
    series.push({
      body,
      category_code: "rural",
      points: [
        { year: 2000, absolute_weight: 1.21987654321 },
        { year: 2020, absolute_weight: 1.37812345678 },
      ],
      assumptions: body === "senate" ? [] : ["synthetic districts for 2000"],
    });
    series.push({
      body,
      category_code: "urban",
      points: [
        { year: 2000, absolute_weight: 0.94123 },
        { year: 2020, absolute_weight: 0.90512 },
      ],
      assumptions: [],
    });
  }
  return {
    kind: "trends_fig3",
    variable: "rural_urban",
    series,
    assumptions: ["synthetic districts for 2000"],
  };
}

export function mount(): HTMLElement {
  document.body.innerHTML = '<div id="app"></div>';
  return document.getElementById("app") as HTMLElement;
}

export function setUrl(query: string): void {
  window.history.replaceState(null, "", query);
}

export async function settle(): Promise<void> {
  // Drain the microtask queue a few times so view promises finish.
  for (let i = 0; i < 8; i++) {
    await Promise.resolve();
  }
  await new Promise((resolve) => setTimeout(resolve, 0));
}
