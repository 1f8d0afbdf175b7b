/**
 * Typed client for the /api/v1 metrics service.
 *
 * Every number the UI shows comes straight out of these payloads; the
 * client never post-processes values beyond display formatting.
 */

export interface MetricsRowDoc {
  variable: string;
  category_code: string;
  body: string;
  census_year: number;
  baseline_variant: string;
  unit_of_analysis: string;
  pi0: number;
  pib: number;
  absolute_weight: number | null;
  relative_weight: number | null;
  excess_population: number;
}

export interface MetricsResponse {
  year: number;
  variable: string;
  body: string;
  baseline: string;
  rows: MetricsRowDoc[];
}

export interface TrendPoint {
  year: number;
  absolute_weight: number | null;
}

export interface TrendSeriesDoc {
  body: string;
  category_code: string;
  points: TrendPoint[];
  assumptions: string[];
}

export interface TrendsResponse {
  kind: string;
  variable: string;
  series: TrendSeriesDoc[];
  assumptions: string[];
}

export interface AllocationSummary {
  total_votes: number;
  assumptions: string[];
  seats?: Record<string, number>;
}

export interface ScenarioResponse {
  year: number;
  variable: string;
  body: string;
  baseline: string;
  rows: MetricsRowDoc[];
  allocations: Record<string, AllocationSummary>;
}

export interface ScenarioRequestBody {
  year: number;
  variable: string;
  body?: string;
  baseline_variant?: string;
  elector_award_method?: Record<string, string>;
  house_seat_total?: number;
  apportionment_source?: string;
}

export interface ErrorEnvelope {
  code: string;
  message: string;
  details: Record<string, unknown>;
}

export type ApiResult<T> =
  | { ok: true; data: T }
  | { ok: false; status: number; error: ErrorEnvelope };

declare global {
  interface Window {
    REPWEIGHTS_API_BASE?: string;
  }
}

function base(): string {
  return (typeof window !== "undefined" && window.REPWEIGHTS_API_BASE) || "";
}

async function request<T>(
  path: string,
  init: RequestInit,
  signal?: AbortSignal,
): Promise<ApiResult<T>> {
  let response: Response;
  try {
    response = await fetch(base() + path, { ...init, signal });
  } catch (err) {
    if ((err as Error).name === "AbortError") throw err;
    return {
      ok: false,
      status: 0,
      error: {
        code: "network_error",
        message: `service unreachable: ${(err as Error).message}`,
        details: {},
      },
    };
  }
  let payload: unknown;
  try {
    payload = await response.json();
  } catch {
    payload = { code: "bad_payload", message: "non-JSON response", details: {} };
  }
  if (!response.ok) {
    return { ok: false, status: response.status, error: payload as ErrorEnvelope };
  }
  return { ok: true, data: payload as T };
}

export function getMetrics(
  sel: { year: number; variable: string; body: string; baseline: string },
  signal?: AbortSignal,
): Promise<ApiResult<MetricsResponse>> {
  const params = new URLSearchParams({
    year: String(sel.year),
    variable: sel.variable,
    body: sel.body,
    baseline: sel.baseline,
  });
  return request(`/api/v1/metrics?${params}`, { method: "GET" }, signal);
}

export function getTrends(
  sel: { years: number[]; variable: string; baseline: string },
  signal?: AbortSignal,
): Promise<ApiResult<TrendsResponse>> {
  const params = new URLSearchParams({
    years: sel.years.join(","),
    variable: sel.variable,
    baseline: sel.baseline,
  });
  return request(`/api/v1/trends?${params}`, { method: "GET" }, signal);
}

export function postScenario(
  body: ScenarioRequestBody,
  signal?: AbortSignal,
): Promise<ApiResult<ScenarioResponse>> {
  return request(
    "/api/v1/scenario",
    {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    },
    signal,
  );
}
