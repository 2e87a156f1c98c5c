/**
 * Thin fetch client for the /api/v1 endpoints.
 *
 * The fetch function is injectable so tests can stub the wire exactly.
 */

import type {
  ApiErrorBody,
  CalcRequest,
  CalcResponse,
  CaseListResponse,
  CaseReport,
  SweepResponse,
} from "./types.js";

export class ApiError extends Error {
  readonly code: string;
  readonly field: string | null;

  constructor(body: ApiErrorBody) {
    super(body.message);
    this.code = body.code;
    this.field = body.field ?? null;
  }
}

export interface CaseOptions {
  scenario?: number;
  factorMode?: string;
  noModalShift?: boolean;
}

export interface SweepQuery {
  points?: (number | string)[];
  min?: number;
  max?: number;
  steps?: number;
  caseId?: string;
  scenario?: number;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class MobishiftApi {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(base = "", fetchFn?: FetchLike) {
    this.base = base.replace(/\/$/, "");
    // bind the global fetch so jsdom and browsers both accept the call
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  listCases(): Promise<CaseListResponse> {
    return this.get("/case-studies");
  }

  caseReport(id: string, options: CaseOptions = {}): Promise<CaseReport> {
    const query = new URLSearchParams();
    if (options.scenario !== undefined) query.set("scenario", String(options.scenario));
    if (options.factorMode !== undefined) query.set("factor_mode", options.factorMode);
    if (options.noModalShift) query.set("no_modal_shift", "true");
    const suffix = query.toString() ? `?${query.toString()}` : "";
    return this.get(`/case-studies/${encodeURIComponent(id)}${suffix}`);
  }

  calculate(request: CalcRequest): Promise<CalcResponse> {
    return this.request("/calculate", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
    });
  }

  sweep(parameter: "bus-occupancy" | "grid", query: SweepQuery = {}): Promise<SweepResponse> {
    const params = new URLSearchParams();
    if (query.points !== undefined) params.set("points", query.points.join(","));
    if (query.min !== undefined) params.set("min", String(query.min));
    if (query.max !== undefined) params.set("max", String(query.max));
    if (query.steps !== undefined) params.set("steps", String(query.steps));
    if (query.caseId !== undefined) params.set("case", query.caseId);
    if (query.scenario !== undefined) params.set("scenario", String(query.scenario));
    const suffix = params.toString() ? `?${params.toString()}` : "";
    return this.get(`/sweeps/${parameter}${suffix}`);
  }

  private get<T>(path: string): Promise<T> {
    return this.request(path);
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.base}/api/v1${path}`, init);
    if (!response.ok) {
      let body: ApiErrorBody;
      try {
        body = (await response.json()) as ApiErrorBody;
      } catch {
        body = { code: "http_error", message: `HTTP ${response.status}`, field: null };
      }
      throw new ApiError(body);
    }
    return (await response.json()) as T;
  }
}
