/**
 * Shapes of the /api/v1 request and response bodies.
 *
 * The UI never computes emissions itself; these types describe everything
 * it is allowed to display.
 */

export type Mode =
  | "car"
  | "cs"
  | "rail"
  | "bus"
  | "bicycle"
  | "walking"
  | "carpool"
  | "other";

export interface GridInfo {
  label: string;
  g_per_kwh: number;
}

export interface Profile {
  label: string;
  distances: Partial<Record<Mode, number>>;
}

export interface Breakdown {
  per_mode: Partial<Record<Mode, number>>;
  total: number;
}

export interface FactorEntry {
  mode: Mode;
  g_per_pkt: number;
  provenance: string;
}

export interface FactorsResponse {
  grid: GridInfo;
  scenario: number;
  factors: FactorEntry[];
}

export interface CaseSummary {
  id: string;
  label: string;
  scenarios: number[];
  default_scenario: number;
  grid: GridInfo;
}

export interface CaseListResponse {
  cases: CaseSummary[];
}

export interface CaseReport {
  case: string;
  label: string;
  scenario: number;
  factor_mode: string;
  no_modal_shift: boolean;
  grid: GridInfo;
  before: Profile;
  during: Profile;
  before_total_km: number;
  during_total_km: number;
  factors: Partial<Record<Mode, number>>;
  per_mode_delta: Partial<Record<Mode, number>>;
  total_delta_kg: number;
  before_emissions_kg: number;
  reduction_rate: number | null;
}

export interface CalcRequest {
  before: Profile;
  during: Profile;
  scenario?: number;
  grid?: string | number;
  occupancy?: Partial<Record<Mode, number>>;
}

export interface CalcResponse {
  before: Breakdown;
  during: Breakdown;
  delta: Breakdown;
  factors: Partial<Record<Mode, number>>;
  reduction_rate: number | null;
}

export interface SweepPoint {
  value: number;
  total_delta_kg: number;
  label: string | null;
}

export interface SweepResponse {
  parameter: string;
  case: string;
  scenario: number;
  factor_mode: string;
  unit: string;
  baseline: SweepPoint;
  points: SweepPoint[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
  field: string | null;
}
