/**
 * Calculator state: the editable inputs, the selected preset, and the
 * newest-wins gate that keeps stale responses off the screen.
 */

import type { CalcRequest, CaseReport, Mode, Profile } from "./types.js";

export const EDITABLE_MODES: Mode[] = [
  "car",
  "cs",
  "rail",
  "bus",
  "bicycle",
  "walking",
  "carpool",
  "other",
];

export interface CalculatorState {
  preset: string; // case id, or "custom" once any distance is edited
  before: Partial<Record<Mode, number>>;
  during: Partial<Record<Mode, number>>;
  scenario: number;
  grid: string | number | null; // null leaves the service default in charge
  busOccupancy: number | null; // null keeps the bundled occupancy
}

export function defaultState(): CalculatorState {
  return {
    preset: "custom",
    before: {},
    during: {},
    scenario: 1,
    grid: null,
    busOccupancy: null,
  };
}

/** Load a case report's reconstructed tables into the editable fields. */
export function applyPreset(state: CalculatorState, report: CaseReport): CalculatorState {
  return {
    ...state,
    preset: report.case,
    before: { ...report.before.distances },
    during: { ...report.during.distances },
    scenario: report.scenario,
    grid: report.grid.label,
  };
}

/** Edit one distance field; any edit turns the preset into "custom". */
export function editDistance(
  state: CalculatorState,
  side: "before" | "during",
  mode: Mode,
  km: number,
): CalculatorState {
  const clamped = Number.isFinite(km) ? Math.max(0, km) : 0;
  return {
    ...state,
    preset: "custom",
    [side]: { ...state[side], [mode]: clamped },
  };
}

export function setScenario(state: CalculatorState, scenario: number): CalculatorState {
  return { ...state, scenario };
}

export function setGrid(state: CalculatorState, grid: string | number | null): CalculatorState {
  return { ...state, grid };
}

export function setBusOccupancy(state: CalculatorState, occupancy: number | null): CalculatorState {
  return { ...state, busOccupancy: occupancy };
}

function toProfile(label: string, distances: Partial<Record<Mode, number>>): Profile {
  const cleaned: Partial<Record<Mode, number>> = {};
  for (const mode of EDITABLE_MODES) {
    const km = distances[mode];
    if (km !== undefined && km > 0) cleaned[mode] = km;
  }
  return { label, distances: cleaned };
}

/** The exact body POSTed to /calculate for the current inputs. */
export function toCalcRequest(state: CalculatorState): CalcRequest {
  const request: CalcRequest = {
    before: toProfile("before", state.before),
    during: toProfile("during", state.during),
    scenario: state.scenario,
  };
  if (state.grid !== null) request.grid = state.grid;
  if (state.busOccupancy !== null) request.occupancy = { bus: state.busOccupancy };
  return request;
}

/** Stable key for a request's parameters: object keys are sorted so the
 * same parameters always hash to the same string. */
export function requestKey(params: unknown): string {
  return JSON.stringify(params, (_, value) => {
    if (value !== null && typeof value === "object" && !Array.isArray(value)) {
      const sorted: Record<string, unknown> = {};
      for (const key of Object.keys(value).sort()) {
        sorted[key] = (value as Record<string, unknown>)[key];
      }
      return sorted;
    }
    return value;
  });
}

/**
 * Newest-wins gate, one slot per panel. A response may only be rendered
 * when its request key is still the latest one issued for that panel.
 */
export class LatestGate {
  private readonly latest = new Map<string, string>();

  issue(panel: string, key: string): void {
    this.latest.set(panel, key);
  }

  isCurrent(panel: string, key: string): boolean {
    return this.latest.get(panel) === key;
  }
}

/** Trailing-edge debounce for input events. */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => fn(...args), waitMs);
  };
}
