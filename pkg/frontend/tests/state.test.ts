import { afterEach, describe, expect, it, vi } from "vitest";

import {
  LatestGate,
  applyPreset,
  debounce,
  defaultState,
  editDistance,
  requestKey,
  setBusOccupancy,
  setGrid,
  toCalcRequest,
} from "../src/state.js";
import type { CaseReport } from "../src/types.js";

const REPORT: CaseReport = {
  case: "calgary",
  label: "Calgary (AB)",
  scenario: 1,
  factor_mode: "canonical",
  no_modal_shift: false,
  grid: { label: "AB", g_per_kwh: 590 },
  before: {
    label: "before",
    distances: { car: 9445, rail: 374, bus: 512, bicycle: 251, walking: 198 },
  },
  during: {
    label: "during",
    distances: { car: 8532, cs: 132, rail: 576, bus: 735, bicycle: 259, walking: 201 },
  },
  before_total_km: 10780,
  during_total_km: 10435,
  factors: { car: 228.2, cs: 228.7, rail: 137.3, bus: 186.6 },
  per_mode_delta: { car: -204.8, cs: 30.2, rail: 37.7, bus: 51.4, bicycle: 1.9, walking: 0 },
  total_delta_kg: -83.597,
  before_emissions_kg: 2288.5,
  reduction_rate: 0.0365,
};

describe("state transitions", () => {
  it("starts as an empty custom profile", () => {
    const state = defaultState();
    expect(state.preset).toBe("custom");
    expect(state.before).toEqual({});
    expect(state.during).toEqual({});
    expect(state.grid).toBeNull();
    expect(state.busOccupancy).toBeNull();
  });

  it("loads a preset's reconstructed distances", () => {
    const state = applyPreset(defaultState(), REPORT);
    expect(state.preset).toBe("calgary");
    expect(state.before.car).toBe(9445);
    expect(state.during.cs).toBe(132);
    expect(state.grid).toBe("AB");
    expect(state.scenario).toBe(1);
  });

  it("copies preset distances instead of aliasing them", () => {
    const state = applyPreset(defaultState(), REPORT);
    state.before.car = 1;
    expect(REPORT.before.distances.car).toBe(9445);
  });

  it("flips to custom on any edit and clamps bad input to zero", () => {
    let state = applyPreset(defaultState(), REPORT);
    state = editDistance(state, "during", "car", -50);
    expect(state.preset).toBe("custom");
    expect(state.during.car).toBe(0);
    state = editDistance(state, "during", "car", Number.NaN);
    expect(state.during.car).toBe(0);
    state = editDistance(state, "during", "car", 8000);
    expect(state.during.car).toBe(8000);
  });

  it("restores the exact preset values after edits", () => {
    let state = applyPreset(defaultState(), REPORT);
    state = editDistance(state, "before", "car", 1234);
    state = editDistance(state, "during", "bus", 9.75);
    state = applyPreset(state, REPORT);
    expect(state.before).toEqual(REPORT.before.distances);
    expect(state.during).toEqual(REPORT.during.distances);
  });
});

describe("toCalcRequest", () => {
  it("drops empty modes and leaves optional fields to the service", () => {
    let state = defaultState();
    state = editDistance(state, "before", "car", 10000);
    state = editDistance(state, "before", "walking", 0);
    state = editDistance(state, "during", "car", 8000);
    state = editDistance(state, "during", "cs", 1500);
    const request = toCalcRequest(state);
    expect(request.before.distances).toEqual({ car: 10000 });
    expect(request.during.distances).toEqual({ car: 8000, cs: 1500 });
    expect(request.scenario).toBe(1);
    expect(request).not.toHaveProperty("grid");
    expect(request).not.toHaveProperty("occupancy");
  });

  it("carries grid and occupancy overrides once set", () => {
    let state = defaultState();
    state = editDistance(state, "before", "car", 100);
    state = setGrid(state, 742.5);
    state = setBusOccupancy(state, 40);
    const request = toCalcRequest(state);
    expect(request.grid).toBe(742.5);
    expect(request.occupancy).toEqual({ bus: 40 });
    state = setGrid(state, "NL");
    expect(toCalcRequest(state).grid).toBe("NL");
  });
});

describe("requestKey", () => {
  it("ignores object key insertion order", () => {
    const a = requestKey({ scenario: 2, before: { car: 1, bus: 2 } });
    const b = requestKey({ before: { bus: 2, car: 1 }, scenario: 2 });
    expect(a).toBe(b);
  });

  it("distinguishes different parameter values", () => {
    const a = requestKey({ scenario: 2 });
    const b = requestKey({ scenario: 3 });
    expect(a).not.toBe(b);
  });
});

describe("LatestGate", () => {
  it("only the newest key per panel stays current", () => {
    const gate = new LatestGate();
    gate.issue("delta", "k1");
    gate.issue("delta", "k2");
    expect(gate.isCurrent("delta", "k1")).toBe(false);
    expect(gate.isCurrent("delta", "k2")).toBe(true);
  });

  it("tracks panels independently", () => {
    const gate = new LatestGate();
    gate.issue("delta", "k1");
    gate.issue("sweep", "k9");
    expect(gate.isCurrent("delta", "k1")).toBe(true);
    expect(gate.isCurrent("sweep", "k9")).toBe(true);
  });
});

describe("debounce", () => {
  afterEach(() => {
    vi.useRealTimers();
  });

  it("collapses a burst into one trailing call", () => {
    vi.useFakeTimers();
    const fn = vi.fn();
    const run = debounce(fn, 250);
    run(1);
    run(2);
    run(3);
    vi.advanceTimersByTime(249);
    expect(fn).not.toHaveBeenCalled();
    vi.advanceTimersByTime(1);
    expect(fn).toHaveBeenCalledTimes(1);
    expect(fn).toHaveBeenCalledWith(3);
  });

  it("fires again for a separate burst", () => {
    vi.useFakeTimers();
    const fn = vi.fn();
    const run = debounce(fn, 250);
    run("a");
    vi.advanceTimersByTime(250);
    run("b");
    vi.advanceTimersByTime(250);
    expect(fn).toHaveBeenCalledTimes(2);
    expect(fn).toHaveBeenLastCalledWith("b");
  });
});
