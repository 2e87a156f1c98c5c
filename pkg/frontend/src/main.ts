/**
 * Mobility emissions calculator, a single page against /api/v1.
 *
 * A case preset fills the editable before/during distances; any edit turns
 * the inputs into a custom profile computed through POST /calculate. All
 * numbers on screen come from API responses; the page only formats them.
 */

import { ApiError, MobishiftApi } from "./api.js";
import { renderDeltaChart, renderSweepChart } from "./charts.js";
import { fmtGrid, fmtKg, fmtRate } from "./format.js";
import {
  CalculatorState,
  EDITABLE_MODES,
  LatestGate,
  applyPreset,
  debounce,
  defaultState,
  editDistance,
  requestKey,
  setBusOccupancy,
  setGrid,
  setScenario,
  toCalcRequest,
} from "./state.js";
import type { CaseSummary, Mode } from "./types.js";

export interface AppOptions {
  debounceMs?: number;
}

export interface App {
  readonly state: CalculatorState;
  loadPreset(id: string): Promise<void>;
  whenIdle(): Promise<void>;
}

const DEFAULT_BUS_OCCUPANCY = 10.5;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [name, value] of Object.entries(attrs)) node.setAttribute(name, value);
  if (text !== undefined) node.textContent = text;
  return node;
}

function buildLayout(root: HTMLElement): void {
  root.replaceChildren();
  root.appendChild(el("h1", {}, "Mobility emissions calculator"));
  root.appendChild(
    el(
      "p",
      { class: "tagline" },
      "Annual life-cycle greenhouse-gas change from joining a car-sharing service.",
    ),
  );

  const controls = el("section", { class: "controls" });
  const presetField = el("label", {}, "preset ");
  presetField.appendChild(el("select", { id: "preset" }));
  const scenarioField = el("label", {}, "shared-car lifetime scenario ");
  scenarioField.appendChild(el("select", { id: "scenario" }));
  const gridField = el("label", {}, "electricity grid ");
  gridField.appendChild(el("select", { id: "grid" }));
  const customGrid = el("label", { id: "custom-grid-field", hidden: "" }, "grid intensity (g/kWh) ");
  customGrid.appendChild(
    el("input", { id: "custom-grid", type: "number", min: "0", step: "1", value: "500" }),
  );
  const occupancyField = el("label", {}, "bus occupancy (passengers) ");
  occupancyField.appendChild(
    el("input", {
      id: "occupancy",
      type: "range",
      min: "1",
      max: "60",
      step: "0.5",
      value: String(DEFAULT_BUS_OCCUPANCY),
    }),
  );
  occupancyField.appendChild(el("output", { id: "occupancy-value" }, `${DEFAULT_BUS_OCCUPANCY}`));
  controls.append(presetField, scenarioField, gridField, customGrid, occupancyField);
  root.appendChild(controls);

  const profiles = el("section", { class: "profiles" });
  const table = el("table");
  const head = el("tr");
  head.append(el("th", {}, "mode"), el("th", {}, "before (km/year)"), el("th", {}, "during (km/year)"));
  table.appendChild(head);
  for (const mode of EDITABLE_MODES) {
    const row = el("tr");
    row.appendChild(el("td", {}, mode));
    for (const side of ["before", "during"] as const) {
      const cell = el("td");
      cell.appendChild(
        el("input", {
          type: "number",
          min: "0",
          step: "1",
          value: "0",
          "data-side": side,
          "data-mode": mode,
        }),
      );
      row.appendChild(cell);
    }
    table.appendChild(row);
  }
  profiles.appendChild(table);
  root.appendChild(profiles);

  const results = el("section", { class: "results" });
  results.appendChild(el("div", { id: "error", class: "error", hidden: "" }));
  results.appendChild(el("p", { id: "headline" }));
  results.appendChild(el("div", { id: "delta-chart" }));
  root.appendChild(results);

  const sweeps = el("section", { class: "sweeps" });
  sweeps.appendChild(el("h2", {}, "sensitivity"));
  sweeps.appendChild(el("div", { id: "bus-sweep" }));
  sweeps.appendChild(el("div", { id: "grid-sweep" }));
  root.appendChild(sweeps);
}

export function createApp(root: HTMLElement, api: MobishiftApi, options: AppOptions = {}): App {
  buildLayout(root);

  let state = defaultState();
  let cases: CaseSummary[] = [];
  const gate = new LatestGate();
  const pending = new Set<Promise<unknown>>();

  const track = <T>(promise: Promise<T>): Promise<T> => {
    pending.add(promise);
    void promise.finally(() => pending.delete(promise));
    return promise;
  };

  const $ = <T extends HTMLElement>(selector: string): T => {
    const node = root.querySelector<T>(selector);
    if (!node) throw new Error(`missing element ${selector}`);
    return node;
  };

  const presetSelect = $<HTMLSelectElement>("#preset");
  const scenarioSelect = $<HTMLSelectElement>("#scenario");
  const gridSelect = $<HTMLSelectElement>("#grid");
  const customGridField = $<HTMLElement>("#custom-grid-field");
  const customGridInput = $<HTMLInputElement>("#custom-grid");
  const occupancyInput = $<HTMLInputElement>("#occupancy");
  const occupancyValue = $<HTMLOutputElement>("#occupancy-value");
  const errorBox = $<HTMLDivElement>("#error");
  const headline = $<HTMLParagraphElement>("#headline");
  const deltaChart = $<HTMLDivElement>("#delta-chart");
  const busSweep = $<HTMLDivElement>("#bus-sweep");
  const gridSweep = $<HTMLDivElement>("#grid-sweep");

  for (const id of [1, 2, 3]) {
    scenarioSelect.appendChild(el("option", { value: String(id) }, `scenario ${id}`));
  }
  gridSelect.appendChild(el("option", { value: "" }, "service default"));
  gridSelect.appendChild(el("option", { value: "custom" }, "custom…"));

  const showError = (message: string): void => {
    errorBox.textContent = message;
    errorBox.hidden = false;
  };
  const clearError = (): void => {
    errorBox.textContent = "";
    errorBox.hidden = true;
  };

  const syncInputs = (): void => {
    presetSelect.value = state.preset;
    scenarioSelect.value = String(state.scenario);
    for (const input of root.querySelectorAll<HTMLInputElement>("input[data-mode]")) {
      const side = input.dataset.side as "before" | "during";
      const mode = input.dataset.mode as Mode;
      input.value = String(state[side][mode] ?? 0);
    }
  };

  const knownGridOption = (value: string): boolean =>
    [...gridSelect.options].some((option) => option.value === value);

  const addGridOption = (label: string, intensity?: number): void => {
    if (label === "" || label === "custom" || knownGridOption(label)) return;
    const text = intensity === undefined ? label : `${label} (${fmtGrid(intensity)})`;
    gridSelect.appendChild(el("option", { value: label }, text));
  };

  const currentGridIntensity = (): number | null => {
    if (typeof state.grid === "number") return state.grid;
    if (state.grid === null) return null;
    const fromCase = cases.find((c) => c.grid.label === state.grid);
    return fromCase ? fromCase.grid.g_per_kwh : null;
  };

  const renderBreakdown = (
    perMode: Partial<Record<Mode, number>>,
    total: number,
    rate: number | null,
  ): void => {
    const bars = Object.entries(perMode).map(([mode, value]) => ({
      mode,
      value: value as number,
    }));
    renderDeltaChart(deltaChart, bars, total);
    const suffix = rate !== null ? ` (${fmtRate(rate)})` : "";
    headline.textContent = `change vs before: ${fmtKg(total)} kg CO₂-eq/year${suffix}`;
    clearError();
  };

  const refreshDelta = async (): Promise<void> => {
    if (state.preset !== "custom") {
      const params = { panel: "case", id: state.preset, scenario: state.scenario };
      const key = requestKey(params);
      gate.issue("delta", key);
      try {
        const report = await api.caseReport(state.preset, { scenario: state.scenario });
        if (!gate.isCurrent("delta", key)) return;
        state = applyPreset(state, report);
        syncInputs();
        renderBreakdown(report.per_mode_delta, report.total_delta_kg, report.reduction_rate);
      } catch (error) {
        if (gate.isCurrent("delta", key)) showError(describe(error));
      }
      return;
    }

    const request = toCalcRequest(state);
    const key = requestKey(request);
    gate.issue("delta", key);
    try {
      const response = await api.calculate(request);
      if (!gate.isCurrent("delta", key)) return;
      renderBreakdown(response.delta.per_mode, response.delta.total, response.reduction_rate);
    } catch (error) {
      if (gate.isCurrent("delta", key)) showError(describe(error));
    }
  };

  const sweepCase = (): string =>
    state.preset !== "custom" ? state.preset : "calgary";

  const refreshBusSweep = async (): Promise<void> => {
    const query = { caseId: sweepCase(), scenario: state.scenario };
    const key = requestKey(query);
    gate.issue("bus", key);
    try {
      const sweep = await api.sweep("bus-occupancy", query);
      if (!gate.isCurrent("bus", key)) return;
      renderSweepChart(busSweep, {
        points: sweep.points,
        current: state.busOccupancy ?? sweep.baseline.value,
        axisLabel: "average bus occupancy (passengers)",
      });
    } catch (error) {
      if (gate.isCurrent("bus", key)) showError(describe(error));
    }
  };

  const refreshGridSweep = async (): Promise<void> => {
    const query = { caseId: sweepCase(), scenario: state.scenario };
    const key = requestKey(query);
    gate.issue("grid", key);
    try {
      const sweep = await api.sweep("grid", query);
      if (!gate.isCurrent("grid", key)) return;
      for (const point of sweep.points) {
        if (point.label) addGridOption(point.label, point.value);
      }
      renderSweepChart(gridSweep, {
        points: sweep.points,
        current: currentGridIntensity() ?? sweep.baseline.value,
        axisLabel: "grid carbon intensity (g/kWh)",
      });
    } catch (error) {
      if (gate.isCurrent("grid", key)) showError(describe(error));
    }
  };

  const refreshAll = (): Promise<void> =>
    track(Promise.all([refreshDelta(), refreshBusSweep(), refreshGridSweep()]).then(() => undefined));

  const loadPreset = async (id: string): Promise<void> => {
    const summary = cases.find((c) => c.id === id);
    state = { ...state, preset: id, scenario: summary?.default_scenario ?? state.scenario };
    state = setBusOccupancy(state, null);
    occupancyInput.value = String(DEFAULT_BUS_OCCUPANCY);
    occupancyValue.textContent = String(DEFAULT_BUS_OCCUPANCY);
    state = setGrid(state, null);
    gridSelect.value = "";
    customGridField.hidden = true;
    syncInputs();
    await refreshAll();
  };

  const init = async (): Promise<void> => {
    presetSelect.appendChild(el("option", { value: "custom" }, "custom profile"));
    try {
      const list = await api.listCases();
      cases = list.cases;
      for (const summary of cases) {
        presetSelect.appendChild(el("option", { value: summary.id }, summary.label));
        addGridOption(summary.grid.label, summary.grid.g_per_kwh);
      }
    } catch (error) {
      showError(describe(error));
      return;
    }
    const first = cases[0];
    if (first) await loadPreset(first.id);
  };

  const debounced = debounce(() => void refreshAll(), options.debounceMs ?? 250);

  root.addEventListener("input", (event) => {
    const target = event.target as HTMLElement;
    if (target instanceof HTMLInputElement && target.dataset.mode) {
      const side = target.dataset.side as "before" | "during";
      const mode = target.dataset.mode as Mode;
      state = editDistance(state, side, mode, Number(target.value));
      presetSelect.value = "custom";
      track(new Promise<void>((resolve) => setTimeout(resolve, (options.debounceMs ?? 250) + 5)));
      debounced();
      return;
    }
    if (target === occupancyInput) {
      state = setBusOccupancy(state, Number(occupancyInput.value));
      state = { ...state, preset: "custom" };
      presetSelect.value = "custom";
      occupancyValue.textContent = occupancyInput.value;
      track(new Promise<void>((resolve) => setTimeout(resolve, (options.debounceMs ?? 250) + 5)));
      debounced();
      return;
    }
    if (target === customGridInput) {
      state = setGrid(state, Number(customGridInput.value));
      state = { ...state, preset: "custom" };
      presetSelect.value = "custom";
      track(new Promise<void>((resolve) => setTimeout(resolve, (options.debounceMs ?? 250) + 5)));
      debounced();
    }
  });

  presetSelect.addEventListener("change", () => {
    const id = presetSelect.value;
    if (id === "custom") {
      state = { ...state, preset: "custom" };
      void refreshAll();
      return;
    }
    void track(loadPreset(id));
  });

  scenarioSelect.addEventListener("change", () => {
    state = setScenario(state, Number(scenarioSelect.value));
    void refreshAll();
  });

  gridSelect.addEventListener("change", () => {
    const choice = gridSelect.value;
    if (choice === "custom") {
      customGridField.hidden = false;
      state = setGrid(state, Number(customGridInput.value));
    } else {
      customGridField.hidden = true;
      state = setGrid(state, choice === "" ? null : choice);
    }
    if (state.grid !== null) {
      // the case endpoints carry their own grid; overriding it means the
      // numbers must come from /calculate instead
      state = { ...state, preset: "custom" };
      presetSelect.value = "custom";
    }
    void refreshAll();
  });

  const initPromise = track(init());

  return {
    get state() {
      return state;
    },
    loadPreset: (id: string) => track(loadPreset(id)),
    whenIdle: async () => {
      await initPromise.catch(() => undefined);
      while (pending.size > 0) {
        await Promise.allSettled([...pending]);
      }
    },
  };
}

function describe(error: unknown): string {
  if (error instanceof ApiError) return `${error.code}: ${error.message}`;
  return error instanceof Error ? error.message : String(error);
}

const mount = typeof document !== "undefined" ? document.getElementById("app") : null;
if (mount) {
  void createApp(mount, new MobishiftApi());
}
