/**
 * Hand-rolled SVG charts: signed per-mode bars for the emission delta and
 * a line-with-marker panel for sensitivity sweeps.
 *
 * Every rendered element carries the exact response number in a
 * data-value attribute; visible labels only round for display.
 */

import { fmtKg } from "./format.js";
import type { SweepPoint } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface BarDatum {
  mode: string;
  value: number; // kg CO2-eq per year, straight from the API
}

function svgElement<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [name, value] of Object.entries(attrs)) {
    el.setAttribute(name, String(value));
  }
  return el;
}

/**
 * Signed horizontal bar per mode plus a total line underneath.
 * Negative bars (savings) grow left and render green; increases red.
 */
export function renderDeltaChart(
  container: HTMLElement,
  bars: BarDatum[],
  totalKg: number,
): void {
  const width = 640;
  const rowHeight = 30;
  const labelWidth = 76;
  const height = Math.max(bars.length, 1) * rowHeight + 8;
  const svg = svgElement("svg", {
    viewBox: `0 0 ${width} ${height}`,
    width: "100%",
    role: "img",
    "data-chart": "delta",
  });

  const magnitudes = bars.map((b) => Math.abs(b.value));
  const span = Math.max(...magnitudes, 1);
  const zeroX = labelWidth + (width - labelWidth) / 2;
  const scale = (width - labelWidth) / 2 / span;

  svg.appendChild(
    svgElement("line", {
      x1: zeroX, y1: 0, x2: zeroX, y2: height,
      stroke: "#999", "stroke-dasharray": "3 3",
    }),
  );

  bars.forEach((bar, index) => {
    const y = index * rowHeight + 5;
    const barLength = Math.abs(bar.value) * scale;
    const x = bar.value < 0 ? zeroX - barLength : zeroX;

    const group = svgElement("g", { "data-mode": bar.mode, "data-value": bar.value });
    group.appendChild(
      svgElement("rect", {
        x, y, width: Math.max(barLength, 0.5), height: rowHeight - 12,
        fill: bar.value < 0 ? "#2e7d32" : "#c62828", rx: 2,
      }),
    );
    const name = svgElement("text", {
      x: 4, y: y + 13, "font-size": 13, fill: "currentColor",
    });
    name.textContent = bar.mode;
    group.appendChild(name);

    const valueLabel = svgElement("text", {
      x: bar.value < 0 ? x - 4 : x + barLength + 4,
      y: y + 13,
      "font-size": 13,
      "text-anchor": bar.value < 0 ? "end" : "start",
      fill: "currentColor",
      class: "bar-label",
    });
    valueLabel.textContent = fmtKg(bar.value);
    group.appendChild(valueLabel);
    svg.appendChild(group);
  });

  const total = document.createElement("p");
  total.className = "chart-total";
  total.dataset.value = String(totalKg);
  total.textContent = `total: ${fmtKg(totalKg)} kg CO₂-eq/year`;

  container.replaceChildren(svg, total);
}

export interface SweepView {
  points: SweepPoint[];
  current: number | null; // marker position in parameter units
  axisLabel: string; // includes the unit, e.g. "bus occupancy (passengers)"
}

/**
 * Total emission change against one swept parameter. A single point is
 * drawn as a lone marker with no connecting line.
 */
export function renderSweepChart(container: HTMLElement, view: SweepView): void {
  const width = 640;
  const height = 260;
  const pad = { left: 64, right: 16, top: 12, bottom: 40 };
  const svg = svgElement("svg", {
    viewBox: `0 0 ${width} ${height}`,
    width: "100%",
    role: "img",
    "data-chart": "sweep",
  });

  const points = [...view.points].sort((a, b) => a.value - b.value);
  if (points.length === 0) {
    container.replaceChildren(svg);
    return;
  }

  const xs = points.map((p) => p.value);
  const ys = points.map((p) => p.total_delta_kg);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMin = Math.min(...ys, 0);
  const yMax = Math.max(...ys, 0);
  const xSpan = xMax - xMin || 1;
  const ySpan = yMax - yMin || 1;

  const toX = (v: number) => pad.left + ((v - xMin) / xSpan) * (width - pad.left - pad.right);
  const toY = (v: number) => height - pad.bottom - ((v - yMin) / ySpan) * (height - pad.top - pad.bottom);

  // zero line, so sign changes are visible at a glance
  svg.appendChild(
    svgElement("line", {
      x1: pad.left, y1: toY(0), x2: width - pad.right, y2: toY(0),
      stroke: "#999", "stroke-dasharray": "3 3", "data-role": "zero-line",
    }),
  );

  if (points.length > 1) {
    const path = points
      .map((p, i) => `${i === 0 ? "M" : "L"}${toX(p.value).toFixed(1)},${toY(p.total_delta_kg).toFixed(1)}`)
      .join(" ");
    svg.appendChild(
      svgElement("path", {
        d: path, fill: "none", stroke: "#1565c0", "stroke-width": 2,
        "data-role": "sweep-line",
      }),
    );
  }

  for (const point of points) {
    const dot = svgElement("circle", {
      cx: toX(point.value), cy: toY(point.total_delta_kg), r: 3.5,
      fill: "#1565c0", "data-role": "sweep-point",
      "data-x": point.value, "data-value": point.total_delta_kg,
    });
    svg.appendChild(dot);
  }

  if (view.current !== null && view.current >= xMin && view.current <= xMax) {
    svg.appendChild(
      svgElement("line", {
        x1: toX(view.current), y1: pad.top, x2: toX(view.current), y2: height - pad.bottom,
        stroke: "#ef6c00", "stroke-width": 1.5, "data-role": "current-marker",
        "data-x": view.current,
      }),
    );
  }

  const xLabel = svgElement("text", {
    x: width / 2, y: height - 8, "text-anchor": "middle",
    "font-size": 13, fill: "currentColor",
  });
  xLabel.textContent = view.axisLabel;
  svg.appendChild(xLabel);

  const yLabel = svgElement("text", {
    x: 14, y: height / 2, "font-size": 13, fill: "currentColor",
    transform: `rotate(-90 14 ${height / 2})`, "text-anchor": "middle",
  });
  yLabel.textContent = "total change (kg CO₂-eq/year)";
  svg.appendChild(yLabel);

  container.replaceChildren(svg);
}
