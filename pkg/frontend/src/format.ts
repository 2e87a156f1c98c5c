/**
 * Display formatting. Only presentation lives here; the numbers
 * themselves always come from API responses untouched.
 */

/** Signed whole kilograms, the precision the published charts use. */
export function fmtKg(value: number): string {
  const rounded = Math.round(value);
  // avoid the "-0" artifact for tiny negative values
  const clean = Object.is(rounded, -0) ? 0 : rounded;
  return clean > 0 ? `+${clean}` : String(clean);
}

export function fmtKm(value: number): string {
  return `${Math.round(value).toLocaleString("en-US")} km/year`;
}

export function fmtGrid(value: number): string {
  return `${value.toLocaleString("en-US", { maximumFractionDigits: 1 })} g/kWh`;
}

export function fmtRate(rate: number | null): string {
  if (rate === null) return "";
  return `${(rate * 100).toFixed(1)}% reduction`;
}

export function fmtFactor(value: number): string {
  return `${value.toLocaleString("en-US", { maximumFractionDigits: 1 })} g/PKT`;
}
