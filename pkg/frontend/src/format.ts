// Readout formatting. Numbers pass through untouched apart from display
// rounding; dashes mean "no value from the service yet".

export function fixed(x: number | null | undefined, digits = 4): string {
  if (x === null || x === undefined || !Number.isFinite(x)) return "-";
  return x.toFixed(digits);
}

export function scientific(x: number | null | undefined): string {
  if (x === null || x === undefined || !Number.isFinite(x)) return "-";
  if (x === 0) return "0";
  return x.toExponential(2);
}

export function radians(x: number | null | undefined): string {
  if (x === null || x === undefined || !Number.isFinite(x)) return "-";
  return `${x.toFixed(4)} rad`;
}
