/** Color helpers: a diverging map centered at zero for signed phase-space
 * tables and a categorical cycle for overlaid time slices. */

export function divergingBlueRed(v: number, vmax: number): string {
  // blue for negative, white at zero, red for positive
  const t = Math.max(-1, Math.min(1, vmax > 0 ? v / vmax : 0));
  const mag = Math.abs(t);
  const other = Math.round(255 * (1 - mag));
  if (t >= 0) {
    return `rgb(255,${other},${other})`;
  }
  return `rgb(${other},${other},255)`;
}

const CATEGORY = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
  "#bcbd22",
  "#e377c2",
];

export function category(i: number): string {
  return CATEGORY[i % CATEGORY.length]!;
}

export function timeShade(i: number, n: number): string {
  // dark to light blue across the run
  const t = n > 1 ? i / (n - 1) : 0;
  const r = Math.round(30 + 180 * t);
  const g = Math.round(60 + 140 * t);
  return `rgb(${r},${g},200)`;
}
