/**
 * Wigner heatmap: diverging color scale centered at zero so negative
 * regions read as blue, with the W = 0 negativity contour drawn on top.
 */

import { readCsv } from "../csv.js";
import { SvgCanvas, fmt } from "../svg.js";
import { linearScale, maxOf, minOf } from "../scale.js";
import { divergingBlueRed } from "../colormap.js";
import { RunDirectory } from "../run.js";

export function renderWigner(run: RunDirectory): string {
  const table = readCsv(run.file("wigner.csv"));
  const xs = table.column("x[l]");
  const ps = table.column("p[1/l]");
  const ws = table.column("w[1]");

  const xAxis = [...new Set(xs)].sort((a, b) => a - b);
  const pAxis = [...new Set(ps)].sort((a, b) => a - b);
  const nx = xAxis.length;
  const np = pAxis.length;
  if (nx * np !== table.rows) {
    throw new Error(`wigner.csv is not a complete ${nx} x ${np} grid`);
  }
  const xIndex = new Map(xAxis.map((v, i) => [v, i]));
  const pIndex = new Map(pAxis.map((v, i) => [v, i]));
  const grid: number[][] = Array.from({ length: nx }, () => new Array<number>(np).fill(0));
  for (let r = 0; r < table.rows; r++) {
    grid[xIndex.get(xs[r]!)!]![pIndex.get(ps[r]!)!] = ws[r]!;
  }

  const vmax = maxOf(ws.map(Math.abs));
  const size = 560;
  const margin = { left: 50, top: 26, right: 80, bottom: 40 };
  const svg = new SvgCanvas(size + margin.left + margin.right, size + margin.top + margin.bottom);
  const sx = linearScale([xAxis[0]!, xAxis[nx - 1]!], [margin.left, margin.left + size]);
  const sy = linearScale([pAxis[0]!, pAxis[np - 1]!], [margin.top + size, margin.top]);

  const cellW = size / (nx - 1);
  const cellH = size / (np - 1);
  for (let i = 0; i < nx; i++) {
    for (let j = 0; j < np; j++) {
      const w = grid[i]![j]!;
      if (Math.abs(w) < 1e-4 * vmax) continue; // keep the SVG sparse
      svg.rect(sx(xAxis[i]!) - cellW / 2, sy(pAxis[j]!) - cellH / 2, cellW, cellH,
        divergingBlueRed(w, vmax));
    }
  }

  for (const seg of zeroContour(grid, xAxis, pAxis, 1e-3 * vmax)) {
    svg.polyline(seg.map(([x, p]) => [sx(x), sy(p)]), "#000000", 0.8);
  }

  svg.text(margin.left + size / 2, margin.top + size + 28, "x", 11, "middle");
  svg.text(14, margin.top + size / 2, "p", 11, "middle");
  svg.text(margin.left + size / 2, 16,
    `Wigner table (max |W| = ${fmt(vmax)}, min W = ${fmt(minOf(ws))})`, 11, "middle");

  // color bar
  const barX = margin.left + size + 20;
  for (let j = 0; j <= 100; j++) {
    const v = vmax * (1 - j / 50);
    svg.rect(barX, margin.top + (j * size) / 101, 14, size / 101 + 0.5, divergingBlueRed(v, vmax));
  }
  svg.text(barX + 18, margin.top + 8, fmt(vmax), 9, "start");
  svg.text(barX + 18, margin.top + size / 2 + 3, "0", 9, "start");
  svg.text(barX + 18, margin.top + size, fmt(-vmax), 9, "start");

  return svg.render();
}

/** marching-squares zero contour, returned as short line segments */
function zeroContour(
  grid: number[][],
  xAxis: number[],
  pAxis: number[],
  level: number,
): Array<Array<[number, number]>> {
  const segments: Array<Array<[number, number]>> = [];
  const cross = (a: number, b: number) => (a - level) * (b - level) < 0;
  const lerp = (c0: number, c1: number, v0: number, v1: number) =>
    c0 + ((level - v0) / (v1 - v0)) * (c1 - c0);
  for (let i = 0; i < grid.length - 1; i++) {
    for (let j = 0; j < grid[0]!.length - 1; j++) {
      const v00 = grid[i]![j]!;
      const v10 = grid[i + 1]![j]!;
      const v01 = grid[i]![j + 1]!;
      const v11 = grid[i + 1]![j + 1]!;
      const pts: Array<[number, number]> = [];
      if (cross(v00, v10)) pts.push([lerp(xAxis[i]!, xAxis[i + 1]!, v00, v10), pAxis[j]!]);
      if (cross(v01, v11)) pts.push([lerp(xAxis[i]!, xAxis[i + 1]!, v01, v11), pAxis[j + 1]!]);
      if (cross(v00, v01)) pts.push([xAxis[i]!, lerp(pAxis[j]!, pAxis[j + 1]!, v00, v01)]);
      if (cross(v10, v11)) pts.push([xAxis[i + 1]!, lerp(pAxis[j]!, pAxis[j + 1]!, v10, v11)]);
      if (pts.length >= 2) segments.push(pts.slice(0, 2));
    }
  }
  return segments;
}
