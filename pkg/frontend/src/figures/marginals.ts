/**
 * Marginal overlays: one row per checkpoint, position panel and momentum
 * panel, each with the quantum density curve over the empirical histogram.
 */

import { readCsv } from "../csv.js";
import { drawPanel } from "../panel.js";
import { extent, maxOf, padded } from "../scale.js";
import { SvgCanvas } from "../svg.js";
import { RunDirectory, checkpointTimes } from "../run.js";

const PANEL_W = 380;
const PANEL_H = 180;

export function renderMarginals(run: RunDirectory): string {
  const files = run.series("marginals");
  const times = checkpointTimes(run);
  const svg = new SvgCanvas(2 * PANEL_W + 20, files.length * PANEL_H + 10);

  files.forEach((file, row) => {
    const table = readCsv(file);
    const x = table.column("x[l]");
    const rhoX = table.column("rho_x[1/l]");
    const empX = table.column("emp_x[1/l]");
    const p = table.column("p[1/l]");
    const rhoP = table.column("rho_p[l]");
    const empP = table.column("emp_p[l]");
    const label = times && times[row] !== undefined ? `t = ${times[row]}` : `checkpoint ${row}`;

    const left = drawPanel(
      svg,
      { x: 5, y: 5 + row * PANEL_H, width: PANEL_W, height: PANEL_H - 8 },
      padded(extent(x)),
      padded([0, maxOf(rhoX, empX)], 0.08),
      `position density, ${label}`,
      "x",
      "density",
    );
    left.bars(x, empX, "#5b8fc9");
    left.curve(x, rhoX, "#1f3b70", 1.6);

    const right = drawPanel(
      svg,
      { x: PANEL_W + 15, y: 5 + row * PANEL_H, width: PANEL_W, height: PANEL_H - 8 },
      padded(focusDomain(p, rhoP, empP)),
      padded([0, maxOf(rhoP, empP)], 0.08),
      `momentum density, ${label}`,
      "p",
      "density",
    );
    right.bars(p, empP, "#c98f5b");
    right.curve(p, rhoP, "#703b1f", 1.6);
  });

  return svg.render();
}

/** momentum axes span the full FFT range; zoom to where the mass lives */
function focusDomain(axis: number[], a: number[], b: number[]): [number, number] {
  const top = maxOf(a, b);
  const keep = axis.filter((_, i) => a[i]! > 1e-4 * top || b[i]! > 1e-4 * top);
  return keep.length >= 2 ? extent(keep) : extent(axis);
}
