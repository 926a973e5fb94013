/**
 * Momentum-map evolution: p̂(x) per checkpoint overlaid (shaded by time),
 * with the gauge residual A = m v - p̂ in a companion panel.
 */

import { readCsv } from "../csv.js";
import { drawPanel } from "../panel.js";
import { extent, padded } from "../scale.js";
import { SvgCanvas } from "../svg.js";
import { timeShade } from "../colormap.js";
import { RunDirectory, checkpointTimes } from "../run.js";

export function renderMapEvolution(run: RunDirectory): string {
  const files = run.series("map");
  const times = checkpointTimes(run);
  const slices = files.map((f) => {
    const table = readCsv(f);
    return {
      x: table.column("x[l]"),
      phat: table.column("phat[1/l]"),
      gauge: table.column("gauge_a[1/l]"),
    };
  });

  const allX = slices.flatMap((s) => s.x);
  const xDom = padded(extent(allX));
  const pDom = padded(extent(slices.flatMap((s) => trim(s.phat))));
  const aDom = padded(extent(slices.flatMap((s) => trim(s.gauge))));

  const svg = new SvgCanvas(780, 420);
  const left = drawPanel(
    svg,
    { x: 5, y: 5, width: 380, height: 410 },
    xDom,
    pDom,
    "momentum map evolution",
    "x",
    "p̂(x)",
  );
  const right = drawPanel(
    svg,
    { x: 395, y: 5, width: 380, height: 410 },
    xDom,
    aDom,
    "gauge field A = m v - p̂",
    "x",
    "A(x)",
  );
  slices.forEach((s, k) => {
    const color = timeShade(k, slices.length);
    left.curve(s.x, s.phat, color, 1.2, 0.9);
    right.curve(s.x, s.gauge, color, 1.2, 0.9);
  });
  slices.forEach((s, k) => {
    const label = times && times[k] !== undefined ? `t=${times[k]}` : `#${k}`;
    svg.text(330, 30 + 13 * k, label, 9, "start");
    svg.rect(316, 23 + 13 * k, 10, 8, timeShade(k, slices.length));
  });
  return svg.render();
}

/** drop the far-tail node-convention values so axes track the bulk */
function trim(values: number[]): number[] {
  const sorted = [...values].sort((a, b) => a - b);
  const lo = sorted[Math.floor(sorted.length * 0.02)]!;
  const hi = sorted[Math.ceil(sorted.length * 0.98) - 1]!;
  return values.filter((v) => v >= lo && v <= hi);
}
