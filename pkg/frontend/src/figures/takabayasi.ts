/**
 * Contrast panel: the phase-gradient momentum marginal (a near-delta for a
 * real state) against |ψ̃(p)|² and the map-based empirical histogram that
 * does reproduce it. Reads the takabayasi scenario artifacts.
 */

import { readCsv } from "../csv.js";
import { drawPanel } from "../panel.js";
import { extent, maxOf, padded } from "../scale.js";
import { SvgCanvas } from "../svg.js";
import { RunDirectory } from "../run.js";

export function renderTakabayasi(run: RunDirectory): string {
  const table = readCsv(run.file("marginals_t0.csv"));
  const p = table.column("p[1/l]");
  const rhoP = table.column("rho_p[l]");
  const dbb = table.column("dbb_p[l]");
  const emp = table.column("emp_p[l]");

  const top = maxOf(rhoP, emp);
  const keep = p.filter((_, i) => rhoP[i]! > 1e-4 * top || emp[i]! > 1e-4 * top);
  const l1 = run.summary.checks["dbb_l1"];
  const ks = run.summary.checks["map_momentum_ks"];

  const svg = new SvgCanvas(640, 430);
  const panel = drawPanel(
    svg,
    { x: 5, y: 5, width: 630, height: 400 },
    padded(extent(keep)),
    padded([0, top], 0.08),
    "momentum density: flow gradient vs quantile map",
    "p",
    "density",
  );
  panel.bars(p, emp, "#c98f5b");
  panel.curve(p, rhoP, "#703b1f", 1.8);
  panel.curve(p, dbb.map((v) => Math.min(v, 10 * top)), "#9467bd", 1.4);

  svg.text(60, 40, "quantum density |ψ̃(p)|²  (dark curve)", 10);
  svg.text(60, 54, "map-based ensemble histogram  (bars)", 10);
  svg.text(60, 68, "phase-gradient marginal, clipped spike  (violet)", 10);
  if (typeof l1 === "number" && typeof ks === "number") {
    svg.text(60, 82, `L1(phase-gradient, quantum) = ${l1.toFixed(3)};  KS(map, quantum) = ${ks.toFixed(4)}`, 10);
  }
  return svg.render();
}
