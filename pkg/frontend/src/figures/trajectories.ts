/**
 * Trajectory fan in the (t, x) plane. Members are subsampled (default 200)
 * to keep the vector output small; the flow is non-crossing, so the fan
 * shows ordered, never-intersecting threads.
 */

import { readCsv } from "../csv.js";
import { drawPanel } from "../panel.js";
import { extent, padded } from "../scale.js";
import { SvgCanvas } from "../svg.js";
import { timeShade } from "../colormap.js";
import { RunDirectory } from "../run.js";

export function renderTrajectories(run: RunDirectory, maxMembers = 200): string {
  const table = readCsv(run.file("trajectories.csv"));
  const t = table.column("t[1]");
  const idx = table.column("i[1]");
  const x = table.column("x[l]");

  const byMember = new Map<number, Array<[number, number]>>();
  for (let r = 0; r < table.rows; r++) {
    const i = idx[r]!;
    if (!byMember.has(i)) byMember.set(i, []);
    byMember.get(i)!.push([t[r]!, x[r]!]);
  }
  const members = [...byMember.keys()].sort((a, b) => a - b);
  const stride = Math.max(1, Math.ceil(members.length / maxMembers));
  const chosen = members.filter((_, j) => j % stride === 0);

  const svg = new SvgCanvas(640, 420);
  const panel = drawPanel(
    svg,
    { x: 5, y: 5, width: 630, height: 410 },
    padded(extent(t)),
    padded(extent(x)),
    `trajectory fan (${chosen.length} of ${members.length} members)`,
    "t",
    "x",
  );
  chosen.forEach((i, j) => {
    const pts = byMember.get(i)!.sort((a, b) => a[0] - b[0]);
    panel.curve(
      pts.map((p) => p[0]),
      pts.map((p) => p[1]),
      timeShade(j, chosen.length),
      0.8,
      0.85,
    );
  });
  return svg.render();
}
