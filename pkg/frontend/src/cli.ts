#!/usr/bin/env node
/**
 * Render one figure from a completed run directory:
 *
 *   phaseflow-figures --run-dir out/run1d_free --kind marginals --out marginals.svg
 *
 * Kinds: marginals, trajectories, map-evolution, wigner, takabayasi.
 * Exits non-zero with a named diagnostic on missing files or columns.
 */

import { writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";
import { FIGURE_KINDS, FigureKind, FigureSpec, render } from "./index.js";

function usage(): never {
  console.error(
    "usage: phaseflow-figures --run-dir <dir> --kind <kind> --out <file.svg> [--max-members N]\n" +
      `kinds: ${FIGURE_KINDS.join(", ")}`,
  );
  process.exit(2);
}

export function main(argv: string[]): number {
  const args = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    const value = argv[i + 1];
    if (!key || !key.startsWith("--") || value === undefined) usage();
    args.set(key.slice(2), value);
  }
  const runDir = args.get("run-dir");
  const kind = args.get("kind");
  const out = args.get("out");
  if (!runDir || !kind || !out) usage();
  if (!FIGURE_KINDS.includes(kind as FigureKind)) {
    console.error(`unknown figure kind "${kind}" (have: ${FIGURE_KINDS.join(", ")})`);
    return 2;
  }
  const spec: FigureSpec = { runDir, kind: kind as FigureKind };
  const max = args.get("max-members");
  if (max !== undefined) {
    const n = Number(max);
    if (!Number.isInteger(n) || n < 1) {
      console.error(`--max-members must be a positive integer, got "${max}"`);
      return 2;
    }
    spec.maxMembers = n;
  }
  try {
    const svg = render(spec);
    writeFileSync(out, svg + "\n");
    console.log(`wrote ${out}`);
    return 0;
  } catch (err) {
    console.error(String(err instanceof Error ? err.message : err));
    return 1;
  }
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
