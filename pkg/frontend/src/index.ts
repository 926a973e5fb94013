/** Figure registry: kind name to renderer over an opened run directory. */

import { RunDirectory, openRun } from "./run.js";
import { renderMarginals } from "./figures/marginals.js";
import { renderTrajectories } from "./figures/trajectories.js";
import { renderMapEvolution } from "./figures/mapEvolution.js";
import { renderWigner } from "./figures/wigner.js";
import { renderTakabayasi } from "./figures/takabayasi.js";

export type FigureKind = "marginals" | "trajectories" | "map-evolution" | "wigner" | "takabayasi";

export interface FigureSpec {
  runDir: string;
  kind: FigureKind;
  /** trajectory fan subsample cap */
  maxMembers?: number;
}

export const FIGURE_KINDS: FigureKind[] = [
  "marginals",
  "trajectories",
  "map-evolution",
  "wigner",
  "takabayasi",
];

export function render(spec: FigureSpec): string {
  const run: RunDirectory = openRun(spec.runDir);
  switch (spec.kind) {
    case "marginals":
      return renderMarginals(run);
    case "trajectories":
      return renderTrajectories(run, spec.maxMembers ?? 200);
    case "map-evolution":
      return renderMapEvolution(run);
    case "wigner":
      return renderWigner(run);
    case "takabayasi":
      return renderTakabayasi(run);
    default: {
      const never: never = spec.kind;
      throw new Error(`unknown figure kind ${String(never)}`);
    }
  }
}

export { openRun, MissingArtifactError } from "./run.js";
export { MissingColumnError, MalformedCsvError } from "./csv.js";
