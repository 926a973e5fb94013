/** Run-directory model: locates the artifact files a figure kind consumes. */

import { existsSync, readFileSync, readdirSync } from "node:fs";
import { join } from "node:path";

export class MissingArtifactError extends Error {
  constructor(public readonly path: string, hint: string) {
    super(`missing run artifact: ${path} (${hint})`);
    this.name = "MissingArtifactError";
  }
}

export interface RunDirectory {
  readonly root: string;
  readonly summary: Summary;
  /** ordered checkpoint file lists, e.g. marginals_t0.csv, marginals_t1.csv ... */
  series(prefix: string): string[];
  file(name: string): string;
}

export interface Summary {
  scenario: string;
  passed: boolean;
  checks: Record<string, unknown>;
  reports: Array<Record<string, unknown>>;
}

export function openRun(root: string): RunDirectory {
  const summaryPath = join(root, "summary.json");
  if (!existsSync(summaryPath)) {
    throw new MissingArtifactError(summaryPath, "not a completed run directory");
  }
  const summary = JSON.parse(readFileSync(summaryPath, "utf-8")) as Summary;
  const entries = readdirSync(root);
  return {
    root,
    summary,
    series(prefix: string): string[] {
      const found = entries
        .filter((e) => e.startsWith(`${prefix}_t`) && e.endsWith(".csv"))
        .map((e) => ({ name: e, k: Number(e.slice(prefix.length + 2, -4)) }))
        .filter((e) => Number.isInteger(e.k))
        .sort((a, b) => a.k - b.k)
        .map((e) => join(root, e.name));
      if (found.length === 0) {
        throw new MissingArtifactError(join(root, `${prefix}_t*.csv`), `no ${prefix} checkpoints`);
      }
      return found;
    },
    file(name: string): string {
      const path = join(root, name);
      if (!existsSync(path)) {
        throw new MissingArtifactError(path, "required by this figure kind");
      }
      return path;
    },
  };
}

/** Checkpoint times recorded by the run, if present (run1d writes them). */
export function checkpointTimes(run: RunDirectory): number[] | undefined {
  const t = run.summary.checks["checkpoints"];
  return Array.isArray(t) ? (t as number[]) : undefined;
}
