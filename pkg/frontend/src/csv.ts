/**
 * Strict reader for the run artifacts: RFC-4180-style CSV, header row with
 * unit-tagged column names, '.' decimal separator. Figures never recompute
 * physics, so every access goes through named columns and a withheld column
 * fails loudly with its name.
 */

import { readFileSync } from "node:fs";

export class MissingColumnError extends Error {
  constructor(public readonly column: string, public readonly file: string, available: string[]) {
    super(`column "${column}" not found in ${file} (available: ${available.join(", ")})`);
    this.name = "MissingColumnError";
  }
}

export class MalformedCsvError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "MalformedCsvError";
  }
}

export interface Table {
  readonly file: string;
  readonly header: string[];
  /** column(name) returns the full numeric column or throws MissingColumnError */
  column(name: string): number[];
  readonly rows: number;
}

export function readCsv(path: string): Table {
  const text = readFileSync(path, "utf-8");
  const lines = text.split("\n").filter((l) => l.length > 0);
  if (lines.length < 1) {
    throw new MalformedCsvError(`${path}: empty file`);
  }
  const headerLine = lines[0]!;
  const header = headerLine.split(",");
  const columns: number[][] = header.map(() => []);
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i]!.split(",");
    if (parts.length !== header.length) {
      throw new MalformedCsvError(
        `${path}:${i + 1}: expected ${header.length} fields, got ${parts.length}`,
      );
    }
    for (let j = 0; j < parts.length; j++) {
      const v = Number(parts[j]);
      if (Number.isNaN(v)) {
        throw new MalformedCsvError(`${path}:${i + 1}: non-numeric value "${parts[j]}"`);
      }
      columns[j]!.push(v);
    }
  }
  return {
    file: path,
    header,
    rows: lines.length - 1,
    column(name: string): number[] {
      const idx = header.indexOf(name);
      if (idx < 0) {
        throw new MissingColumnError(name, path, header);
      }
      return columns[idx]!;
    },
  };
}
