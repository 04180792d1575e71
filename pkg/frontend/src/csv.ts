/**
 * Minimal CSV reading for the experiment's numeric tables.
 *
 * All files this kit consumes are plain comma-separated numbers under a
 * one-line header (no quoting or escaping), so a split-based parser is exact.
 */

import { readFileSync } from "node:fs";

export class CsvFormatError extends Error {}

export interface Table {
  header: string[];
  rows: number[][];
}

export function readCsv(path: string, expectedHeader?: string[]): Table {
  const text = readFileSync(path, "utf8");
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new CsvFormatError(`${path}: empty file`);
  }
  const header = lines[0].split(",").map((s) => s.trim());
  if (expectedHeader && expectedHeader.join(",") !== header.join(",")) {
    throw new CsvFormatError(
      `${path}: expected header "${expectedHeader.join(",")}", got "${header.join(",")}"`
    );
  }
  const rows: number[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== header.length) {
      throw new CsvFormatError(`${path}:${i + 1}: expected ${header.length} columns`);
    }
    const row = cells.map(Number);
    if (row.some((v) => Number.isNaN(v))) {
      throw new CsvFormatError(`${path}:${i + 1}: non-numeric cell in "${lines[i]}"`);
    }
    rows.push(row);
  }
  return { header, rows };
}

/** Column by name, as a plain array. */
export function column(table: Table, name: string): number[] {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new CsvFormatError(`missing column "${name}" (have: ${table.header.join(", ")})`);
  }
  return table.rows.map((row) => row[idx]);
}
