/** Shared fixtures: temp dirs, synthetic grid files and CSV tables. */

import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { PNG } from "pngjs";

export function tempDir(): string {
  return mkdtempSync(join(tmpdir(), "figkit-"));
}

/** Serialize values into the LQGGRID1 layout the experiment writes. */
export function gridBuffer(n: number, values: ArrayLike<number>): Buffer {
  const header = Buffer.alloc(12);
  header.write("LQGGRID1", 0, "latin1");
  header.writeUInt32LE(n, 8);
  return Buffer.concat([header, Buffer.from(new Float64Array(Array.from(values)).buffer)]);
}

export function writeGridFile(path: string, n: number, values: ArrayLike<number>): string {
  writeFileSync(path, gridBuffer(n, values));
  return path;
}

/** Normalized bump centered at (cx, cy); peak value is 1. */
export function gaussianGrid(n: number, cx: number, cy: number, sigma: number): Float64Array {
  const values = new Float64Array(n * n);
  for (let y = 0; y < n; y++) {
    for (let x = 0; x < n; x++) {
      const d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
      values[y * n + x] = Math.exp(-d2 / (2 * sigma * sigma));
    }
  }
  return values;
}

export function decodePng(png: Buffer): PNG {
  return PNG.sync.read(png);
}

export const PNG_SIGNATURE = Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);

/** profiles.csv content with gaussian-in-s profiles at the given times. */
export function profilesCsv(times: number[], rMax: number, alpha: number): string {
  const lines = ["t,r,ratio"];
  for (const t of times) {
    for (let r = 0; r <= rMax; r++) {
      const s = Math.pow(r, alpha) / t;
      lines.push(`${t},${r},${Math.exp(-s)}`);
    }
  }
  return lines.join("\n") + "\n";
}

export function ondiagCsv(rows: Array<[number, number]>): string {
  const lines = ["t,p,tp"];
  for (const [t, p] of rows) {
    lines.push(`${t},${p},${t * p}`);
  }
  return lines.join("\n") + "\n";
}
