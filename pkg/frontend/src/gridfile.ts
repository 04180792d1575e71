/**
 * Reader for the LQGGRID1 binary grid format.
 *
 * Layout: 8-byte ASCII magic "LQGGRID1", unsigned 32-bit little-endian side
 * length n, then n*n little-endian float64 values in row-major order.
 */

import { readFileSync } from "node:fs";

const MAGIC = "LQGGRID1";
const HEADER_BYTES = 12;

export class GridFormatError extends Error {}

export interface Grid {
  n: number;
  /** Row-major values, length n*n. */
  values: Float64Array;
}

export function readGrid(path: string): Grid {
  const raw = readFileSync(path);
  if (raw.length < HEADER_BYTES || raw.toString("latin1", 0, 8) !== MAGIC) {
    throw new GridFormatError(`${path}: not an LQGGRID1 file (bad magic)`);
  }
  const n = raw.readUInt32LE(8);
  if (n < 2) {
    throw new GridFormatError(`${path}: invalid side length ${n}`);
  }
  const expected = HEADER_BYTES + 8 * n * n;
  if (raw.length !== expected) {
    throw new GridFormatError(
      `${path}: payload size mismatch (expected ${expected} bytes, got ${raw.length})`
    );
  }
  // copy into an aligned buffer; Buffer slices may be unaligned for Float64Array
  const payload = new Uint8Array(raw.buffer, raw.byteOffset + HEADER_BYTES, 8 * n * n).slice();
  const values = new Float64Array(payload.buffer);
  for (const v of values) {
    if (!Number.isFinite(v)) {
      throw new GridFormatError(`${path}: grid contains non-finite values`);
    }
  }
  return { n, values };
}

export function gridMax(grid: Grid): number {
  let best = -Infinity;
  for (const v of grid.values) {
    if (v > best) best = v;
  }
  return best;
}
