import { writeFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { GridFormatError, gridMax, readGrid } from "../src/gridfile.js";
import { gridBuffer, tempDir, writeGridFile } from "./helpers.js";

describe("readGrid", () => {
  it("round-trips a row-major float64 payload", () => {
    const dir = tempDir();
    const values = [0.5, -1.25e-9, 3.75, 0, 1e12, 2, 7, 8, 9];
    const path = writeGridFile(join(dir, "snap_0.grid"), 3, values);
    const grid = readGrid(path);
    expect(grid.n).toBe(3);
    expect(Array.from(grid.values)).toEqual(values);
  });

  it("rejects a wrong magic string", () => {
    const dir = tempDir();
    const buf = gridBuffer(2, [1, 2, 3, 4]);
    buf.write("LQGGRID2", 0, "latin1");
    const path = join(dir, "bad_magic.grid");
    writeFileSync(path, buf);
    expect(() => readGrid(path)).toThrow(GridFormatError);
    expect(() => readGrid(path)).toThrow(/bad magic/);
  });

  it("rejects a truncated payload", () => {
    const dir = tempDir();
    const path = join(dir, "short.grid");
    writeFileSync(path, gridBuffer(2, [1, 2, 3, 4]).subarray(0, 20));
    expect(() => readGrid(path)).toThrow(/size mismatch/);
  });

  it("rejects a payload with trailing bytes", () => {
    const dir = tempDir();
    const path = join(dir, "long.grid");
    writeFileSync(path, Buffer.concat([gridBuffer(2, [1, 2, 3, 4]), Buffer.alloc(8)]));
    expect(() => readGrid(path)).toThrow(/size mismatch/);
  });

  it("rejects side lengths below 2", () => {
    const dir = tempDir();
    const path = writeGridFile(join(dir, "tiny.grid"), 1, [1]);
    expect(() => readGrid(path)).toThrow(/side length/);
  });

  it("rejects NaN and infinity in the payload", () => {
    const dir = tempDir();
    for (const poison of [Number.NaN, Number.POSITIVE_INFINITY]) {
      const path = writeGridFile(join(dir, "poison.grid"), 2, [1, poison, 3, 4]);
      expect(() => readGrid(path)).toThrow(/non-finite/);
    }
  });

  it("rejects files shorter than the header", () => {
    const dir = tempDir();
    const path = join(dir, "stub.grid");
    writeFileSync(path, Buffer.from("LQG"));
    expect(() => readGrid(path)).toThrow(GridFormatError);
  });
});

describe("gridMax", () => {
  it("finds the largest value", () => {
    const dir = tempDir();
    const path = writeGridFile(join(dir, "m.grid"), 2, [-5, 0.25, 0.125, -1]);
    expect(gridMax(readGrid(path))).toBe(0.25);
  });
});
