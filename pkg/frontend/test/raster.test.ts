import { describe, expect, it } from "vitest";
import { BLACK, Raster, SERIES_COLORS, WHITE } from "../src/raster.js";
import { decodePng, PNG_SIGNATURE } from "./helpers.js";

function pixel(r: Raster, x: number, y: number): [number, number, number] {
  const at = (y * r.width + x) * 3;
  return [r.data[at], r.data[at + 1], r.data[at + 2]];
}

describe("Raster", () => {
  it("starts as a white canvas and sets single pixels", () => {
    const r = new Raster(4, 3);
    expect(pixel(r, 0, 0)).toEqual([...WHITE]);
    r.set(2, 1, [10, 20, 30]);
    expect(pixel(r, 2, 1)).toEqual([10, 20, 30]);
  });

  it("ignores out-of-bounds writes instead of wrapping", () => {
    const r = new Raster(4, 4);
    r.set(-1, 0, BLACK);
    r.set(0, -1, BLACK);
    r.set(4, 0, BLACK);
    r.set(0, 4, BLACK);
    expect(r.data.every((v) => v === 255)).toBe(true);
  });

  it("rejects empty sizes", () => {
    expect(() => new Raster(0, 5)).toThrow(/positive/);
  });

  it("clamps fillRect to the canvas", () => {
    const r = new Raster(4, 4);
    r.fillRect(-10, -10, 100, 100, BLACK);
    expect(pixel(r, 0, 0)).toEqual([...BLACK]);
    expect(pixel(r, 3, 3)).toEqual([...BLACK]);
  });

  it("draws lines through both endpoints", () => {
    const r = new Raster(10, 10);
    r.line(1, 1, 8, 5, BLACK);
    expect(pixel(r, 1, 1)).toEqual([...BLACK]);
    expect(pixel(r, 8, 5)).toEqual([...BLACK]);
  });

  it("renders text as ink in the glyph box", () => {
    const r = new Raster(20, 12);
    r.text(2, 2, "A", BLACK);
    const inked = r.data.filter((_, i) => i % 3 === 0 && r.data[i] !== 255).length;
    expect(inked).toBeGreaterThan(5);
    expect(pixel(r, 0, 0)).toEqual([...WHITE]);
  });

  it("encodes a PNG that decodes back to the same pixels", () => {
    const r = new Raster(5, 4);
    r.set(3, 2, SERIES_COLORS[0]);
    const png = r.toPng();
    expect(png.subarray(0, 8)).toEqual(PNG_SIGNATURE);
    const decoded = decodePng(png);
    expect(decoded.width).toBe(5);
    expect(decoded.height).toBe(4);
    const at = (2 * 5 + 3) * 4;
    expect([decoded.data[at], decoded.data[at + 1], decoded.data[at + 2]]).toEqual([
      ...SERIES_COLORS[0],
    ]);
    expect(decoded.data[at + 3]).toBe(255);
  });
});
