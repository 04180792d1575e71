/**
 * Software rasterizer: an RGB pixel buffer with the handful of primitives
 * the figures need (rectangles, lines, bitmap text) and PNG encoding.
 */

import { PNG } from "pngjs";
import { GLYPH_HEIGHT, GLYPH_WIDTH, glyphFor } from "./font.js";

export type Color = readonly [number, number, number];

export const WHITE: Color = [255, 255, 255];
export const BLACK: Color = [20, 20, 20];
export const GRAY: Color = [130, 130, 130];
export const LIGHT_GRAY: Color = [225, 225, 225];

/** Qualitative palette for data series (colorblind-safe Okabe-Ito order). */
export const SERIES_COLORS: Color[] = [
  [0, 114, 178],
  [213, 94, 0],
  [0, 158, 115],
  [204, 121, 167],
  [230, 159, 0],
  [86, 180, 233],
  [240, 228, 66],
  [0, 0, 0],
  [140, 86, 75],
  [120, 120, 200],
];

export class Raster {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8Array;

  constructor(width: number, height: number, background: Color = WHITE) {
    if (width < 1 || height < 1) {
      throw new Error(`raster size must be positive, got ${width}x${height}`);
    }
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(width * height * 3);
    this.fillRect(0, 0, width, height, background);
  }

  set(x: number, y: number, color: Color): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const at = (y * this.width + x) * 3;
    this.data[at] = color[0];
    this.data[at + 1] = color[1];
    this.data[at + 2] = color[2];
  }

  fillRect(x: number, y: number, w: number, h: number, color: Color): void {
    const x1 = Math.max(0, Math.floor(x));
    const y1 = Math.max(0, Math.floor(y));
    const x2 = Math.min(this.width, Math.ceil(x + w));
    const y2 = Math.min(this.height, Math.ceil(y + h));
    for (let yy = y1; yy < y2; yy++) {
      for (let xx = x1; xx < x2; xx++) {
        this.set(xx, yy, color);
      }
    }
  }

  /** Bresenham segment between integer-rounded endpoints. */
  line(x0: number, y0: number, x1: number, y1: number, color: Color): void {
    let x = Math.round(x0);
    let y = Math.round(y0);
    const xe = Math.round(x1);
    const ye = Math.round(y1);
    const dx = Math.abs(xe - x);
    const dy = -Math.abs(ye - y);
    const sx = x < xe ? 1 : -1;
    const sy = y < ye ? 1 : -1;
    let err = dx + dy;
    for (;;) {
      this.set(x, y, color);
      if (x === xe && y === ye) break;
      const doubled = 2 * err;
      if (doubled >= dy) {
        err += dy;
        x += sx;
      }
      if (doubled <= dx) {
        err += dx;
        y += sy;
      }
    }
  }

  /** Filled square marker centered on the point. */
  marker(x: number, y: number, size: number, color: Color): void {
    const half = Math.floor(size / 2);
    this.fillRect(Math.round(x) - half, Math.round(y) - half, size, size, color);
  }

  text(x: number, y: number, content: string, color: Color, scale = 1): void {
    let penX = Math.round(x);
    const penY = Math.round(y);
    for (const ch of content) {
      const rows = glyphFor(ch);
      for (let gy = 0; gy < GLYPH_HEIGHT; gy++) {
        for (let gx = 0; gx < GLYPH_WIDTH; gx++) {
          if (rows[gy][gx] !== "X") continue;
          this.fillRect(penX + gx * scale, penY + gy * scale, scale, scale, color);
        }
      }
      penX += (GLYPH_WIDTH + 1) * scale;
    }
  }

  /** Text rotated 90 degrees counterclockwise (for y-axis titles). */
  textVertical(x: number, y: number, content: string, color: Color, scale = 1): void {
    let penY = Math.round(y);
    const penX = Math.round(x);
    for (const ch of content) {
      const rows = glyphFor(ch);
      for (let gy = 0; gy < GLYPH_HEIGHT; gy++) {
        for (let gx = 0; gx < GLYPH_WIDTH; gx++) {
          if (rows[gy][gx] !== "X") continue;
          // glyph (gx, gy) lands at (x + gy, y - gx) after the quarter turn
          this.fillRect(penX + gy * scale, penY - (gx + 1) * scale, scale, scale, color);
        }
      }
      penY -= (GLYPH_WIDTH + 1) * scale;
    }
  }

  toPng(): Buffer {
    const png = new PNG({ width: this.width, height: this.height });
    for (let i = 0, j = 0; i < this.data.length; i += 3, j += 4) {
      png.data[j] = this.data[i];
      png.data[j + 1] = this.data[i + 1];
      png.data[j + 2] = this.data[i + 2];
      png.data[j + 3] = 255;
    }
    return PNG.sync.write(png);
  }
}
