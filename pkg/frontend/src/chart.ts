/**
 * Axes, ticks and legend layout on top of the rasterizer.
 *
 * One Chart instance owns a rectangular plot area inside a Raster, maps data
 * coordinates to pixels on linear or log scales, and draws the frame
 * furniture the three figure kinds share.
 */

import { textWidth } from "./font.js";
import { formatNumber } from "./meta.js";
import { BLACK, Color, GRAY, LIGHT_GRAY, Raster } from "./raster.js";

export type AxisScale = "linear" | "log";

export interface ChartBox {
  left: number;
  top: number;
  width: number;
  height: number;
}

export interface AxisSpec {
  scale: AxisScale;
  min: number;
  max: number;
  label: string;
}

export function linearTicks(lo: number, hi: number, target = 6): number[] {
  if (!(hi > lo)) return [lo];
  const rawStep = (hi - lo) / target;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const mult of [1, 2, 5, 10]) {
    if (mag * mult >= rawStep) {
      step = mag * mult;
      break;
    }
  }
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

export function logTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  const first = Math.ceil(Math.log10(lo) - 1e-9);
  const last = Math.floor(Math.log10(hi) + 1e-9);
  for (let e = first; e <= last; e++) {
    ticks.push(Math.pow(10, e));
  }
  // fall back to 1-2-5 within a single decade
  if (ticks.length < 2) {
    for (const mult of [1, 2, 5]) {
      for (let e = Math.floor(Math.log10(lo)); e <= Math.ceil(Math.log10(hi)); e++) {
        const v = mult * Math.pow(10, e);
        if (v >= lo * 0.999 && v <= hi * 1.001) ticks.push(v);
      }
    }
    ticks.sort((a, b) => a - b);
  }
  return ticks;
}

export class Chart {
  constructor(
    readonly raster: Raster,
    readonly box: ChartBox,
    readonly xAxis: AxisSpec,
    readonly yAxis: AxisSpec
  ) {
    if (xAxis.scale === "log" && !(xAxis.min > 0)) {
      throw new Error(`log x-axis needs positive bounds, got min ${xAxis.min}`);
    }
    if (yAxis.scale === "log" && !(yAxis.min > 0)) {
      throw new Error(`log y-axis needs positive bounds, got min ${yAxis.min}`);
    }
  }

  private coord(value: number, axis: AxisSpec): number {
    if (axis.scale === "log") {
      return (Math.log(value) - Math.log(axis.min)) / (Math.log(axis.max) - Math.log(axis.min));
    }
    return (value - axis.min) / (axis.max - axis.min);
  }

  px(x: number): number {
    return this.box.left + this.coord(x, this.xAxis) * this.box.width;
  }

  py(y: number): number {
    return this.box.top + (1 - this.coord(y, this.yAxis)) * this.box.height;
  }

  inRange(x: number, y: number): boolean {
    const fx = this.coord(x, this.xAxis);
    const fy = this.coord(y, this.yAxis);
    return fx >= -1e-9 && fx <= 1 + 1e-9 && fy >= -1e-9 && fy <= 1 + 1e-9;
  }

  drawFrame(): void {
    const { left, top, width, height } = this.box;
    const r = this.raster;
    const xTicks =
      this.xAxis.scale === "log"
        ? logTicks(this.xAxis.min, this.xAxis.max)
        : linearTicks(this.xAxis.min, this.xAxis.max);
    const yTicks =
      this.yAxis.scale === "log"
        ? logTicks(this.yAxis.min, this.yAxis.max)
        : linearTicks(this.yAxis.min, this.yAxis.max);

    for (const v of xTicks) {
      const x = Math.round(this.px(v));
      r.line(x, top, x, top + height, LIGHT_GRAY);
    }
    for (const v of yTicks) {
      const y = Math.round(this.py(v));
      r.line(left, y, left + width, y, LIGHT_GRAY);
    }

    r.line(left, top, left, top + height, BLACK);
    r.line(left, top + height, left + width, top + height, BLACK);
    r.line(left + width, top, left + width, top + height, GRAY);
    r.line(left, top, left + width, top, GRAY);

    for (const v of xTicks) {
      const x = Math.round(this.px(v));
      r.line(x, top + height, x, top + height + 4, BLACK);
      const label = formatNumber(v);
      r.text(x - textWidth(label) / 2, top + height + 7, label, BLACK);
    }
    for (const v of yTicks) {
      const y = Math.round(this.py(v));
      r.line(left - 4, y, left, y, BLACK);
      const label = formatNumber(v);
      r.text(left - 7 - textWidth(label), y - 3, label, BLACK);
    }

    r.text(
      left + width / 2 - textWidth(this.xAxis.label) / 2,
      top + height + 22,
      this.xAxis.label,
      BLACK
    );
    r.textVertical(8, top + height / 2 + textWidth(this.yAxis.label) / 2, this.yAxis.label, BLACK);
  }

  polyline(xs: number[], ys: number[], color: Color): void {
    let prev: [number, number] | undefined;
    for (let i = 0; i < xs.length; i++) {
      if (!this.inRange(xs[i], ys[i])) {
        prev = undefined;
        continue;
      }
      const point: [number, number] = [this.px(xs[i]), this.py(ys[i])];
      if (prev) {
        this.raster.line(prev[0], prev[1], point[0], point[1], color);
      }
      prev = point;
    }
  }

  markers(xs: number[], ys: number[], color: Color, size = 3): void {
    for (let i = 0; i < xs.length; i++) {
      if (!this.inRange(xs[i], ys[i])) continue;
      this.raster.marker(this.px(xs[i]), this.py(ys[i]), size, color);
    }
  }

  legend(entries: { label: string; color: Color }[]): void {
    if (entries.length === 0) return;
    const lineHeight = 11;
    const swatch = 8;
    const widest = Math.max(...entries.map((e) => textWidth(e.label)));
    const w = swatch + 6 + widest + 10;
    const h = entries.length * lineHeight + 6;
    const x = this.box.left + this.box.width - w - 6;
    const y = this.box.top + 6;
    this.raster.fillRect(x, y, w, h, [252, 252, 252]);
    this.raster.line(x, y, x + w, y, GRAY);
    this.raster.line(x, y + h, x + w, y + h, GRAY);
    this.raster.line(x, y, x, y + h, GRAY);
    this.raster.line(x + w, y, x + w, y + h, GRAY);
    entries.forEach((entry, i) => {
      const rowY = y + 4 + i * lineHeight;
      this.raster.fillRect(x + 5, rowY, swatch, swatch, entry.color);
      this.raster.text(x + 5 + swatch + 6, rowY, entry.label, BLACK);
    });
  }
}

export interface FigureLayout {
  raster: Raster;
  plotBox: ChartBox;
}

/** White canvas with room for a title line above and a caption line below. */
export function figureCanvas(width: number, height: number, title: string, caption: string): FigureLayout {
  const raster = new Raster(width, height);
  raster.text(Math.max(6, width / 2 - textWidth(title, 2) / 2), 8, title, BLACK, 2);
  raster.text(10, height - 14, caption, GRAY);
  return {
    raster,
    plotBox: { left: 58, top: 34, width: width - 76, height: height - 96 },
  };
}
