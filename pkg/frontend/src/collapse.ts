/**
 * Scaling-collapse figure: profile ratios against s = r^alpha / t with one
 * curve per time; at the right alpha the curves coincide.
 */

import { Chart, figureCanvas } from "./chart.js";
import { column, CsvFormatError, readCsv } from "./csv.js";
import { captionText, findSiblingMeta, formatNumber, RunMeta } from "./meta.js";
import { SERIES_COLORS } from "./raster.js";

export interface CollapseOptions {
  width?: number;
  height?: number;
  /** Largest s shown; defaults to 8 or the data range, whichever is smaller. */
  sMax?: number;
  meta?: RunMeta;
}

export interface CollapseFigure {
  png: Buffer;
  timesShown: number[];
}

const RATIO_FLOOR = 1e-9;

export function plotCollapse(
  profilesCsv: string,
  alpha: number,
  options: CollapseOptions = {}
): CollapseFigure {
  if (!(alpha > 0)) {
    throw new RangeError(`alpha must be positive, got ${alpha}`);
  }
  const table = readCsv(profilesCsv, ["t", "r", "ratio"]);
  const t = column(table, "t");
  const r = column(table, "r");
  const ratio = column(table, "ratio");

  const byTime = new Map<number, { s: number[]; rho: number[] }>();
  for (let i = 0; i < t.length; i++) {
    if (!byTime.has(t[i])) byTime.set(t[i], { s: [], rho: [] });
    const bucket = byTime.get(t[i])!;
    bucket.s.push(Math.pow(r[i], alpha) / t[i]);
    bucket.rho.push(ratio[i]);
  }
  if (byTime.size < 2) {
    throw new CsvFormatError(
      `${profilesCsv}: collapse needs profiles at >= 2 distinct times, got ${byTime.size}`
    );
  }

  const times = [...byTime.keys()].sort((a, b) => a - b);
  const visible = times.flatMap((time) => {
    const bucket = byTime.get(time)!;
    return bucket.s.filter((_, i) => bucket.rho[i] > RATIO_FLOOR);
  });
  const sMax = options.sMax ?? Math.min(8, Math.max(...visible));
  const meta = options.meta ?? findSiblingMeta(profilesCsv);

  const { raster, plotBox } = figureCanvas(
    options.width ?? 760,
    options.height ?? 520,
    `profile collapse at alpha=${formatNumber(alpha)}`,
    captionText(meta, alpha)
  );
  const chart = new Chart(
    raster,
    plotBox,
    { scale: "linear", min: 0, max: sMax, label: `s = r^${formatNumber(alpha)}/t` },
    { scale: "log", min: RATIO_FLOOR, max: 1.3, label: "p(x,y)/p(x,x)" }
  );
  chart.drawFrame();
  times.forEach((time, i) => {
    const bucket = byTime.get(time)!;
    const color = SERIES_COLORS[i % SERIES_COLORS.length];
    chart.polyline(bucket.s, bucket.rho, color);
    chart.markers(bucket.s, bucket.rho, color, 3);
  });
  chart.legend(
    times.map((time, i) => ({
      label: `t=${formatNumber(time)}`,
      color: SERIES_COLORS[i % SERIES_COLORS.length],
    }))
  );
  return { png: raster.toPng(), timesShown: times };
}
