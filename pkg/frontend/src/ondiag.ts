/**
 * Return-probability figure: t*p(x,x) against t on a log time axis, one
 * curve per trajectory series.
 */

import { basename, dirname } from "node:path";
import { Chart, figureCanvas } from "./chart.js";
import { column, CsvFormatError, readCsv } from "./csv.js";
import { captionText, findSiblingMeta, RunMeta } from "./meta.js";
import { SERIES_COLORS } from "./raster.js";

export interface OndiagOptions {
  width?: number;
  height?: number;
  meta?: RunMeta;
}

export interface OndiagFigure {
  png: Buffer;
  seriesCount: number;
}

/** "traj_rank03/ondiag.csv" reads better as "rank 3" in the legend. */
export function seriesLabel(path: string, index: number): string {
  const dir = basename(dirname(path));
  const rank = dir.match(/rank0*(\d+)/);
  if (rank) return `rank ${rank[1]}`;
  const stem = basename(path).replace(/\.csv$/, "");
  return dir && dir !== "." ? dir : `${stem} ${index + 1}`;
}

export function plotOndiag(csvPaths: string[], options: OndiagOptions = {}): OndiagFigure {
  if (csvPaths.length === 0) {
    throw new CsvFormatError("no on-diagonal series given; need at least one ondiag.csv");
  }
  const series = csvPaths.map((path) => {
    const table = readCsv(path, ["t", "p", "tp"]);
    const t = column(table, "t");
    const tp = column(table, "tp");
    const keep = t.map((v, i) => i).filter((i) => t[i] > 0);
    if (keep.length < 2) {
      throw new CsvFormatError(`${path}: need at least 2 positive-time rows`);
    }
    return {
      label: seriesLabel(path, csvPaths.indexOf(path)),
      t: keep.map((i) => t[i]),
      tp: keep.map((i) => tp[i]),
    };
  });

  const allT = series.flatMap((s) => s.t);
  const allTp = series.flatMap((s) => s.tp);
  const tpMax = Math.max(...allTp);
  const meta = options.meta ?? findSiblingMeta(csvPaths[0]);

  const { raster, plotBox } = figureCanvas(
    options.width ?? 760,
    options.height ?? 520,
    "t*p(x,x) vs t",
    captionText(meta)
  );
  const chart = new Chart(
    raster,
    plotBox,
    { scale: "log", min: Math.min(...allT), max: Math.max(...allT), label: "t" },
    { scale: "linear", min: 0, max: tpMax * 1.08, label: "t*p" }
  );
  chart.drawFrame();
  series.forEach((s, i) => {
    const color = SERIES_COLORS[i % SERIES_COLORS.length];
    chart.polyline(s.t, s.tp, color);
    chart.markers(s.t, s.tp, color, 3);
  });
  chart.legend(
    series.map((s, i) => ({ label: s.label, color: SERIES_COLORS[i % SERIES_COLORS.length] }))
  );
  return { png: raster.toPng(), seriesCount: series.length };
}
