/**
 * Snapshot heatmap panels on one shared log color scale.
 *
 * Each LQGGRID1 file becomes one panel; the scale maxes over all panels so
 * the heat ball visibly spreads and dims across the sequence.
 */

import { basename } from "node:path";
import { makeLogScale } from "./colormap.js";
import { figureCanvas } from "./chart.js";
import { Grid, GridFormatError, gridMax, readGrid } from "./gridfile.js";
import { captionText, findSiblingMeta, formatNumber, RunMeta } from "./meta.js";
import { BLACK, GRAY, Raster } from "./raster.js";
import { textWidth } from "./font.js";

export interface HeatballOptions {
  /** Pixel edge of one panel image (grid resamples to this). */
  panelSize?: number;
  meta?: RunMeta;
}

export interface HeatballFigure {
  png: Buffer;
  panels: number;
  columns: number;
  rows: number;
}

interface Panel {
  label: string;
  iteration: number;
  grid: Grid;
}

function panelFromPath(path: string, dt: number): Panel {
  const grid = readGrid(path);
  const match = basename(path).match(/snap_(\d+)\.grid$/);
  const iteration = match ? Number(match[1]) : Number.NaN;
  const label = match ? `t=${formatNumber(iteration * dt)}` : basename(path);
  return { label, iteration, grid };
}

function drawPanel(raster: Raster, x0: number, y0: number, size: number, grid: Grid, scale: ReturnType<typeof makeLogScale>): void {
  const n = grid.n;
  for (let py = 0; py < size; py++) {
    const sy = Math.min(n - 1, Math.floor((py * n) / size));
    for (let px = 0; px < size; px++) {
      const sx = Math.min(n - 1, Math.floor((px * n) / size));
      raster.set(x0 + px, y0 + py, scale.color(grid.values[sy * n + sx]));
    }
  }
}

export function plotHeatballs(gridPaths: string[], options: HeatballOptions = {}): HeatballFigure {
  if (gridPaths.length === 0) {
    throw new GridFormatError("no snapshot grids given; need at least one snap_<iter>.grid");
  }
  const meta = options.meta ?? findSiblingMeta(gridPaths[0]);
  const dt = typeof meta?.dt === "number" ? meta.dt : 1.0;
  const panels = gridPaths.map((path) => panelFromPath(path, dt));
  panels.sort((a, b) =>
    Number.isNaN(a.iteration) || Number.isNaN(b.iteration)
      ? a.label.localeCompare(b.label)
      : a.iteration - b.iteration
  );

  const n = panels[0].grid.n;
  for (const panel of panels) {
    if (panel.grid.n !== n) {
      throw new GridFormatError(
        `panel sizes differ: expected n=${n}, got n=${panel.grid.n} in ${panel.label}`
      );
    }
  }

  const globalMax = Math.max(...panels.map((p) => gridMax(p.grid)));
  const scale = makeLogScale(globalMax);

  const panelSize = options.panelSize ?? Math.max(96, Math.min(240, n));
  const columns = Math.ceil(Math.sqrt(panels.length));
  const rows = Math.ceil(panels.length / columns);
  const pad = 14;
  const labelBand = 12;
  const width = columns * (panelSize + pad) + pad;
  const height = rows * (panelSize + labelBand + pad) + pad + 52;

  const caption = `${captionText(meta)}  |  log color scale, floor 1e-12 x max`;
  const { raster } = figureCanvas(width, height, "heat-ball snapshots", caption);

  panels.forEach((panel, i) => {
    const col = i % columns;
    const row = Math.floor(i / columns);
    const x0 = pad + col * (panelSize + pad);
    const y0 = 30 + row * (panelSize + labelBand + pad);
    raster.text(x0 + panelSize / 2 - textWidth(panel.label) / 2, y0, panel.label, BLACK);
    drawPanel(raster, x0, y0 + labelBand, panelSize, panel.grid, scale);
    raster.line(x0 - 1, y0 + labelBand - 1, x0 + panelSize, y0 + labelBand - 1, GRAY);
    raster.line(x0 - 1, y0 + labelBand + panelSize, x0 + panelSize, y0 + labelBand + panelSize, GRAY);
    raster.line(x0 - 1, y0 + labelBand - 1, x0 - 1, y0 + labelBand + panelSize, GRAY);
    raster.line(x0 + panelSize, y0 + labelBand - 1, x0 + panelSize, y0 + labelBand + panelSize, GRAY);
  });

  return { png: raster.toPng(), panels: panels.length, columns, rows };
}
