/** Render snapshot heatmaps (one panel per LQGGRID1 file, shared log scale). */

import { plotHeatballs } from "../heatballs.js";
import { optionalMeta, optionalNumber, parseCli, requireOut, runFigure, writeFigure } from "./common.js";

const USAGE = `usage: plot-heatballs --out fig.png [--meta meta.json] [--panel-size PX] snap_0.grid [more.grid ...]`;

runFigure(() => {
  const { positionals, values } = parseCli(USAGE, {
    out: { type: "string" },
    meta: { type: "string" },
    "panel-size": { type: "string" },
  });
  const out = requireOut(values, USAGE);
  const figure = plotHeatballs(positionals, {
    meta: optionalMeta(values),
    panelSize: optionalNumber(values, "panel-size"),
  });
  writeFigure(out, figure.png, `${figure.panels} panels in ${figure.rows}x${figure.columns}`);
});
