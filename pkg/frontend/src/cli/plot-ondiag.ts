/** Render t*p(x,x) curves from one or more ondiag.csv files. */

import { plotOndiag } from "../ondiag.js";
import { optionalMeta, optionalNumber, parseCli, requireOut, runFigure, writeFigure } from "./common.js";

const USAGE = `usage: plot-ondiag --out fig.png [--meta meta.json] [--width W] [--height H] ondiag.csv [more.csv ...]`;

runFigure(() => {
  const { positionals, values } = parseCli(USAGE, {
    out: { type: "string" },
    meta: { type: "string" },
    width: { type: "string" },
    height: { type: "string" },
  });
  const out = requireOut(values, USAGE);
  const figure = plotOndiag(positionals, {
    meta: optionalMeta(values),
    width: optionalNumber(values, "width"),
    height: optionalNumber(values, "height"),
  });
  writeFigure(out, figure.png, `${figure.seriesCount} series`);
});
