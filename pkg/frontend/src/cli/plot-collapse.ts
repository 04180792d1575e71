/** Render profile ratios against r^alpha/t from a profiles.csv. */

import { findSiblingReport } from "../meta.js";
import { plotCollapse } from "../collapse.js";
import { optionalMeta, optionalNumber, parseCli, requireOut, runFigure, writeFigure } from "./common.js";

const USAGE = `usage: plot-collapse --out fig.png [--alpha A] [--meta meta.json] [--s-max S] profiles.csv
(--alpha defaults to alpha_hat from a report.json next to the input)`;

runFigure(() => {
  const { positionals, values } = parseCli(USAGE, {
    out: { type: "string" },
    alpha: { type: "string" },
    meta: { type: "string" },
    "s-max": { type: "string" },
    width: { type: "string" },
    height: { type: "string" },
  });
  const out = requireOut(values, USAGE);
  if (positionals.length !== 1) {
    console.error(`expected exactly one profiles.csv, got ${positionals.length}\n${USAGE}`);
    process.exit(2);
  }

  let alpha = optionalNumber(values, "alpha");
  if (alpha === undefined) {
    const report = findSiblingReport(positionals[0]);
    if (report && typeof report.alpha_hat === "number") {
      alpha = report.alpha_hat;
    } else {
      console.error(`no --alpha given and no report.json with alpha_hat next to the input\n${USAGE}`);
      process.exit(2);
    }
  }

  const figure = plotCollapse(positionals[0], alpha, {
    meta: optionalMeta(values),
    sMax: optionalNumber(values, "s-max"),
    width: optionalNumber(values, "width"),
    height: optionalNumber(values, "height"),
  });
  writeFigure(out, figure.png, `alpha=${alpha}, ${figure.timesShown.length} times`);
});
