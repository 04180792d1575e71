/**
 * Shared scaffolding for the plot scripts: option parsing, output writing,
 * and uniform error reporting (message to stderr, nonzero exit).
 */

import { writeFileSync } from "node:fs";
import { parseArgs, ParseArgsConfig } from "node:util";
import { CsvFormatError } from "../csv.js";
import { GridFormatError } from "../gridfile.js";
import { loadMeta, RunMeta } from "../meta.js";

export interface CliIo {
  positionals: string[];
  values: Record<string, string | boolean | (string | boolean)[] | undefined>;
}

export function parseCli(usage: string, options: ParseArgsConfig["options"]): CliIo {
  const { values, positionals } = parseArgs({
    options: { ...options, help: { type: "boolean", short: "h" } },
    allowPositionals: true,
  });
  if (values.help) {
    console.log(usage);
    process.exit(0);
  }
  return { positionals, values: values as CliIo["values"] };
}

export function requireOut(values: CliIo["values"], usage: string): string {
  const out = values.out;
  if (typeof out !== "string" || out.length === 0) {
    console.error(`missing required --out <path.png>\n${usage}`);
    process.exit(2);
  }
  return out;
}

export function optionalMeta(values: CliIo["values"]): RunMeta | undefined {
  return typeof values.meta === "string" ? loadMeta(values.meta) : undefined;
}

export function optionalNumber(values: CliIo["values"], key: string): number | undefined {
  const raw = values[key];
  if (raw === undefined) return undefined;
  const parsed = Number(raw);
  if (Number.isNaN(parsed)) {
    console.error(`--${key} expects a number, got ${String(raw)}`);
    process.exit(2);
  }
  return parsed;
}

export function writeFigure(path: string, png: Buffer, summary: string): void {
  writeFileSync(path, png);
  console.log(`wrote ${path} (${png.length} bytes, ${summary})`);
}

/** Run the figure body with uniform error-to-exit-code mapping. */
export function runFigure(body: () => void): void {
  try {
    body();
  } catch (err) {
    if (err instanceof CsvFormatError || err instanceof RangeError) {
      console.error(`input error: ${(err as Error).message}`);
      process.exit(2);
    }
    if (err instanceof GridFormatError) {
      console.error(`grid format error: ${(err as Error).message}`);
      process.exit(4);
    }
    if (err instanceof Error && "code" in err && typeof err.code === "string") {
      console.error(`i/o error: ${err.message}`);
      process.exit(4);
    }
    throw err;
  }
}
