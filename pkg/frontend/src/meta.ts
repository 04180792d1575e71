/**
 * Caption text from the run's configuration echo.
 *
 * Every trajectory directory written by the experiment CLI carries a
 * meta.json (n, gamma, seed, ...); figures embed those values so an image
 * stays traceable to the run that produced it.
 */

import { existsSync, readFileSync } from "node:fs";
import { dirname, join } from "node:path";

export interface RunMeta {
  n?: number;
  gamma?: number;
  seed?: number;
  [key: string]: unknown;
}

export function loadMeta(path: string): RunMeta {
  return JSON.parse(readFileSync(path, "utf8")) as RunMeta;
}

/** meta.json next to the given input file, if present. */
export function findSiblingMeta(inputPath: string): RunMeta | undefined {
  const candidate = join(dirname(inputPath), "meta.json");
  return existsSync(candidate) ? loadMeta(candidate) : undefined;
}

/** report.json next to the given input file, if present. */
export function findSiblingReport(inputPath: string): Record<string, unknown> | undefined {
  const candidate = join(dirname(inputPath), "report.json");
  if (!existsSync(candidate)) return undefined;
  return JSON.parse(readFileSync(candidate, "utf8")) as Record<string, unknown>;
}

export function captionText(meta: RunMeta | undefined, alpha?: number): string {
  const parts: string[] = [];
  if (meta?.n !== undefined) parts.push(`n=${meta.n}`);
  if (meta?.gamma !== undefined) parts.push(`gamma=${meta.gamma}`);
  if (meta?.seed !== undefined) parts.push(`seed=${meta.seed}`);
  if (alpha !== undefined) parts.push(`alpha=${formatNumber(alpha)}`);
  return parts.length > 0 ? parts.join("  ") : "(no run metadata)";
}

/** Short label for axis ticks and legends: trims float noise. */
export function formatNumber(v: number): string {
  if (v === 0) return "0";
  const abs = Math.abs(v);
  if (abs >= 1e4 || abs < 1e-3) {
    return v.toExponential(1).replace("e+", "e");
  }
  const text = v.toPrecision(4);
  return text.includes(".") ? text.replace(/\.?0+$/, "") : text;
}
