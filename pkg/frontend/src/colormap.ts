/**
 * Log-scaled sequential colormap for heat-kernel snapshots.
 *
 * Values span many orders of magnitude near the spike, so panels share one
 * log scale floored at 1e-12 of the global maximum; anything at or below the
 * floor (including the solver's tiny negative undershoots) gets the bottom
 * color.
 */

import type { Color } from "./raster.js";

export const FLOOR_FRACTION = 1e-12;

// inferno-style anchors, interpolated linearly in RGB
const ANCHORS: Color[] = [
  [0, 0, 4],
  [40, 11, 84],
  [101, 21, 110],
  [159, 42, 99],
  [212, 72, 66],
  [245, 125, 21],
  [250, 193, 39],
  [252, 255, 164],
];

export function rampColor(fraction: number): Color {
  const f = Math.min(1, Math.max(0, fraction));
  const pos = f * (ANCHORS.length - 1);
  const lo = Math.min(ANCHORS.length - 2, Math.floor(pos));
  const w = pos - lo;
  const a = ANCHORS[lo];
  const b = ANCHORS[lo + 1];
  return [
    Math.round(a[0] + w * (b[0] - a[0])),
    Math.round(a[1] + w * (b[1] - a[1])),
    Math.round(a[2] + w * (b[2] - a[2])),
  ];
}

export interface LogScale {
  floor: number;
  max: number;
  /** Map a raw value to a ramp fraction in [0, 1]. */
  fraction(value: number): number;
  color(value: number): Color;
}

export function makeLogScale(max: number): LogScale {
  if (!(max > 0)) {
    throw new Error(`log color scale needs a positive maximum, got ${max}`);
  }
  const floor = max * FLOOR_FRACTION;
  const span = Math.log(max) - Math.log(floor);
  const fraction = (value: number): number => {
    if (!(value > floor)) return 0;
    return (Math.log(value) - Math.log(floor)) / span;
  };
  return {
    floor,
    max,
    fraction,
    color: (value: number) => rampColor(fraction(value)),
  };
}
