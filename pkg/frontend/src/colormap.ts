/**
 * Fixed 256-level color scale shared by every rendering so images stay
 * comparable across runs.  The scale interpolates linearly between anchor
 * colors; `nearestLevel` inverts a rendered pixel back to its level for
 * verification, exact up to the quantization of neighboring levels.
 */

const ANCHORS: [number, number, number][] = [
  [13, 8, 135],
  [126, 3, 168],
  [204, 71, 120],
  [248, 149, 64],
  [240, 249, 33],
];

export const LEVELS = 256;

function lerp(a: number, b: number, t: number): number {
  return a + (b - a) * t;
}

export const LUT: [number, number, number][] = (() => {
  const lut: [number, number, number][] = [];
  for (let i = 0; i < LEVELS; i++) {
    const pos = (i / (LEVELS - 1)) * (ANCHORS.length - 1);
    const seg = Math.min(Math.floor(pos), ANCHORS.length - 2);
    const t = pos - seg;
    const [r0, g0, b0] = ANCHORS[seg];
    const [r1, g1, b1] = ANCHORS[seg + 1];
    lut.push([
      Math.round(lerp(r0, r1, t)),
      Math.round(lerp(g0, g1, t)),
      Math.round(lerp(b0, b1, t)),
    ]);
  }
  return lut;
})();

export function valueToLevel(value: number, vmin: number, vmax: number): number {
  if (!(vmax > vmin)) {
    throw new Error("vmax must exceed vmin");
  }
  const t = (value - vmin) / (vmax - vmin);
  const clamped = Math.min(1, Math.max(0, t));
  return Math.round(clamped * (LEVELS - 1));
}

export function levelToValue(level: number, vmin: number, vmax: number): number {
  return vmin + (level / (LEVELS - 1)) * (vmax - vmin);
}

export function levelToRgb(level: number): [number, number, number] {
  return LUT[Math.min(LEVELS - 1, Math.max(0, level))];
}

export function nearestLevel(r: number, g: number, b: number): number {
  let best = 0;
  let bestDist = Infinity;
  for (let i = 0; i < LEVELS; i++) {
    const [lr, lg, lb] = LUT[i];
    const d = (lr - r) ** 2 + (lg - g) ** 2 + (lb - b) ** 2;
    if (d < bestDist) {
      bestDist = d;
      best = i;
    }
  }
  return best;
}

/** Default color ranges per sweep metric; flags can override. */
export const DEFAULT_RANGES: Record<string, [number, number]> = {
  rot_rmse_deg: [0, 2],
  trans_rmse_new_deg: [0, 120],
  trans_rmse_trad_deg: [0, 120],
  trans_diff_deg: [-5, 5],
  ratio3d: [0, 1.5],
  pri_mean: [0, 0.05],
  m3_mean: [0, 0.15],
};

export function rangeFor(metric: string, vmin?: number, vmax?: number): [number, number] {
  const base = DEFAULT_RANGES[metric] ?? [0, 1];
  return [vmin ?? base[0], vmax ?? base[1]];
}
