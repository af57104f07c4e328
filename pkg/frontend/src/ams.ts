/**
 * Approximate Median Significance over weighted signal/background counts,
 * plus the post-hoc decision-threshold sweep (models train on cross-entropy;
 * AMS is only applied to validation scores afterwards).
 */

export const DEFAULT_B_REG = 10;

export function amsScore(s: number, b: number, bReg: number = DEFAULT_B_REG): number {
  if (s < 0 || b < 0 || bReg <= 0) {
    throw new Error(`invalid AMS inputs: s=${s} b=${b} bReg=${bReg}`);
  }
  const radicand = 2 * ((s + b + bReg) * Math.log1p(s / (b + bReg)) - s);
  // radicand is >= 0 analytically; clamp the floating-point residue at s=0
  return Math.sqrt(Math.max(0, radicand));
}

export interface ThresholdResult {
  threshold: number;
  ams: number;
}

/**
 * Sweep every candidate threshold (each distinct score); events with
 * score >= threshold are predicted signal. Ties in AMS break toward the
 * higher threshold.
 */
export function selectThreshold(
  scores: number[],
  labels: boolean[],
  weights: number[],
  bReg: number = DEFAULT_B_REG,
): ThresholdResult {
  const n = scores.length;
  if (n === 0 || labels.length !== n || weights.length !== n) {
    throw new Error("scores, labels, and weights must be equal-length and non-empty");
  }
  if (!labels.includes(true) || !labels.includes(false)) {
    throw new Error("threshold selection needs both signal and background events");
  }
  const order = [...scores.keys()].sort((a, b) => scores[a] - scores[b]);

  // suffix sums: s(t) and b(t) for threshold at each sorted position
  let s = 0;
  let b = 0;
  for (let i = 0; i < n; i++) {
    if (labels[i]) s += weights[i];
    else b += weights[i];
  }
  let best: ThresholdResult = { threshold: scores[order[0]], ams: amsScore(s, b, bReg) };
  for (let k = 0; k < n; k++) {
    const i = order[k];
    if (labels[i]) s -= weights[i];
    else b -= weights[i];
    if (k + 1 < n && scores[order[k + 1]] === scores[i]) continue; // same candidate
    if (k + 1 === n) break; // nothing predicted signal; not a usable threshold
    const threshold = scores[order[k + 1]];
    const ams = amsScore(Math.max(0, s), Math.max(0, b), bReg);
    if (ams >= best.ams) {
      best = { threshold, ams };
    }
  }
  return best;
}
