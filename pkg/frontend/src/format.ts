/**
 * Model confidence as a percentage, rounded half-up to two decimals:
 * 0.967710733 renders as "96.77%".
 */
export function confidencePercent(score: number): string {
  const rounded = Math.round(score * 10000) / 100;
  return rounded.toFixed(2) + "%";
}
