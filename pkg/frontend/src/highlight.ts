import { Highlight, Offsets } from "./types.js";

/**
 * Split a context into (before, answer, after) at the given offsets.
 *
 * Reassembly law: before + answer + after === context, always. Out-of-range
 * or reversed offsets yield an un-highlighted segmentation flagged invalid
 * (the card renders with a data-integrity badge instead of crashing).
 */
export function highlight(context: string, offsets: Offsets): Highlight {
  const { start, end } = offsets;
  const usable =
    Number.isInteger(start) &&
    Number.isInteger(end) &&
    start >= 0 &&
    start <= end &&
    end <= context.length;
  if (!usable) {
    return { before: context, answer: "", after: "", valid: false };
  }
  return {
    before: context.slice(0, start),
    answer: context.slice(start, end),
    after: context.slice(end),
    valid: true,
  };
}
