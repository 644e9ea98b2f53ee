import { describe, expect, it } from "vitest";

import { highlight } from "../src/highlight.js";
import { FIG9_ANSWER, FIG9_CONTEXT, recordedResponse } from "./fixtures.js";

describe("highlight", () => {
  it("splits the figure-9 context at (223, 278) into the exact answer", () => {
    const seg = highlight(FIG9_CONTEXT, { start: 223, end: 278 });
    expect(seg.valid).toBe(true);
    expect(seg.answer).toBe(FIG9_ANSWER);
    expect(seg.answer.length).toBe(55);
  });

  it("reassembles exactly on every recorded card", () => {
    for (const row of recordedResponse.answers) {
      const seg = highlight(row.context, row.offsets_in_context);
      expect(seg.before + seg.answer + seg.after).toBe(row.context);
      expect(seg.answer).toBe(row.answer);
    }
  });

  it("returns an empty middle segment for (0, 0)", () => {
    const seg = highlight("abc", { start: 0, end: 0 });
    expect(seg).toEqual({ before: "", answer: "", after: "abc", valid: true });
  });

  it("covers the whole context with empty flanks", () => {
    const seg = highlight("abc", { start: 0, end: 3 });
    expect(seg).toEqual({ before: "", answer: "abc", after: "", valid: true });
  });

  it.each([
    [{ start: -1, end: 2 }],
    [{ start: 2, end: 1 }],
    [{ start: 0, end: 99 }],
    [{ start: 1.5, end: 2 }],
  ])("flags unusable offsets %o without crashing", (offsets) => {
    const seg = highlight("short context", offsets);
    expect(seg.valid).toBe(false);
    expect(seg.before + seg.answer + seg.after).toBe("short context");
  });
});
