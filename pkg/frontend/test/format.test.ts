import { describe, expect, it } from "vitest";

import { fixed, radians, scientific } from "../src/format.js";

describe("readout formatting", () => {
  it("fixed rounds to the requested digits", () => {
    expect(fixed(4.826489407, 4)).toBe("4.8265");
    expect(fixed(-16.2079443, 2)).toBe("-16.21");
    expect(fixed(0)).toBe("0.0000");
  });

  it("scientific keeps residual magnitudes readable", () => {
    expect(scientific(3.2e-13)).toBe("3.20e-13");
    expect(scientific(0)).toBe("0");
  });

  it("radians appends the unit", () => {
    expect(radians(0.521882)).toBe("0.5219 rad");
  });

  it("missing values become dashes", () => {
    expect(fixed(null)).toBe("-");
    expect(scientific(undefined)).toBe("-");
    expect(radians(Number.NaN)).toBe("-");
  });
});
