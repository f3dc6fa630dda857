import { describe, expect, it } from "vitest";

import { EarlyStopper } from "../src/earlyStopping.js";

describe("early stopping", () => {
  it("stops after exactly 16 epochs when dev scores strictly worsen under patience 15", () => {
    const stopper = new EarlyStopper(15);
    let epochs = 0;
    for (let score = 1.0; ; score -= 0.01) {
      epochs += 1;
      stopper.update(score);
      if (stopper.shouldStop) break;
    }
    expect(epochs).toBe(16);
    expect(stopper.bestEpoch).toBe(1);
    expect(stopper.bestScore).toBe(1.0);
  });

  it("resets its counter on every strict improvement", () => {
    const stopper = new EarlyStopper(2);
    expect(stopper.update(0.1)).toBe(true);
    expect(stopper.update(0.05)).toBe(false);
    expect(stopper.update(0.2)).toBe(true); // counter back to zero
    stopper.update(0.2); // a tie is not an improvement
    expect(stopper.shouldStop).toBe(false);
    stopper.update(0.19);
    expect(stopper.shouldStop).toBe(true);
    expect(stopper.bestEpoch).toBe(3);
    expect(stopper.epochsRun).toBe(5);
  });

  it("rejects a non-positive patience", () => {
    expect(() => new EarlyStopper(0)).toThrow(RangeError);
  });
});
