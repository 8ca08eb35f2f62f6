import { describe, expect, it } from "vitest";

import { completedAt, decodeFrames, encodeMessage } from "../src/protocol.js";

describe("decodeFrames", () => {
  it("splits newline-framed records", () => {
    const text = '{"kind":"Blocked","t":5,"gesture":{"type":"Tap"}}\n{"kind":"Error","message":"x"}\n';
    const records = decodeFrames(text);
    expect(records).toHaveLength(2);
    expect(records[0].kind).toBe("Blocked");
    expect(records[1].kind).toBe("Error");
  });

  it("accepts a single bare record", () => {
    const records = decodeFrames('{"kind":"ScreenOff","t":1}');
    expect(records).toHaveLength(1);
  });

  it("skips blank lines", () => {
    expect(decodeFrames("\n\n")).toHaveLength(0);
  });

  it("rejects records without a kind", () => {
    expect(() => decodeFrames('{"t":1}')).toThrow(/kind/);
  });
});

describe("encodeMessage", () => {
  it("round-trips through JSON", () => {
    const message = {
      kind: "PointerBatch" as const,
      samples: [{ pointer_id: 0, phase: "Down" as const, x: 1.5, y: 2, t: 10 }],
    };
    expect(JSON.parse(encodeMessage(message))).toEqual(message);
  });
});

describe("completedAt", () => {
  it("tap completes at t_down + duration", () => {
    expect(completedAt({ type: "Tap", t_down: 100, duration: 80 })).toBe(180);
  });

  it("swipe completes at the last trajectory point", () => {
    expect(
      completedAt({
        type: "Swipe",
        trajectory: [
          [0, 0, 0],
          [0, 300, 200],
        ],
        finger_count: 1,
      }),
    ).toBe(200);
  });

  it("double tap completes with the second tap", () => {
    expect(
      completedAt({
        type: "DoubleTap",
        first: { type: "Tap", t_down: 0, duration: 50 },
        second: { type: "Tap", t_down: 200, duration: 50 },
      }),
    ).toBe(250);
  });
});
