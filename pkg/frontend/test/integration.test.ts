/**
 * Round-trip acceptance: a scripted gesture against the real engine over the
 * live session protocol.
 *
 * The test plays headless playground client: it uses the same pure modules
 * (clock sync, protocol decode, feed reducer) as the browser build, so the
 * render path it measures is the shipped one minus the canvas.
 */

import { ChildProcess, spawn } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { createServer } from "node:net";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { WebSocket } from "ws";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { VirtualClock } from "../src/clock.js";
import {
  FeedState,
  activeHighlights,
  applyRecord,
  initialFeedState,
} from "../src/feedModel.js";
import {
  ClientMessage,
  EngineRecord,
  VirtualGestureRecord,
  decodeFrames,
  encodeMessage,
} from "../src/protocol.js";

const TARGET = "feed.app";

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer();
    probe.listen(0, "127.0.0.1", () => {
      const address = probe.address();
      if (address === null || typeof address === "string") {
        reject(new Error("no port"));
        return;
      }
      probe.close(() => resolve(address.port));
    });
  });
}

// Tap delay at 1000 ms, one ramp step saturates it (the first gesture rides
// at zero by design, so the measured gesture is the second one). The same
// jumbo step saturates the prolong threshold for the suppression test.
const CONFIG = {
  intervention: {
    tap_strategy: "Delay",
    swipe_strategy: "None",
    T_tap_delay_max: 1000,
  },
  scheduler: { tap_delay_step: 1000, tap_threshold_step: 1000 },
  budget: { target_apps: [TARGET], daily_limit: 0 },
  screen: { width: 400, height: 800 },
};

let server: ChildProcess;
let port: number;

beforeAll(async () => {
  port = await freePort();
  const dir = mkdtempSync(join(tmpdir(), "playground-test-"));
  const configPath = join(dir, "config.json");
  writeFileSync(configPath, JSON.stringify(CONFIG));
  server = spawn(
    "python3",
    ["-m", "gestureproxy.cli", "serve", "--port", String(port), "--config", configPath],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  // Wait until the socket accepts connections.
  for (let attempt = 0; attempt < 50; attempt++) {
    try {
      await new Promise<void>((resolve, reject) => {
        const probe = new WebSocket(`ws://127.0.0.1:${port}`);
        probe.once("open", () => {
          probe.close();
          resolve();
        });
        probe.once("error", reject);
      });
      return;
    } catch {
      await sleep(100);
    }
  }
  throw new Error("engine did not come up");
}, 15_000);

afterAll(() => {
  server?.kill();
});

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

interface Capture {
  sent: ClientMessage[];
  received: EngineRecord[];
}

class HeadlessClient {
  readonly clock = new VirtualClock();
  readonly capture: Capture = { sent: [], received: [] };
  feed: FeedState = initialFeedState();
  private ws!: WebSocket;

  async connect(): Promise<void> {
    this.ws = new WebSocket(`ws://127.0.0.1:${port}`);
    await new Promise<void>((resolve, reject) => {
      this.ws.once("open", () => resolve());
      this.ws.once("error", reject);
    });
    this.ws.on("message", (data) => {
      for (const record of decodeFrames(String(data))) {
        this.capture.received.push(record);
        if (record.kind === "Welcome") {
          this.clock.sync(record.virtual_time);
        } else {
          this.feed = applyRecord(this.feed, record);
        }
      }
    });
    this.send({ kind: "Hello", client_time: Date.now() });
    await this.waitFor((r) => r.kind === "Welcome");
  }

  send(message: ClientMessage): void {
    this.capture.sent.push(message);
    this.ws.send(encodeMessage(message));
  }

  /** Wait until `n` records matching the predicate have arrived; returns
   * the nth (1-based). Scans from the start, so matching is race-free. */
  async waitForNth(
    predicate: (r: EngineRecord) => boolean,
    n = 1,
    timeoutMs = 5000,
  ): Promise<EngineRecord> {
    const t0 = Date.now();
    while (Date.now() - t0 < timeoutMs) {
      const matches = this.capture.received.filter(predicate);
      if (matches.length >= n) return matches[n - 1];
      await sleep(5);
    }
    throw new Error("timed out waiting for record");
  }

  waitFor(predicate: (r: EngineRecord) => boolean, timeoutMs = 5000): Promise<EngineRecord> {
    return this.waitForNth(predicate, 1, timeoutMs);
  }

  /** One scripted tap: Down, 80 ms press, Up. Returns the wall time of release. */
  async tap(x: number, y: number): Promise<number> {
    this.send({
      kind: "PointerBatch",
      samples: [{ pointer_id: 0, phase: "Down", x, y, t: this.clock.now() }],
    });
    await sleep(80);
    const release = performance.now();
    this.send({
      kind: "PointerBatch",
      samples: [{ pointer_id: 0, phase: "Up", x, y, t: this.clock.now() }],
    });
    return release;
  }

  close(): void {
    this.ws.close();
  }
}

describe("playground round-trip", () => {
  it(
    "renders a tap's effect 1000 +- 50 ms after release under tap delay 1000, with zero client-side rewriting",
    async () => {
      const client = new HeadlessClient();
      await client.connect();
      try {
        client.send({ kind: "AppSwitch", app_id: TARGET });
        await client.waitFor((r) => r.kind === "BudgetSummary");
        await sleep(60); // let the engine clock move past the app switch

        // Gesture 1 rides at ramp zero and saturates the delay for the next.
        await client.tap(60, 120);
        await client.waitForNth((r) => r.kind === "VirtualGesture", 1);

        const release = await client.tap(200, 400);
        const vg = (await client.waitForNth(
          (r) => r.kind === "VirtualGesture",
          2,
          8000,
        )) as VirtualGestureRecord;

        // Render instant: the first moment the highlight is active on the
        // client's own virtual clock (the render loop samples this state).
        let rendered = performance.now();
        while (activeHighlights(client.feed, client.clock.now()).length === 0) {
          await sleep(2);
          rendered = performance.now();
        }

        const lag = rendered - release;
        expect(lag).toBeGreaterThanOrEqual(950);
        expect(lag).toBeLessThanOrEqual(1050);

        // Engine-side the delay is exactly 1000 virtual ms.
        expect(vg.t - vg.completed_at).toBe(1000);

        // Protocol capture: zero client-side gesture rewriting.
        // (a) Outbound traffic contains only raw pointer samples and
        //     commands, never gesture records.
        for (const message of client.capture.sent) {
          expect(["Hello", "PointerBatch", "AppSwitch"]).toContain(message.kind);
        }
        // (b) The rendered highlight is exactly the engine's payload.
        const highlight = client.feed.highlights.at(-1)!;
        expect(highlight.x).toBe(vg.gesture.x);
        expect(highlight.y).toBe(vg.gesture.y);
        expect(highlight.at).toBe(vg.t);
        // (c) The raw input coordinates went out untouched.
        const batches = client.capture.sent.filter(
          (message) => message.kind === "PointerBatch",
        );
        const lastBatch = batches.at(-1)! as { samples: { x: number; y: number }[] };
        expect(lastBatch.samples[0].x).toBe(200);
        expect(lastBatch.samples[0].y).toBe(400);
      } finally {
        client.close();
      }
    },
    20_000,
  );

  it("reports suppressions without any feed change", async () => {
    const client = new HeadlessClient();
    await client.connect();
    try {
      client.send({
        kind: "ConfigUpdate",
        intervention: { tap_strategy: "Prolong", T_tap_threshold_max: 400 },
        budget: { target_apps: [TARGET], daily_limit: 0 },
      });
      client.send({ kind: "AppSwitch", app_id: TARGET });
      await client.waitFor((r) => r.kind === "BudgetSummary");
      await sleep(60);
      await client.tap(100, 100); // gesture 1: threshold ramps after it
      await client.tap(100, 100); // gesture 2: 80 ms press < ramped threshold
      await client.waitFor(
        (r) =>
          r.kind === "GestureLogged" &&
          (r.gesture_summary as { disposition?: string }).disposition === "Suppressed",
      );
      expect(client.feed.suppressedCount).toBeGreaterThan(0);
      expect(client.feed.scrollY).toBe(0);
    } finally {
      client.close();
    }
  }, 20_000);
});
