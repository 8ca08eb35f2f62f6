/**
 * Playground wiring: connect to the engine, forward raw pointer input,
 * render exactly what comes back.
 *
 * The canvas is a simulated 400x800 dp phone screen showing a scrollable
 * feed and a tappable grid; tabs switch between a target app, a non-target
 * app, and screen-off. The right-hand panel shows the live ramp state and
 * the bypass menu. Under lockout, the engine paints the blocking screen and
 * routes taps on its menu regions; this client only draws where those
 * regions are.
 */

import { VirtualClock } from "./clock.js";
import {
  FeedState,
  activeHighlights,
  applyRecord,
  initialFeedState,
  tick,
} from "./feedModel.js";
import { PanelState, initialPanelState, panelLines } from "./panel.js";
import { PointerCapture } from "./pointers.js";
import {
  BypassOption,
  ClientMessage,
  EngineRecord,
  decodeFrames,
  encodeMessage,
} from "./protocol.js";

const SCREEN_W = 400;
const SCREEN_H = 800;
const TARGET_APP = "feed.app";
const OTHER_APP = "notes.app";

// Mirrors the engine's default lockout menu layout (three stacked buttons).
const MENU_ROWS: [BypassOption, number][] = [
  ["OneMinute", 0.4],
  ["FifteenMinutes", 0.52],
  ["IgnoreToday", 0.64],
];

const canvas = document.getElementById("screen") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const panelEl = document.getElementById("panel") as HTMLPreElement;
const logEl = document.getElementById("eventlog") as HTMLPreElement;
const bannerEl = document.getElementById("banner") as HTMLDivElement;

const clock = new VirtualClock();
let feed: FeedState = initialFeedState();
let panel: PanelState = initialPanelState();
let currentApp: string | null = null;
let connected = false;
let lockoutMode = false;
const eventLines: string[] = [];

const wsUrl = `ws://${location.hostname || "127.0.0.1"}:${location.port || "8765"}`;
const ws = new WebSocket(wsUrl);

function send(message: ClientMessage): void {
  if (connected) ws.send(encodeMessage(message));
}

ws.onopen = () => {
  connected = true;
  ws.send(encodeMessage({ kind: "Hello", client_time: performance.now() }));
};

ws.onclose = () => {
  connected = false;
  bannerEl.textContent = "disconnected: restart `gestureproxy serve` and reload";
  bannerEl.style.display = "block";
};

ws.onmessage = (ev: MessageEvent<string>) => {
  for (const record of decodeFrames(ev.data)) {
    handleRecord(record);
  }
};

function logLine(text: string): void {
  eventLines.push(text);
  if (eventLines.length > 14) eventLines.shift();
  logEl.textContent = eventLines.join("\n");
}

function handleRecord(record: EngineRecord): void {
  if (record.kind === "Welcome") {
    clock.sync(record.virtual_time);
    const intervention = record.config.intervention as { lockout_enabled?: boolean } | undefined;
    lockoutMode = Boolean(intervention?.lockout_enabled);
    logLine("connected; virtual clock synced");
    send({ kind: "AppSwitch", app_id: TARGET_APP });
    currentApp = TARGET_APP;
    return;
  }
  if (record.kind === "Error") {
    logLine(`engine error: ${record.message}`);
    return;
  }
  feed = applyRecord(feed, record);
  if (record.kind === "SchedulerSnapshot") {
    panel = { ...panel, snapshot: record };
  } else if (record.kind === "BudgetSummary") {
    panel = { ...panel, budget: record };
  } else if (record.kind === "InterventionEncounter") {
    logLine(`encounter in ${record.app_id} (${record.intervention})`);
  } else if (record.kind === "Bypass") {
    logLine(`bypass applied: ${record.option}`);
  } else if (record.kind === "Blocked") {
    logLine("blocked by lockout screen");
  } else if (record.kind === "VirtualGesture") {
    logLine(`virtual ${record.gesture.type} at t=${record.t}`);
  } else if (record.kind === "GestureLogged") {
    const summary = record.gesture_summary as { type?: string; disposition?: string };
    if (summary.disposition === "Suppressed") {
      logLine(`${summary.type} suppressed`);
    }
  }
}

// ---------------------------------------------------------------- input

const capture = new PointerCapture((samples) => {
  send({ kind: "PointerBatch", samples });
});

function canvasPoint(ev: MouseEvent): { x: number; y: number; altKey: boolean; shiftKey: boolean } {
  const rect = canvas.getBoundingClientRect();
  return {
    x: ((ev.clientX - rect.left) / rect.width) * SCREEN_W,
    y: ((ev.clientY - rect.top) / rect.height) * SCREEN_H,
    altKey: ev.altKey,
    shiftKey: ev.shiftKey,
  };
}

canvas.addEventListener("mousedown", (ev) => {
  if (!clock.synced || currentApp === null) return;
  capture.down(canvasPoint(ev), clock.now());
});
canvas.addEventListener("mousemove", (ev) => {
  if (!clock.synced || !capture.isDown) return;
  capture.move(canvasPoint(ev), clock.now());
});
window.addEventListener("mouseup", (ev) => {
  if (!clock.synced || !capture.isDown) return;
  capture.up(canvasPoint(ev as MouseEvent), clock.now());
});

// ---------------------------------------------------------------- controls

function bindTab(id: string, app: string | null): void {
  document.getElementById(id)!.addEventListener("click", () => {
    if (app === null) {
      send({ kind: "ScreenOff" });
      currentApp = null;
    } else {
      send({ kind: "AppSwitch", app_id: app });
      currentApp = app;
    }
  });
}
bindTab("tab-feed", TARGET_APP);
bindTab("tab-notes", OTHER_APP);
bindTab("tab-off", null);

for (const option of ["OneMinute", "FifteenMinutes", "IgnoreToday"] as BypassOption[]) {
  document.getElementById(`bypass-${option}`)!.addEventListener("click", () => {
    // Drawer-style bypass: always reachable while gestures are manipulated.
    // Under lockout only the blocking screen's own menu applies.
    if (!lockoutMode) send({ kind: "Bypass", option });
  });
}

document.getElementById("apply-config")!.addEventListener("click", () => {
  const tap = (document.getElementById("tap-strategy") as HTMLSelectElement).value;
  const swipe = (document.getElementById("swipe-strategy") as HTMLSelectElement).value;
  const level = (document.getElementById("level") as HTMLSelectElement).value;
  const lockout = (document.getElementById("lockout") as HTMLInputElement).checked;
  const budget = Number((document.getElementById("budget") as HTMLInputElement).value);
  const levelTwo = level === "2";
  lockoutMode = lockout;
  send({
    kind: "ConfigUpdate",
    intervention: {
      tap_strategy: tap,
      swipe_strategy: swipe,
      T_tap_delay_max: levelTwo ? 1000 : 500,
      T_tap_threshold_max: levelTwo ? 200 : 100,
      shift_vector: [0, levelTwo ? 200 : 100],
      T_swipe_delay_max: levelTwo ? 800 : 300,
      F_swipe_decelerate_min: levelTwo ? 0.25 : 0.5,
      finger_threshold_N: levelTwo ? 3 : 2,
      lockout_enabled: lockout,
    },
    budget: { target_apps: [TARGET_APP], daily_limit: budget },
  });
  logLine(`config update sent (level ${level}${lockout ? ", lockout" : ""})`);
});

// ---------------------------------------------------------------- render

function drawFeed(now: number): void {
  ctx.fillStyle = "#fdfdfd";
  ctx.fillRect(0, 0, SCREEN_W, SCREEN_H);
  // Feed rows scroll with the engine-driven offset.
  const rowH = 120;
  const first = Math.floor(feed.scrollY / rowH);
  for (let i = first; i < first + 8; i++) {
    const y = i * rowH - feed.scrollY;
    ctx.fillStyle = i % 2 === 0 ? "#eaf2f8" : "#fef9e7";
    ctx.fillRect(10, y + 6, SCREEN_W - 20, rowH - 12);
    ctx.fillStyle = "#555";
    ctx.font = "14px sans-serif";
    ctx.fillText(`feed item #${i}`, 24, y + 34);
  }
  // Tappable grid cells along the top band.
  ctx.strokeStyle = "#bbb";
  for (let gx = 0; gx < 4; gx++) {
    ctx.strokeRect(10 + gx * 95, 10, 90, 48);
    ctx.fillStyle = "#888";
    ctx.fillText(`cell ${gx}`, 30 + gx * 95, 38);
  }
  // Engine-confirmed tap effects.
  for (const h of activeHighlights(feed, now)) {
    ctx.beginPath();
    ctx.arc(h.x, h.y, 14, 0, Math.PI * 2);
    ctx.fillStyle = "rgba(192, 57, 43, 0.55)";
    ctx.fill();
  }
  if (feed.suppressedCount > 0) {
    ctx.fillStyle = "#999";
    ctx.fillText(`${feed.suppressedCount} gesture(s) suppressed`, 14, SCREEN_H - 14);
  }
}

function drawBlockedOverlay(): void {
  ctx.fillStyle = "rgba(20, 20, 30, 0.82)";
  ctx.fillRect(0, 0, SCREEN_W, SCREEN_H);
  ctx.fillStyle = "#fff";
  ctx.font = "18px sans-serif";
  ctx.fillText("Time's up for today", 110, SCREEN_H * 0.3);
  ctx.font = "13px sans-serif";
  ctx.fillText("Tap a button to bypass the limit:", 100, SCREEN_H * 0.35);
  const labels: Record<BypassOption, string> = {
    OneMinute: "One more minute",
    FifteenMinutes: "15 more minutes",
    IgnoreToday: "Ignore limit for today",
  };
  for (const [option, frac] of MENU_ROWS) {
    const y0 = SCREEN_H * frac;
    ctx.fillStyle = "#2e86c1";
    ctx.fillRect(SCREEN_W * 0.1, y0, SCREEN_W * 0.8, SCREEN_H * 0.08);
    ctx.fillStyle = "#fff";
    ctx.fillText(labels[option], SCREEN_W * 0.22, y0 + SCREEN_H * 0.05);
  }
}

function render(): void {
  if (clock.synced) {
    const now = clock.now();
    feed = tick(feed, now);
    if (currentApp === TARGET_APP) {
      drawFeed(now);
      if (feed.blocked) drawBlockedOverlay();
    } else if (currentApp === OTHER_APP) {
      ctx.fillStyle = "#d5dbdb";
      ctx.fillRect(0, 0, SCREEN_W, SCREEN_H);
      ctx.fillStyle = "#333";
      ctx.font = "16px sans-serif";
      ctx.fillText("notes.app (not a target; no intervention)", 40, 120);
    } else {
      ctx.fillStyle = "#000";
      ctx.fillRect(0, 0, SCREEN_W, SCREEN_H);
    }
    panelEl.textContent = panelLines(panel).join("\n");
  }
  requestAnimationFrame(render);
}

requestAnimationFrame(render);
