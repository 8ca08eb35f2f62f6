/**
 * Pure view-state for the playground surfaces: the scrollable feed, the
 * tappable grid, and the blocking overlay.
 *
 * Thin-client property: the ONLY way this state changes is `applyRecord`
 * (engine output) and `tick` (time passing). Raw pointer input has no entry
 * point here, so every scroll and highlight on screen originates from an
 * engine-emitted virtual gesture.
 */

import {
  BudgetSummaryRecord,
  EngineRecord,
  GesturePayload,
  VirtualGestureRecord,
} from "./protocol.js";

export interface Highlight {
  x: number;
  y: number;
  at: number; // virtual ms at which the tap took effect
}

export interface ScrollStep {
  at: number; // virtual ms
  dy: number; // feed offset change (finger delta, sign preserved)
}

export interface FeedState {
  scrollY: number;
  pendingScroll: ScrollStep[];
  highlights: Highlight[];
  blocked: boolean;
  suppressedCount: number;
  dispatchedCount: number;
  lastBudget: BudgetSummaryRecord | null;
}

export function initialFeedState(): FeedState {
  return {
    scrollY: 0,
    pendingScroll: [],
    highlights: [],
    blocked: false,
    suppressedCount: 0,
    dispatchedCount: 0,
    lastBudget: null,
  };
}

function scrollSteps(record: VirtualGestureRecord): ScrollStep[] {
  const trajectory = record.gesture.trajectory ?? [];
  if (trajectory.length < 2) return [];
  const t0 = trajectory[0][2];
  const steps: ScrollStep[] = [];
  for (let i = 1; i < trajectory.length; i++) {
    steps.push({
      at: record.t + (trajectory[i][2] - t0),
      dy: trajectory[i][1] - trajectory[i - 1][1],
    });
  }
  return steps;
}

function tapPoint(g: GesturePayload): { x: number; y: number } | null {
  if (g.type === "Tap" || g.type === "LongPress") {
    return { x: g.x ?? 0, y: g.y ?? 0 };
  }
  if (g.type === "DoubleTap" && g.first) {
    return tapPoint(g.first);
  }
  return null;
}

/** Fold one engine record into the view state (pure). */
export function applyRecord(state: FeedState, record: EngineRecord): FeedState {
  switch (record.kind) {
    case "VirtualGesture": {
      const next = {
        ...state,
        dispatchedCount: state.dispatchedCount + 1,
      };
      const point = tapPoint(record.gesture);
      if (point !== null) {
        next.highlights = [...state.highlights.slice(-19), { ...point, at: record.t }];
        return next;
      }
      next.pendingScroll = [...state.pendingScroll, ...scrollSteps(record)];
      return next;
    }
    case "Blocked":
      return { ...state, blocked: true };
    case "Bypass":
      return { ...state, blocked: false };
    case "GestureLogged": {
      const summary = record.gesture_summary as { disposition?: string } | undefined;
      if (summary?.disposition === "Suppressed") {
        return { ...state, suppressedCount: state.suppressedCount + 1 };
      }
      return state;
    }
    case "BudgetSummary": {
      const next = { ...state, lastBudget: record };
      if (!record.intervention_active) {
        next.blocked = false;
      }
      return next;
    }
    default:
      return state;
  }
}

/** Advance animations: apply every scroll step due by `nowVirtual`. */
export function tick(state: FeedState, nowVirtual: number): FeedState {
  if (state.pendingScroll.length === 0) return state;
  let scrollY = state.scrollY;
  const remaining: ScrollStep[] = [];
  for (const step of state.pendingScroll) {
    if (step.at <= nowVirtual) {
      // Finger moving up (negative dy) advances the feed.
      scrollY = Math.max(0, scrollY - step.dy);
    } else {
      remaining.push(step);
    }
  }
  if (remaining.length === state.pendingScroll.length) return state;
  return { ...state, scrollY, pendingScroll: remaining };
}

/** Highlights younger than `fadeMs`, for rendering. */
export function activeHighlights(state: FeedState, nowVirtual: number, fadeMs = 900): Highlight[] {
  return state.highlights.filter((h) => h.at <= nowVirtual && nowVirtual - h.at < fadeMs);
}
