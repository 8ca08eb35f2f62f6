/**
 * Wire protocol for the live session stream: newline-framed JSON records in
 * both directions (one record per websocket message also accepted).
 *
 * The client never invents or rewrites gesture data; it forwards raw pointer
 * samples and renders exactly what the engine sends back.
 */

export type Phase = "Down" | "Move" | "Up" | "Cancel";

export interface PointerSample {
  pointer_id: number;
  phase: Phase;
  x: number;
  y: number;
  t: number;
}

export interface GesturePayload {
  type: "Tap" | "DoubleTap" | "LongPress" | "Swipe";
  x?: number;
  y?: number;
  t_down?: number;
  duration?: number;
  trajectory?: [number, number, number][];
  finger_count?: number;
  first?: GesturePayload;
  second?: GesturePayload;
}

export interface WelcomeRecord {
  kind: "Welcome";
  virtual_time: number;
  config: Record<string, unknown>;
}

export interface VirtualGestureRecord {
  kind: "VirtualGesture";
  t: number;
  completed_at: number;
  gesture: GesturePayload;
}

export interface BlockedRecord {
  kind: "Blocked";
  t: number;
  gesture: GesturePayload;
}

export interface SchedulerSnapshotRecord {
  kind: "SchedulerSnapshot";
  t: number;
  k_tap: number;
  k_swipe: number;
  k_threshold: number;
  k_decel: number;
  T_tap_delay: number;
  T_swipe_delay: number;
  T_tap_threshold: number;
  F: number;
}

export interface BudgetSummaryRecord {
  kind: "BudgetSummary";
  t: number;
  used_seconds: number;
  daily_limit: number;
  intervention_active: boolean;
  bypass_until: number | null;
  ignore_today: boolean;
  foreground_app: string | null;
  day: number;
}

export interface SessionEventRecord {
  kind:
    | "AppEnter"
    | "AppExit"
    | "ScreenOff"
    | "InterventionEncounter"
    | "Bypass"
    | "GestureLogged";
  t: number;
  app_id?: string;
  intervention?: string;
  option?: string;
  gesture_summary?: Record<string, unknown>;
}

export interface ErrorRecord {
  kind: "Error";
  message: string;
}

export type EngineRecord =
  | WelcomeRecord
  | VirtualGestureRecord
  | BlockedRecord
  | SchedulerSnapshotRecord
  | BudgetSummaryRecord
  | SessionEventRecord
  | ErrorRecord;

export type BypassOption = "OneMinute" | "FifteenMinutes" | "IgnoreToday";

export type ClientMessage =
  | { kind: "Hello"; client_time: number }
  | { kind: "PointerBatch"; samples: PointerSample[] }
  | { kind: "AppSwitch"; app_id: string }
  | { kind: "ScreenOff" }
  | { kind: "Bypass"; option: BypassOption }
  | { kind: "ConfigUpdate"; intervention?: Record<string, unknown>; budget?: Record<string, unknown> }
  | { kind: "Tick"; t: number };

/** Parse one websocket text frame into engine records (newline-framed). */
export function decodeFrames(text: string): EngineRecord[] {
  const records: EngineRecord[] = [];
  for (const line of text.split("\n")) {
    const trimmed = line.trim();
    if (!trimmed) continue;
    const obj = JSON.parse(trimmed) as Record<string, unknown>;
    if (typeof obj.kind !== "string") {
      throw new Error(`record without kind: ${trimmed}`);
    }
    records.push(obj as unknown as EngineRecord);
  }
  return records;
}

export function encodeMessage(message: ClientMessage): string {
  return JSON.stringify(message);
}

/** Completion time of a gesture payload, mirroring the engine's rule. */
export function completedAt(g: GesturePayload): number {
  if (g.type === "Swipe" && g.trajectory && g.trajectory.length > 0) {
    return g.trajectory[g.trajectory.length - 1][2];
  }
  if (g.type === "DoubleTap" && g.second) {
    return completedAt(g.second);
  }
  return (g.t_down ?? 0) + (g.duration ?? 0);
}
