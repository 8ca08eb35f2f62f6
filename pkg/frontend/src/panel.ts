/**
 * Intensity panel: the live readout of ramp state and budget, straight from
 * engine snapshots (no client-side math beyond formatting).
 */

import { BudgetSummaryRecord, SchedulerSnapshotRecord } from "./protocol.js";

export interface PanelState {
  snapshot: SchedulerSnapshotRecord | null;
  budget: BudgetSummaryRecord | null;
}

export function initialPanelState(): PanelState {
  return { snapshot: null, budget: null };
}

export function panelLines(state: PanelState): string[] {
  const lines: string[] = [];
  const snap = state.snapshot;
  if (snap === null) {
    lines.push("ramp: no data yet");
  } else {
    lines.push(`tap delay      ${snap.T_tap_delay} ms (step ${snap.k_tap})`);
    lines.push(`swipe delay    ${snap.T_swipe_delay} ms (step ${snap.k_swipe})`);
    lines.push(`tap threshold  ${snap.T_tap_threshold} ms (step ${snap.k_threshold})`);
    lines.push(`decel factor   ${snap.F.toFixed(4)} (step ${snap.k_decel})`);
  }
  const budget = state.budget;
  if (budget !== null) {
    const used = Math.round(budget.used_seconds);
    lines.push(`budget         ${used} / ${budget.daily_limit} s`);
    const status = budget.intervention_active
      ? "engaged"
      : budget.ignore_today
        ? "ignored for today"
        : budget.bypass_until !== null && budget.bypass_until > budget.t
          ? "bypassed"
          : "off";
    lines.push(`intervention   ${status}`);
  }
  return lines;
}
