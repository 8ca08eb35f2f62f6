/**
 * Raw input capture: DOM pointer events become engine PointerSamples,
 * untouched. A mouse drag is one finger; holding Alt emulates a second
 * finger and Alt+Shift a third (desktop browsers cannot promise real
 * multitouch), each riding at a fixed x offset so the gesture stays
 * parallel.
 */

import { PointerSample } from "./protocol.js";

export const FINGER_OFFSET_DP = 24;

export interface PointerEventLike {
  x: number;
  y: number;
  altKey: boolean;
  shiftKey: boolean;
}

export class PointerCapture {
  private downActive = false;

  constructor(private readonly emit: (samples: PointerSample[]) => void) {}

  private fingerCount(ev: PointerEventLike): number {
    if (ev.altKey && ev.shiftKey) return 3;
    if (ev.altKey) return 2;
    return 1;
  }

  private fanOut(ev: PointerEventLike, phase: "Down" | "Move" | "Up", t: number, fingers: number): PointerSample[] {
    const samples: PointerSample[] = [];
    for (let f = 0; f < fingers; f++) {
      samples.push({
        pointer_id: f,
        phase,
        x: ev.x + f * FINGER_OFFSET_DP,
        y: ev.y,
        t,
      });
    }
    return samples;
  }

  private activeFingers = 1;

  down(ev: PointerEventLike, t: number): void {
    if (this.downActive) return;
    this.downActive = true;
    this.activeFingers = this.fingerCount(ev);
    this.emit(this.fanOut(ev, "Down", t, this.activeFingers));
  }

  move(ev: PointerEventLike, t: number): void {
    if (!this.downActive) return;
    this.emit(this.fanOut(ev, "Move", t, this.activeFingers));
  }

  up(ev: PointerEventLike, t: number): void {
    if (!this.downActive) return;
    this.downActive = false;
    this.emit(this.fanOut(ev, "Up", t, this.activeFingers));
  }

  get isDown(): boolean {
    return this.downActive;
  }
}
