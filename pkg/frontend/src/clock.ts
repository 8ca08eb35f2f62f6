/**
 * Virtual-clock synchronization. The engine anchors virtual time 0 at the
 * Hello handshake; the client mirrors that by anchoring on the moment the
 * Welcome arrives. All outgoing pointer samples carry virtual milliseconds.
 */

export class VirtualClock {
  private originPerf: number | null = null;

  constructor(private readonly perfNow: () => number = () => performance.now()) {}

  /** Anchor the clock; `virtualTime` is the engine's clock at the handshake. */
  sync(virtualTime: number): void {
    this.originPerf = this.perfNow() - virtualTime;
  }

  get synced(): boolean {
    return this.originPerf !== null;
  }

  /** Current engine-virtual time in whole milliseconds (never negative). */
  now(): number {
    if (this.originPerf === null) {
      throw new Error("clock not synced: no Welcome yet");
    }
    return Math.max(0, Math.round(this.perfNow() - this.originPerf));
  }
}
