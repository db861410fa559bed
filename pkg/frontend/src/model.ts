/*
 * Client-side session mirror.
 *
 * Holds the newest state message and the connection status. The model never
 * computes kinematics: all geometry comes from the server's shape_m. State
 * messages are applied only when their seq is strictly newer than what is
 * already displayed, so out-of-order or duplicated deliveries can never roll
 * the rendering back.
 */

import type { ServerMessage, StateMessage } from "./protocol.js";

export type ConnectionStatus = "connecting" | "open" | "closed";

export class SessionModel {
  latest: StateMessage | null = null;
  status: ConnectionStatus = "connecting";
  lastError: string | null = null;
  /** count of discarded stale/duplicate state messages, for diagnostics */
  staleDropped = 0;
  /** client-side detent counters, one per knob (display only) */
  knobDetents: [number, number, number, number] = [0, 0, 0, 0];

  get connected(): boolean {
    return this.status === "open";
  }

  setStatus(status: ConnectionStatus): void {
    this.status = status;
  }

  /** Apply a server message; returns true when the displayed state changed. */
  apply(msg: ServerMessage): boolean {
    if (msg.type === "error") {
      this.lastError = msg.reason;
      return false;
    }
    if (this.latest !== null && msg.seq <= this.latest.seq) {
      this.staleDropped += 1;
      return false;
    }
    this.latest = msg;
    this.lastError = null;
    return true;
  }

  noteKnobTurn(id: number, dir: 1 | -1): void {
    this.knobDetents[(id - 1) as 0 | 1 | 2 | 3] += dir;
  }

  noteKnobReset(id: number): void {
    this.knobDetents[(id - 1) as 0 | 1 | 2 | 3] = 0;
  }
}
