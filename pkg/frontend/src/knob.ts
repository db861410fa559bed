/*
 * Virtual detented knob.
 *
 * Mirrors the physical encoders: interaction is detent-granular, and one
 * gesture (button click, one wheel notch, one arrow-key press) emits exactly
 * one knob message. When the connection is down, gestures emit nothing and a
 * blocked callback fires so the UI can flash an indicator.
 */

import { buttonMessage, knobMessage, type ClientMessage } from "./protocol.js";

export interface KnobHooks {
  send: (msg: ClientMessage) => void;
  isConnected: () => boolean;
  onBlocked?: () => void;
}

export class KnobController {
  readonly id: number;
  private readonly hooks: KnobHooks;

  constructor(id: number, hooks: KnobHooks) {
    if (!Number.isInteger(id) || id < 1 || id > 4) {
      throw new Error(`knob id must be 1..4, got ${id}`);
    }
    this.id = id;
    this.hooks = hooks;
  }

  /** One detent clockwise (+1) or counter-clockwise (-1). */
  notch(dir: 1 | -1): ClientMessage | null {
    return this.emit(knobMessage(this.id, dir));
  }

  /** Encoder push button. */
  press(): ClientMessage | null {
    return this.emit(buttonMessage(this.id));
  }

  /** One wheel event is one notch; scrolling up turns clockwise. */
  wheel(deltaY: number): ClientMessage | null {
    if (deltaY === 0) return null;
    return this.notch(deltaY < 0 ? 1 : -1);
  }

  /** Arrow keys: right/up clockwise, left/down counter-clockwise. */
  key(key: string): ClientMessage | null {
    if (key === "ArrowRight" || key === "ArrowUp") return this.notch(1);
    if (key === "ArrowLeft" || key === "ArrowDown") return this.notch(-1);
    if (key === "Enter" || key === " ") return this.press();
    return null;
  }

  private emit(msg: ClientMessage): ClientMessage | null {
    if (!this.hooks.isConnected()) {
      this.hooks.onBlocked?.();
      return null;
    }
    this.hooks.send(msg);
    return msg;
  }
}
