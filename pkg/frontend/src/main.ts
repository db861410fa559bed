/*
 * Page wiring: WebSocket connection, knob widgets, pressure sliders, load
 * controls, and the canvas view. The endpoint comes from the ?ws= page
 * parameter (default ws://127.0.0.1:8731/ws).
 */

import { KnobController } from "./knob.js";
import { SessionModel } from "./model.js";
import { paintScene } from "./painter.js";
import {
  loadMessage,
  parseServerMessage,
  pressureMessage,
  resetMessage,
  type ClientMessage,
  type LoadPoint,
} from "./protocol.js";
import { buildScene, DEFAULT_CAMERA, type Camera, type Viewport } from "./render.js";

const KNOB_ROLES = [
  "segment 1 / x pair",
  "segment 1 / y pair",
  "segment 2 / x pair",
  "segment 2 / y pair",
];

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

function start(): void {
  const params = new URLSearchParams(window.location.search);
  const url = params.get("ws") ?? "ws://127.0.0.1:8731/ws";
  const model = new SessionModel();
  const camera: Camera = { ...DEFAULT_CAMERA };

  const canvas = byId<HTMLCanvasElement>("view");
  const ctx = canvas.getContext("2d");
  if (!ctx) throw new Error("canvas 2d context unavailable");
  const statusEl = byId<HTMLSpanElement>("status");
  const errorEl = byId<HTMLDivElement>("error");

  const viewport: Viewport = { width: canvas.width, height: canvas.height, scale: 1400 };

  const redraw = () => {
    statusEl.textContent = model.status + (model.connected ? "" : " (controls inactive)");
    statusEl.className = model.connected ? "ok" : "down";
    errorEl.textContent = model.lastError ?? "";
    if (model.latest) {
      paintScene(ctx, buildScene(model.latest, camera, viewport));
    }
    for (let i = 0; i < 4; i++) {
      byId<HTMLSpanElement>(`detents-${i + 1}`).textContent = String(
        model.knobDetents[i as 0 | 1 | 2 | 3],
      );
    }
  };

  const ws = new WebSocket(url);
  const send = (msg: ClientMessage) => ws.send(JSON.stringify(msg));
  ws.onopen = () => {
    model.setStatus("open");
    redraw();
  };
  ws.onclose = () => {
    model.setStatus("closed");
    redraw();
  };
  ws.onerror = () => {
    model.setStatus("closed");
    redraw();
  };
  ws.onmessage = (event: MessageEvent<string>) => {
    try {
      const msg = parseServerMessage(event.data);
      if (msg.type === "state") {
        const changed = model.apply(msg);
        if (!changed) return; // stale or duplicate: keep current render
      } else {
        model.apply(msg);
      }
    } catch (err) {
      model.lastError = `bad server message: ${String(err)}`;
    }
    redraw();
  };

  const flashBlocked = () => {
    errorEl.textContent = "not connected: gesture ignored";
    setTimeout(() => redraw(), 900);
  };

  const knobs: KnobController[] = [];
  for (let id = 1; id <= 4; id++) {
    const knob = new KnobController(id, {
      send: (msg) => {
        if (msg.type === "knob") model.noteKnobTurn(id, msg.dir);
        if (msg.type === "button") model.noteKnobReset(id);
        send(msg);
        redraw();
      },
      isConnected: () => model.connected,
      onBlocked: flashBlocked,
    });
    knobs.push(knob);
    byId<HTMLButtonElement>(`knob-${id}-ccw`).onclick = () => knob.notch(-1);
    byId<HTMLButtonElement>(`knob-${id}-cw`).onclick = () => knob.notch(1);
    byId<HTMLButtonElement>(`knob-${id}-btn`).onclick = () => knob.press();
    const pad = byId<HTMLDivElement>(`knob-${id}`);
    pad.title = `${KNOB_ROLES[id - 1]}: wheel or arrow keys`;
    pad.onwheel = (ev) => {
      ev.preventDefault();
      knob.wheel(ev.deltaY);
    };
    pad.tabIndex = 0;
    pad.onkeydown = (ev) => {
      if (knob.key(ev.key)) ev.preventDefault();
    };
  }

  for (const segment of [1, 2]) {
    const slider = byId<HTMLInputElement>(`pressure-${segment}`);
    const label = byId<HTMLSpanElement>(`pressure-${segment}-value`);
    slider.oninput = () => {
      label.textContent = `${slider.value} psi`;
    };
    slider.onchange = () => {
      if (!model.connected) return flashBlocked();
      send(pressureMessage(segment, Number(slider.value)));
    };
  }

  byId<HTMLButtonElement>("apply-load").onclick = () => {
    if (!model.connected) return flashBlocked();
    const point = byId<HTMLSelectElement>("load-point").value as LoadPoint;
    const newtons = Number(byId<HTMLInputElement>("load-newtons").value);
    send(loadMessage(point, newtons));
  };
  byId<HTMLButtonElement>("reset").onclick = () => {
    if (!model.connected) return flashBlocked();
    for (let id = 1; id <= 4; id++) model.noteKnobReset(id);
    send(resetMessage());
  };

  byId<HTMLInputElement>("yaw").oninput = (ev) => {
    camera.yawDeg = Number((ev.target as HTMLInputElement).value);
    redraw();
  };
  byId<HTMLInputElement>("pitch").oninput = (ev) => {
    camera.pitchDeg = Number((ev.target as HTMLInputElement).value);
    redraw();
  };

  redraw();
}

start();
