/*
 * Wire-protocol messages exchanged with the simulator's /ws endpoint.
 *
 * Client -> server messages are built through the helpers below, which are
 * the only way the UI constructs them; validateClientMessage() is the
 * machine-checkable schema used by both the builders (in dev) and the tests.
 * Server -> client messages are parsed defensively: a malformed state
 * message must never reach the renderer.
 */

export type LoadPoint = "tip" | "connector";

export interface KnobMessage {
  type: "knob";
  id: number;
  dir: 1 | -1;
}
export interface ButtonMessage {
  type: "button";
  id: number;
}
export interface PressureMessage {
  type: "pressure";
  segment: number;
  psi: number;
}
export interface LoadMessage {
  type: "load";
  point: LoadPoint;
  newtons: number;
}
export interface ResetMessage {
  type: "reset";
}
export type ClientMessage =
  | KnobMessage
  | ButtonMessage
  | PressureMessage
  | LoadMessage
  | ResetMessage;

export interface StateMessage {
  type: "state";
  seq: number;
  motors_deg: number[];
  tendons_m: { x1o: number; y1o: number; x2o: number; y2o: number };
  bend_deg: [number, number][];
  tip_m: [number, number, number];
  shape_m: [number, number, number][];
  pressures_psi: number[];
  jammed: boolean[];
  capacity_N: number | null;
  deflection_m: number | null;
  warning?: string | null;
}
export interface ServerError {
  type: "error";
  reason: string;
}
export type ServerMessage = StateMessage | ServerError;

export function knobMessage(id: number, dir: 1 | -1): KnobMessage {
  return assertValid({ type: "knob", id, dir });
}
export function buttonMessage(id: number): ButtonMessage {
  return assertValid({ type: "button", id });
}
export function pressureMessage(segment: number, psi: number): PressureMessage {
  return assertValid({ type: "pressure", segment, psi });
}
export function loadMessage(point: LoadPoint, newtons: number): LoadMessage {
  return assertValid({ type: "load", point, newtons });
}
export function resetMessage(): ResetMessage {
  return assertValid({ type: "reset" });
}

function assertValid<T extends ClientMessage>(msg: T): T {
  const problems = validateClientMessage(msg);
  if (problems.length > 0) {
    throw new Error(`invalid client message: ${problems.join("; ")}`);
  }
  return msg;
}

const isKnobId = (v: unknown): v is number =>
  typeof v === "number" && Number.isInteger(v) && v >= 1 && v <= 4;
const isFiniteNumber = (v: unknown): v is number =>
  typeof v === "number" && Number.isFinite(v);

/** Machine-checkable client-message schema; returns [] when valid. */
export function validateClientMessage(msg: unknown): string[] {
  if (typeof msg !== "object" || msg === null || Array.isArray(msg)) {
    return ["message must be an object"];
  }
  const m = msg as Record<string, unknown>;
  const problems: string[] = [];
  const expectKeys = (keys: string[]) => {
    for (const key of Object.keys(m)) {
      if (!keys.includes(key)) problems.push(`unexpected key ${key}`);
    }
  };
  switch (m.type) {
    case "knob":
      expectKeys(["type", "id", "dir"]);
      if (!isKnobId(m.id)) problems.push("id must be an integer 1..4");
      if (m.dir !== 1 && m.dir !== -1) problems.push("dir must be +1 or -1");
      break;
    case "button":
      expectKeys(["type", "id"]);
      if (!isKnobId(m.id)) problems.push("id must be an integer 1..4");
      break;
    case "pressure":
      expectKeys(["type", "segment", "psi"]);
      if (!Number.isInteger(m.segment) || (m.segment as number) < 1) {
        problems.push("segment must be a positive integer");
      }
      if (!isFiniteNumber(m.psi) || m.psi < 0) problems.push("psi must be >= 0");
      break;
    case "load":
      expectKeys(["type", "point", "newtons"]);
      if (m.point !== "tip" && m.point !== "connector") {
        problems.push("point must be tip or connector");
      }
      if (!isFiniteNumber(m.newtons) || m.newtons < 0) {
        problems.push("newtons must be >= 0");
      }
      break;
    case "reset":
      expectKeys(["type"]);
      break;
    default:
      problems.push(`unknown type ${String(m.type)}`);
  }
  return problems;
}

/** Parse a server message, throwing on anything schema-invalid. */
export function parseServerMessage(data: unknown): ServerMessage {
  const obj = typeof data === "string" ? JSON.parse(data) : data;
  if (typeof obj !== "object" || obj === null) {
    throw new Error("server message must be an object");
  }
  const m = obj as Record<string, unknown>;
  if (m.type === "error") {
    if (typeof m.reason !== "string") throw new Error("error message needs a reason");
    return { type: "error", reason: m.reason };
  }
  if (m.type !== "state") throw new Error(`unknown server message type ${String(m.type)}`);
  if (!Number.isInteger(m.seq) || (m.seq as number) < 0) throw new Error("bad seq");
  const numberArray = (v: unknown, name: string): number[] => {
    if (!Array.isArray(v) || !v.every(isFiniteNumber)) {
      throw new Error(`${name} must be an array of numbers`);
    }
    return v as number[];
  };
  const vec3 = (v: unknown, name: string): [number, number, number] => {
    const arr = numberArray(v, name);
    if (arr.length !== 3) throw new Error(`${name} must have 3 components`);
    return arr as [number, number, number];
  };
  const tendons = m.tendons_m as Record<string, unknown>;
  if (
    typeof tendons !== "object" ||
    tendons === null ||
    !["x1o", "y1o", "x2o", "y2o"].every((k) => isFiniteNumber(tendons[k]))
  ) {
    throw new Error("tendons_m must carry x1o/y1o/x2o/y2o numbers");
  }
  if (!Array.isArray(m.bend_deg) || m.bend_deg.length === 0) {
    throw new Error("bend_deg must be a non-empty array");
  }
  const bend = m.bend_deg.map((pair, i) => {
    const arr = numberArray(pair, `bend_deg[${i}]`);
    if (arr.length !== 2) throw new Error(`bend_deg[${i}] must have 2 angles`);
    return arr as [number, number];
  });
  if (!Array.isArray(m.shape_m) || m.shape_m.length < 2) {
    throw new Error("shape_m must carry at least 2 points");
  }
  const shape = m.shape_m.map((p, i) => vec3(p, `shape_m[${i}]`));
  if (!Array.isArray(m.jammed) || !m.jammed.every((v) => typeof v === "boolean")) {
    throw new Error("jammed must be an array of booleans");
  }
  const nullableNumber = (v: unknown, name: string): number | null => {
    if (v === null || v === undefined) return null;
    if (!isFiniteNumber(v)) throw new Error(`${name} must be a number or null`);
    return v;
  };
  return {
    type: "state",
    seq: m.seq as number,
    motors_deg: numberArray(m.motors_deg, "motors_deg"),
    tendons_m: {
      x1o: tendons.x1o as number,
      y1o: tendons.y1o as number,
      x2o: tendons.x2o as number,
      y2o: tendons.y2o as number,
    },
    bend_deg: bend,
    tip_m: vec3(m.tip_m, "tip_m"),
    shape_m: shape,
    pressures_psi: numberArray(m.pressures_psi, "pressures_psi"),
    jammed: m.jammed as boolean[],
    capacity_N: nullableNumber(m.capacity_N, "capacity_N"),
    deflection_m: nullableNumber(m.deflection_m, "deflection_m"),
    warning: typeof m.warning === "string" ? m.warning : null,
  };
}
