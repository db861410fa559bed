/*
 * Scene construction for the arm view.
 *
 * Pure functions from a state message to a drawable scene: an orthographic
 * projection of the server-provided backbone polyline (the client does no
 * kinematics), split into per-segment runs styled by jam state, plus the
 * textual readouts. A thin canvas painter consumes the scene in painter.ts.
 */

import type { StateMessage } from "./protocol.js";

export interface Camera {
  /** rotation about the world z (up) axis, degrees */
  yawDeg: number;
  /** tilt toward the viewer, degrees */
  pitchDeg: number;
}

export const DEFAULT_CAMERA: Camera = { yawDeg: -35, pitchDeg: -60 };

export interface Viewport {
  width: number;
  height: number;
  /** pixels per meter */
  scale: number;
}

export type Point2 = [number, number];

export interface SegmentPolyline {
  points: Point2[];
  jammed: boolean;
}

export interface Scene {
  segments: SegmentPolyline[];
  tip: Point2;
  axes: { origin: Point2; x: Point2; y: Point2; z: Point2 };
  readouts: string[];
  warning: string | null;
}

/**
 * Orthographic projection: yaw about +z, pitch about the screen x axis,
 * then drop depth. World z maps up the screen (negative canvas v).
 */
export function projectPoint(
  p: readonly [number, number, number],
  cam: Camera,
  view: Viewport,
): Point2 {
  const yaw = (cam.yawDeg * Math.PI) / 180;
  const pitch = (cam.pitchDeg * Math.PI) / 180;
  const cy = Math.cos(yaw), sy = Math.sin(yaw);
  const cp = Math.cos(pitch), sp = Math.sin(pitch);
  const x1 = cy * p[0] - sy * p[1];
  const y1 = sy * p[0] + cy * p[1];
  const z1 = p[2];
  const u = x1;
  const v = cp * y1 - sp * z1;
  return [view.width / 2 + u * view.scale, view.height * 0.82 - v * view.scale];
}

/** Split the shared-joint backbone polyline into per-segment point runs. */
export function splitSegments(
  shape: readonly (readonly [number, number, number])[],
  segmentCount: number,
): [number, number, number][][] {
  if (segmentCount < 1 || (shape.length - 1) % segmentCount !== 0) {
    throw new Error(
      `cannot split ${shape.length} points into ${segmentCount} segments`,
    );
  }
  const per = (shape.length - 1) / segmentCount;
  const runs: [number, number, number][][] = [];
  for (let s = 0; s < segmentCount; s++) {
    runs.push(
      shape.slice(s * per, (s + 1) * per + 1).map((p) => [p[0], p[1], p[2]]),
    );
  }
  return runs;
}

/**
 * Sign of the dominant turning direction along a projected polyline:
 * the sum of cross products of consecutive tangents. Opposite-curvature
 * segments of an S shape give opposite signs.
 */
export function curvatureSign(points: readonly Point2[]): number {
  let total = 0;
  for (let i = 0; i + 2 < points.length; i++) {
    const a = points[i]!, b = points[i + 1]!, c = points[i + 2]!;
    const t1: Point2 = [b[0] - a[0], b[1] - a[1]];
    const t2: Point2 = [c[0] - b[0], c[1] - b[1]];
    total += t1[0] * t2[1] - t1[1] * t2[0];
  }
  return Math.sign(total);
}

const fmt = (v: number, digits = 2) => v.toFixed(digits);

export function buildScene(state: StateMessage, cam: Camera, view: Viewport): Scene {
  const runs = splitSegments(state.shape_m, state.bend_deg.length);
  const segments: SegmentPolyline[] = runs.map((run, i) => ({
    points: run.map((p) => projectPoint(p, cam, view)),
    jammed: state.jammed[i] ?? false,
  }));
  const tip = projectPoint(state.tip_m, cam, view);
  const axisLen = 0.05;
  const origin: [number, number, number] = [0, 0, 0];
  const readouts = [
    `seq ${state.seq}`,
    `tip [m]: ${state.tip_m.map((v) => fmt(v, 3)).join(", ")}`,
    ...state.bend_deg.map(
      (b, i) =>
        `segment ${i + 1}: bend (${fmt(b[0])}, ${fmt(b[1])}) deg, ` +
        `${fmt(state.pressures_psi[i] ?? 0, 1)} psi` +
        (state.jammed[i] ? " [JAMMED]" : ""),
    ),
    state.capacity_N === null
      ? "no load applied"
      : `capacity ${fmt(state.capacity_N)} N, deflection ` +
        `${state.deflection_m === null ? "-" : fmt(state.deflection_m * 1000, 1)} mm`,
  ];
  return {
    segments,
    tip,
    axes: {
      origin: projectPoint(origin, cam, view),
      x: projectPoint([axisLen, 0, 0], cam, view),
      y: projectPoint([0, axisLen, 0], cam, view),
      z: projectPoint([0, 0, axisLen], cam, view),
    },
    readouts,
    warning: state.warning ?? null,
  };
}
