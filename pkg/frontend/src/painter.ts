/* Canvas painter for scenes built by render.ts. */

import type { Scene } from "./render.js";

const SEGMENT_COLORS = ["#2b7de9", "#1fa774"];
const JAMMED_COLOR = "#c0392b";

export function paintScene(ctx: CanvasRenderingContext2D, scene: Scene): void {
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);

  // base axes
  ctx.lineWidth = 1;
  ctx.strokeStyle = "#999";
  ctx.font = "11px sans-serif";
  ctx.fillStyle = "#999";
  for (const [axis, label] of [
    [scene.axes.x, "x"],
    [scene.axes.y, "y"],
    [scene.axes.z, "z"],
  ] as const) {
    ctx.beginPath();
    ctx.moveTo(scene.axes.origin[0], scene.axes.origin[1]);
    ctx.lineTo(axis[0], axis[1]);
    ctx.stroke();
    ctx.fillText(label, axis[0] + 2, axis[1]);
  }

  // backbone, colored per segment, jam state overrides
  for (const [i, segment] of scene.segments.entries()) {
    ctx.beginPath();
    ctx.lineWidth = segment.jammed ? 7 : 5;
    ctx.lineCap = "round";
    ctx.strokeStyle = segment.jammed
      ? JAMMED_COLOR
      : SEGMENT_COLORS[i % SEGMENT_COLORS.length]!;
    ctx.setLineDash(segment.jammed ? [10, 4] : []);
    const [first, ...rest] = segment.points;
    if (!first) continue;
    ctx.moveTo(first[0], first[1]);
    for (const p of rest) ctx.lineTo(p[0], p[1]);
    ctx.stroke();
  }
  ctx.setLineDash([]);

  // tip marker
  ctx.beginPath();
  ctx.fillStyle = "#111";
  ctx.arc(scene.tip[0], scene.tip[1], 5, 0, 2 * Math.PI);
  ctx.fill();

  // readouts
  ctx.fillStyle = "#222";
  ctx.font = "13px monospace";
  scene.readouts.forEach((line, i) => ctx.fillText(line, 12, 20 + 16 * i));

  if (scene.warning) {
    ctx.fillStyle = JAMMED_COLOR;
    ctx.fillText(`! ${scene.warning}`, 12, 20 + 16 * scene.readouts.length);
  }
}
