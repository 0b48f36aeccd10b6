// Paints a draw list onto a 2D canvas. Stroke styles per edge class match
// the net export: solid for mountain, dashed for valley, dotted for edges
// whose fold sign changes along the flex.

import type { DrawList, EdgeClass } from "./scene.js";

const EDGE_STYLE: Record<EdgeClass, { dash: number[]; width: number; color: string }> = {
  mountain: { dash: [], width: 2.0, color: "#1c2a3a" },
  valley: { dash: [7, 5], width: 2.0, color: "#1c2a3a" },
  "score-both": { dash: [2, 4], width: 2.6, color: "#b33a0f" },
  flat: { dash: [], width: 1.1, color: "#5b6b7a" },
};

export function paint(
  ctx: CanvasRenderingContext2D,
  width: number,
  height: number,
  list: DrawList,
  labels: boolean,
): void {
  ctx.clearRect(0, 0, width, height);

  for (const face of list.faces) {
    ctx.beginPath();
    const [x0, y0] = face.points[0] ?? [0, 0];
    ctx.moveTo(x0, y0);
    for (const [x, y] of face.points.slice(1)) ctx.lineTo(x, y);
    ctx.closePath();
    if (face.fill !== "none") {
      ctx.fillStyle = face.fill;
      ctx.fill();
    }
    ctx.strokeStyle = face.highlighted ? "#8f1d00" : "rgba(20, 30, 42, 0.35)";
    ctx.lineWidth = face.highlighted ? 2.4 : 0.7;
    ctx.stroke();
  }

  for (const edge of list.edges) {
    const style = EDGE_STYLE[edge.cls];
    ctx.beginPath();
    ctx.setLineDash(style.dash);
    ctx.moveTo(edge.a[0], edge.a[1]);
    ctx.lineTo(edge.b[0], edge.b[1]);
    ctx.strokeStyle = style.color;
    ctx.lineWidth = style.width;
    ctx.stroke();
    ctx.setLineDash([]);
  }

  if (labels) {
    ctx.font = "12px system-ui, sans-serif";
    ctx.fillStyle = "#24303c";
    for (const label of list.labels) ctx.fillText(label.text, label.at[0], label.at[1]);
  }
}
