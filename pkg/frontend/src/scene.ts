// Turns a posed mesh into a flat draw list: projected polygons, classed
// edges, vertex labels. Pure data in, pure data out; painting happens in
// render.ts. The projection is presentation only, every number being
// displayed (volumes, residuals, ranges) comes from the service untouched.

import type { FoldTag, MeshDoc, Vec3 } from "./types.js";
import type { Camera, Toggles } from "./state.js";

export type EdgeClass = "mountain" | "valley" | "flat" | "score-both";

export interface DrawFace {
  points: [number, number][];
  depth: number;
  fill: string;
  highlighted: boolean;
}

export interface DrawEdge {
  a: [number, number];
  b: [number, number];
  depth: number;
  cls: EdgeClass;
}

export interface DrawLabel {
  text: string;
  at: [number, number];
}

export interface DrawList {
  faces: DrawFace[];
  edges: DrawEdge[];
  labels: DrawLabel[];
}

export interface SceneOptions {
  width: number;
  height: number;
  camera: Camera;
  toggles: Toggles;
  highlightPairs: [number, number][];
  folds: Record<string, string>;
  changedEdges: string[];
  fitRadius?: number;
}

export function edgeKey(a: string, b: string): string {
  return a < b ? `${a}|${b}` : `${b}|${a}`;
}

type V3 = [number, number, number];

function sub(a: Vec3, b: V3): V3 {
  return [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
}

function viewTransform(p: Vec3, center: V3, cam: Camera): V3 {
  const [x0, y0, z0] = sub(p, center);
  const ca = Math.cos(cam.azimuth);
  const sa = Math.sin(cam.azimuth);
  const x1 = x0 * ca + y0 * sa;
  const y1 = -x0 * sa + y0 * ca;
  const ce = Math.cos(cam.elevation);
  const se = Math.sin(cam.elevation);
  // camera sits on the -y axis of the rotated frame; depth grows away from it
  const depth = y1 * ce + z0 * se;
  const up = -y1 * se + z0 * ce;
  return [x1, depth, up];
}

export function buildScene(
  mesh: MeshDoc,
  pose: Record<string, Vec3>,
  opts: SceneOptions,
): DrawList {
  const ids = mesh.vertices.map((v) => v.id);
  const pts = ids.map((id) => pose[id]).filter((p): p is Vec3 => p !== undefined);
  if (pts.length !== ids.length) return { faces: [], edges: [], labels: [] };

  const center: V3 = [0, 0, 0];
  for (const p of pts) {
    center[0] += p[0] / pts.length;
    center[1] += p[1] / pts.length;
    center[2] += p[2] / pts.length;
  }
  let radius = opts.fitRadius ?? 0;
  if (!radius) {
    for (const p of pts) {
      const d = sub(p, center);
      radius = Math.max(radius, Math.hypot(d[0], d[1], d[2]));
    }
  }
  if (radius <= 0) radius = 1;

  const cam = opts.camera;
  const scale = 0.42 * Math.min(opts.width, opts.height) / radius;
  const cx = opts.width / 2;
  const cy = opts.height / 2;

  const view = new Map<string, V3>();
  for (const id of ids) view.set(id, viewTransform(pose[id] as Vec3, center, cam));

  const project = (v: V3): [number, number] => {
    const f = cam.distance / (cam.distance + v[1] / radius);
    return [cx + v[0] * scale * f, cy - v[2] * scale * f];
  };

  const highlighted = new Set<number>();
  if (opts.toggles.highlightIntersections) {
    for (const [i, j] of opts.highlightPairs) {
      highlighted.add(i);
      highlighted.add(j);
    }
  }

  const faces: DrawFace[] = mesh.faces.map((face, idx) => {
    const vs = face.map((id) => view.get(id) as V3);
    const depth = (vs[0]![1] + vs[1]![1] + vs[2]![1]) / 3;
    const hi = highlighted.has(idx);
    return {
      points: vs.map(project) as [number, number][],
      depth,
      fill: opts.toggles.wireframe ? "none" : faceFill(vs as [V3, V3, V3], hi),
      highlighted: hi,
    };
  });
  faces.sort((p, q) => q.depth - p.depth); // far faces first

  const seen = new Set<string>();
  const edges: DrawEdge[] = [];
  for (const face of mesh.faces) {
    for (let k = 0; k < 3; k++) {
      const a = face[k] as string;
      const b = face[(k + 1) % 3] as string;
      const key = edgeKey(a, b);
      if (seen.has(key)) continue;
      seen.add(key);
      const va = view.get(a) as V3;
      const vb = view.get(b) as V3;
      edges.push({
        a: project(va),
        b: project(vb),
        depth: (va[1] + vb[1]) / 2,
        cls: edgeClass(key, opts),
      });
    }
  }
  edges.sort((p, q) => q.depth - p.depth);

  const labels: DrawLabel[] = ids.map((id) => {
    const v = view.get(id) as V3;
    const [x, y] = project(v);
    return { text: id, at: [x + 6, y - 6] };
  });

  return { faces, edges, labels };
}

function edgeClass(key: string, opts: SceneOptions): EdgeClass {
  if (!opts.toggles.foldColoring) return "flat";
  if (opts.changedEdges.includes(key)) return "score-both";
  const tag = opts.folds[key] as FoldTag | undefined;
  if (tag === "mountain" || tag === "valley") return tag;
  return "flat";
}

function faceFill(vs: [V3, V3, V3], highlighted: boolean): string {
  const u = sub3(vs[1], vs[0]);
  const w = sub3(vs[2], vs[0]);
  const n: V3 = [
    u[1] * w[2] - u[2] * w[1],
    u[2] * w[0] - u[0] * w[2],
    u[0] * w[1] - u[1] * w[0],
  ];
  const len = Math.hypot(n[0], n[1], n[2]) || 1;
  const light: V3 = [0.37, -0.76, 0.53];
  const t = Math.abs(n[0] * light[0] + n[1] * light[1] + n[2] * light[2]) / len;
  const lightness = Math.round(34 + 38 * t);
  return highlighted
    ? `hsla(6, 78%, ${Math.min(64, lightness + 14)}%, 0.92)`
    : `hsla(210, 42%, ${lightness}%, 0.88)`;
}

function sub3(a: V3, b: V3): V3 {
  return [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
}
