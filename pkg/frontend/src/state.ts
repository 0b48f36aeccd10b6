// Session state: current params, what the service last said about them, and
// the display settings. Pure helpers only; the controller owns mutation.

import type {
  BuildDiagnostics,
  FlexResponse,
  MeshDoc,
  ParamsDoc,
  TrajectorySample,
  Vec3,
} from "./types.js";
import type { PresetName } from "./presets.js";

export interface Toggles {
  wireframe: boolean;
  highlightIntersections: boolean;
  foldColoring: boolean;
}

export interface Camera {
  azimuth: number;
  elevation: number;
  distance: number;
}

export interface SessionState {
  params: ParamsDoc;
  preset: PresetName | "custom";
  mesh: MeshDoc | null;
  diagnostics: BuildDiagnostics | null;
  buildKey: string | null;
  trajectory: FlexResponse | null;
  trajectoryKey: string | null;
  scrubIndex: number;
  pose: Record<string, Vec3> | null;
  highlightPairs: [number, number][];
  sampleVolume: number | null;
  sampleResidual: number | null;
  sampleIntersections: number | null;
  folds: Record<string, string>;
  changedEdges: string[];
  toggles: Toggles;
  camera: Camera;
  errorBadge: string | null;
  banner: string | null;
  busy: { build: boolean; flex: boolean; net: boolean };
}

export function initialState(params: ParamsDoc): SessionState {
  return {
    params,
    preset: "default",
    mesh: null,
    diagnostics: null,
    buildKey: null,
    trajectory: null,
    trajectoryKey: null,
    scrubIndex: 0,
    pose: null,
    highlightPairs: [],
    sampleVolume: null,
    sampleResidual: null,
    sampleIntersections: null,
    folds: {},
    changedEdges: [],
    toggles: { wireframe: false, highlightIntersections: true, foldColoring: true },
    camera: { azimuth: 0.7, elevation: 0.35, distance: 40 },
    errorBadge: null,
    banner: null,
    busy: { build: false, flex: false, net: false },
  };
}

export function paramsKey(p: ParamsDoc): string {
  return JSON.stringify([p.l, p.h, p.base_shape]);
}

// the trajectory on screen belongs to an earlier parameter set
export function trajectoryStale(s: SessionState): boolean {
  return s.trajectory !== null && s.trajectoryKey !== paramsKey(s.params);
}

// the reference mesh on screen belongs to an earlier parameter set
export function buildStale(s: SessionState): boolean {
  return s.mesh !== null && s.buildKey !== paramsKey(s.params);
}

// edges whose fold sign flips somewhere along the trajectory: these get the
// score-both marker in the 3D view, mirroring the net export
export function foldChangedEdges(samples: TrajectorySample[]): string[] {
  const seen = new Map<string, Set<string>>();
  for (const smp of samples) {
    for (const [edge, tag] of Object.entries(smp.folds)) {
      if (tag === "flat") continue;
      let tags = seen.get(edge);
      if (!tags) seen.set(edge, (tags = new Set()));
      tags.add(tag);
    }
  }
  return [...seen.entries()]
    .filter(([, tags]) => tags.size > 1)
    .map(([edge]) => edge)
    .sort();
}

export function meshPose(mesh: MeshDoc): Record<string, Vec3> {
  const pose: Record<string, Vec3> = {};
  for (const v of mesh.vertices) pose[v.id] = v.xyz;
  return pose;
}

export function clampIndex(i: number, n: number): number {
  if (n <= 0) return 0;
  return Math.min(n - 1, Math.max(0, Math.round(i)));
}
