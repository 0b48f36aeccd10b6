// Document shapes exchanged with the service, format "polyflex/1".
// The viewer never derives geometry itself: everything rendered or read out
// comes from one of these payloads.

export type Vec3 = [number, number, number];

export interface ParamsDoc {
  format: string;
  l: [number, number, number, number, number];
  h: [number, number, number];
  base_shape: number;
}

export interface MeshDoc {
  format: string;
  vertices: { id: string; xyz: Vec3 }[];
  faces: [string, string, string][];
}

export interface BuildDiagnostics {
  vertices: number;
  edges: number;
  faces: number;
  volume: number;
  tent_volume: number;
  tent_face: string[];
  range_edge: string;
  flex_dimension: number;
  intersections: number;
  intersection_pairs: [number, number][];
  embedded: boolean;
  x: number;
  y: number;
}

export interface BuildResponse {
  mesh: MeshDoc;
  diagnostics: BuildDiagnostics;
}

export type FoldTag = "mountain" | "valley" | "flat";

export interface TrajectorySample {
  s: number;
  config: Record<string, Vec3>;
  volume: number;
  max_residual: number;
  intersections: number;
  folds: Record<string, FoldTag>;
}

export interface FlexResponse {
  format: string;
  driving: string;
  samples: TrajectorySample[];
  range: number;
  range_edge: string;
}

export interface SampleResponse {
  s: number;
  config: Record<string, Vec3>;
  volume: number;
  max_residual: number;
  intersections: number;
  intersection_pairs: [number, number][];
  folds: Record<string, FoldTag>;
}

export interface NetResponse {
  svg: string;
}

export type ParamKey = "l1" | "l2" | "l3" | "l4" | "l5" | "h1" | "h2" | "h3";

export const PARAM_KEYS: readonly ParamKey[] = [
  "l1", "l2", "l3", "l4", "l5", "h1", "h2", "h3",
];

export function getParam(p: ParamsDoc, key: ParamKey): number {
  const group = key[0] === "l" ? p.l : p.h;
  return group[Number(key[1]) - 1] as number;
}

export function withParam(p: ParamsDoc, key: ParamKey, value: number): ParamsDoc {
  const next: ParamsDoc = { format: p.format, l: [...p.l], h: [...p.h], base_shape: p.base_shape };
  const group = key[0] === "l" ? next.l : next.h;
  group[Number(key[1]) - 1] = value;
  return next;
}
