// The two published parameter sets. Values are configuration for the
// service, not client-side geometry: the service re-derives everything.

import type { ParamsDoc } from "./types.js";

export const FORMAT = "polyflex/1";

export const DEFAULT_PARAMS: ParamsDoc = {
  format: FORMAT,
  l: [3.6, 3.9, 1.0, 3.9, 2.9],
  h: [6.5, 6.5, 6.1],
  base_shape: 0.75,
};

// wider range of motion than the defaults
export const FOOTNOTE_PARAMS: ParamsDoc = {
  format: FORMAT,
  l: [4.2, 4.3, 1.0, 4.8, 3.05],
  h: [7.9, 4.0, 6.4],
  base_shape: 0.75,
};

export type PresetName = "default" | "footnote";

export const PRESETS: Record<PresetName, ParamsDoc> = {
  default: DEFAULT_PARAMS,
  footnote: FOOTNOTE_PARAMS,
};
