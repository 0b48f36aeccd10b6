// Wires the UI to the service. Slider drags debounce into one /build;
// releasing a slider flushes the pending build and recomputes /flex (the
// expensive call). Every request is stamped through a latest-wins gate so
// a slow response for old params can never overwrite a newer one. Service
// errors become a stage-tagged badge; an unreachable service becomes a
// banner while the last good state stays on screen.

import { ServiceError, type Api } from "./api.js";
import { debounce, type Debounced } from "./debounce.js";
import { Latest } from "./latest.js";
import { PRESETS, type PresetName } from "./presets.js";
import {
  clampIndex,
  foldChangedEdges,
  initialState,
  meshPose,
  paramsKey,
  buildStale,
  trajectoryStale,
  type SessionState,
} from "./state.js";
import type { ParamKey, ParamsDoc, Vec3 } from "./types.js";
import { getParam, withParam } from "./types.js";

export interface ControllerHooks {
  render(state: SessionState): void;
}

const UNREACHABLE = "service unreachable; showing last computed state";

export class ViewerController {
  readonly state: SessionState;

  private readonly client: Api;
  private readonly hooks: ControllerHooks;
  private readonly buildGate = new Latest();
  private readonly flexGate = new Latest();
  private readonly sampleGate = new Latest();
  private readonly netGate = new Latest();
  private readonly buildSoon: Debounced<[]>;
  private readonly sampleSoon: Debounced<[]>;
  private failedKey: string | null = null;

  constructor(client: Api, hooks: ControllerHooks, debounceMs = 150) {
    this.client = client;
    this.hooks = hooks;
    this.state = initialState(PRESETS.default);
    this.buildSoon = debounce(() => void this.doBuild(), debounceMs);
    this.sampleSoon = debounce(() => void this.doSample(), debounceMs);
  }

  // initial page load: defaults, both calls straight away
  async refresh(): Promise<void> {
    await Promise.all([this.doBuild(), this.doFlex()]);
  }

  setParam(key: ParamKey, value: number): void {
    if (!Number.isFinite(value) || value === getParam(this.state.params, key)) return;
    this.state.params = withParam(this.state.params, key, value);
    this.state.preset = "custom";
    this.buildSoon();
    this.touch();
  }

  // slider release: flush the coalesced build, then the trajectory
  async commitParams(): Promise<void> {
    if (this.buildSoon.pending()) this.buildSoon.flush();
    else if (buildStale(this.state)) await this.doBuild();
    if (trajectoryStale(this.state) || this.state.trajectory === null) {
      await this.doFlex();
    }
  }

  async usePreset(name: PresetName): Promise<void> {
    this.buildSoon.cancel();
    this.state.params = PRESETS[name];
    this.state.preset = name;
    this.touch();
    await Promise.all([this.doBuild(), this.doFlex()]);
  }

  scrubTo(index: number): void {
    const traj = this.state.trajectory;
    if (!traj || traj.samples.length === 0) return;
    const i = clampIndex(index, traj.samples.length);
    const smp = traj.samples[i]!;
    this.state.scrubIndex = i;
    this.state.pose = smp.config;
    this.state.sampleVolume = smp.volume;
    this.state.sampleResidual = smp.max_residual;
    this.state.sampleIntersections = smp.intersections;
    this.state.folds = smp.folds;
    // a clean sample needs no highlights; pair indices for dirty ones come
    // from the service once the scrubber settles
    this.state.highlightPairs = [];
    if (smp.intersections !== 0) this.sampleSoon();
    this.touch();
  }

  toggle(key: keyof SessionState["toggles"]): void {
    this.state.toggles[key] = !this.state.toggles[key];
    this.touch();
  }

  orbit(dAzimuth: number, dElevation: number, dDistance = 0): void {
    const cam = this.state.camera;
    cam.azimuth += dAzimuth;
    cam.elevation = Math.min(1.4, Math.max(-1.4, cam.elevation + dElevation));
    cam.distance = Math.min(400, Math.max(4, cam.distance + dDistance));
    this.touch();
  }

  netDisabled(): boolean {
    return this.state.busy.net || this.failedKey === paramsKey(this.state.params);
  }

  async downloadNet(): Promise<string | null> {
    if (this.netDisabled()) return null;
    const params = this.state.params;
    const seq = this.netGate.issue();
    this.state.busy.net = true;
    this.touch();
    try {
      const r = await this.client.net(params);
      if (!this.netGate.accept(seq)) return null;
      return r.svg;
    } catch (err) {
      if (this.netGate.accept(seq)) this.noteFailure(err, params);
      return null;
    } finally {
      if (this.netGate.accept(seq)) {
        this.state.busy.net = false;
        this.touch();
      }
    }
  }

  private async doBuild(): Promise<void> {
    const params = this.state.params;
    const key = paramsKey(params);
    const seq = this.buildGate.issue();
    this.state.busy.build = true;
    this.touch();
    try {
      const r = await this.client.build(params);
      if (!this.buildGate.accept(seq)) return;
      this.state.mesh = r.mesh;
      this.state.diagnostics = r.diagnostics;
      this.state.buildKey = key;
      this.state.pose = meshPose(r.mesh);
      this.state.scrubIndex = 0;
      this.state.highlightPairs = r.diagnostics.intersection_pairs;
      this.state.sampleVolume = r.diagnostics.volume;
      this.state.sampleResidual = null;
      this.state.sampleIntersections = r.diagnostics.intersections;
      this.state.errorBadge = null;
      this.state.banner = null;
      if (this.failedKey === key) this.failedKey = null;
    } catch (err) {
      if (this.buildGate.accept(seq)) this.noteFailure(err, params);
    } finally {
      if (this.buildGate.accept(seq)) {
        this.state.busy.build = false;
        this.touch();
      }
    }
  }

  private async doFlex(): Promise<void> {
    const params = this.state.params;
    const key = paramsKey(params);
    const seq = this.flexGate.issue();
    this.state.busy.flex = true;
    this.touch();
    try {
      const r = await this.client.flex(params);
      if (!this.flexGate.accept(seq)) return;
      this.state.trajectory = r;
      this.state.trajectoryKey = key;
      this.state.changedEdges = foldChangedEdges(r.samples);
      this.state.errorBadge = null;
      this.state.banner = null;
      const i = this.nearestSampleToPose(r.samples.map((s) => s.config));
      this.state.scrubIndex = i;
      const smp = r.samples[i];
      if (smp) this.state.folds = smp.folds;
    } catch (err) {
      if (this.flexGate.accept(seq)) this.noteFailure(err, params);
    } finally {
      if (this.flexGate.accept(seq)) {
        this.state.busy.flex = false;
        this.touch();
      }
    }
  }

  // authoritative re-pose of the settled scrub position: pair indices and
  // diagnostics come back from the service
  private async doSample(): Promise<void> {
    const traj = this.state.trajectory;
    if (!traj || this.state.trajectoryKey !== paramsKey(this.state.params)) return;
    const smp = traj.samples[this.state.scrubIndex];
    if (!smp) return;
    const params = this.state.params;
    const seq = this.sampleGate.issue();
    try {
      const r = await this.client.sample(params, smp.s);
      if (!this.sampleGate.accept(seq)) return;
      this.state.pose = r.config;
      this.state.highlightPairs = r.intersection_pairs;
      this.state.sampleVolume = r.volume;
      this.state.sampleResidual = r.max_residual;
      this.state.sampleIntersections =
        r.intersections >= 0 ? r.intersections : r.intersection_pairs.length;
      this.state.folds = r.folds;
      this.touch();
    } catch (err) {
      if (this.sampleGate.accept(seq)) {
        this.noteFailure(err, params);
        this.touch();
      }
    }
  }

  private nearestSampleToPose(configs: Record<string, Vec3>[]): number {
    const pose = this.state.pose;
    if (!pose || configs.length === 0) return 0;
    let best = 0;
    let bestErr = Infinity;
    configs.forEach((cfg, i) => {
      let err = 0;
      for (const [id, p] of Object.entries(pose)) {
        const q = cfg[id];
        if (!q) return;
        err += (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2 + (p[2] - q[2]) ** 2;
      }
      if (err < bestErr) {
        bestErr = err;
        best = i;
      }
    });
    return best;
  }

  private noteFailure(err: unknown, params: ParamsDoc): void {
    if (err instanceof ServiceError) {
      this.state.errorBadge = err.message;
      this.state.banner = null;
      this.failedKey = paramsKey(params);
    } else {
      this.state.banner = UNREACHABLE;
    }
  }

  private touch(): void {
    this.hooks.render(this.state);
  }
}
