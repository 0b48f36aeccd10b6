// DOM bootstrap: builds the slider panel, binds the canvas, scrubber and
// buttons to the controller, and repaints on every state change. This file
// is the only one that touches document/window.

import { ApiClient } from "./api.js";
import { ViewerController } from "./controller.js";
import { fixed, radians, scientific } from "./format.js";
import { buildScene } from "./scene.js";
import { paint } from "./render.js";
import { trajectoryStale, type SessionState } from "./state.js";
import { PARAM_KEYS, getParam, type ParamKey } from "./types.js";

const SLIDER_RANGE: Record<string, [number, number, number]> = {
  l: [0.2, 8.0, 0.01],
  h: [0.5, 12.0, 0.01],
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  cls?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (cls) node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
}

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function apiBase(): string {
  const override = new URLSearchParams(window.location.search).get("api");
  return override ?? "http://127.0.0.1:8008";
}

interface SliderRow {
  slider: HTMLInputElement;
  box: HTMLInputElement;
}

function buildSliders(
  panel: HTMLElement,
  controller: ViewerController,
): Map<ParamKey, SliderRow> {
  const rows = new Map<ParamKey, SliderRow>();
  for (const key of PARAM_KEYS) {
    const [lo, hi, step] = SLIDER_RANGE[key.charAt(0)] ?? [0.2, 10, 0.01];
    const row = el("div", "param-row");
    const label = el("label", "param-label", key);
    const slider = el("input");
    slider.type = "range";
    slider.min = String(lo);
    slider.max = String(hi);
    slider.step = String(step);
    const box = el("input", "param-box");
    box.type = "number";
    box.step = String(step);

    slider.addEventListener("input", () => {
      box.value = slider.value;
      controller.setParam(key, Number(slider.value));
    });
    slider.addEventListener("change", () => void controller.commitParams());
    box.addEventListener("change", () => {
      slider.value = box.value;
      controller.setParam(key, Number(box.value));
      void controller.commitParams();
    });

    row.append(label, slider, box);
    panel.append(row);
    rows.set(key, { slider, box });
  }
  return rows;
}

function syncSliders(rows: Map<ParamKey, SliderRow>, state: SessionState): void {
  for (const [key, row] of rows) {
    const value = getParam(state.params, key);
    if (document.activeElement !== row.slider) row.slider.value = String(value);
    if (document.activeElement !== row.box) row.box.value = String(value);
  }
}

function saveSvg(svg: string): void {
  const blob = new Blob([svg], { type: "image/svg+xml" });
  const url = URL.createObjectURL(blob);
  const a = el("a");
  a.href = url;
  a.download = "polyflex-net.svg";
  a.click();
  URL.revokeObjectURL(url);
}

export function start(): void {
  const canvas = byId<HTMLCanvasElement>("view");
  const ctx = canvas.getContext("2d");
  if (!ctx) throw new Error("2d canvas unavailable");

  const client = new ApiClient(apiBase());
  let rows: Map<ParamKey, SliderRow>;

  const render = (state: SessionState) => {
    syncSliders(rows, state);

    byId("banner").hidden = state.banner === null;
    byId("banner").textContent = state.banner ?? "";
    const badge = byId("error-badge");
    badge.hidden = state.errorBadge === null;
    badge.textContent = state.errorBadge ?? "";

    const d = state.diagnostics;
    const embedded = byId("embedded-badge");
    embedded.textContent = d ? (d.embedded ? "embedded ✓" : `intersecting ×${d.intersections}`) : "-";
    embedded.className = d && d.embedded ? "badge ok" : "badge bad";

    byId("ro-counts").textContent = d ? `V ${d.vertices}  E ${d.edges}  F ${d.faces}` : "-";
    byId("ro-flexdim").textContent = d ? String(d.flex_dimension) : "-";
    byId("ro-volume").textContent = fixed(state.sampleVolume, 6);
    byId("ro-residual").textContent = scientific(state.sampleResidual);
    byId("ro-hits").textContent =
      state.sampleIntersections === null ? "-" : String(state.sampleIntersections);
    byId("ro-range").textContent = radians(state.trajectory?.range ?? null);
    byId("ro-hinge").textContent = state.trajectory?.range_edge ?? d?.range_edge ?? "-";
    byId("stale-flag").hidden = !trajectoryStale(state);

    const scrub = byId<HTMLInputElement>("scrub");
    const n = state.trajectory?.samples.length ?? 0;
    scrub.max = String(Math.max(0, n - 1));
    scrub.disabled = n === 0;
    if (document.activeElement !== scrub) scrub.value = String(state.scrubIndex);
    byId("scrub-pos").textContent = n
      ? `${state.scrubIndex + 1}/${n}  s=${fixed(state.trajectory?.samples[state.scrubIndex]?.s ?? null)}`
      : "-";

    (byId<HTMLButtonElement>("net-btn")).disabled = controller.netDisabled();
    byId("busy").textContent =
      state.busy.build || state.busy.flex || state.busy.net ? "working…" : "";

    if (state.mesh && state.pose) {
      const list = buildScene(state.mesh, state.pose, {
        width: canvas.width,
        height: canvas.height,
        camera: state.camera,
        toggles: state.toggles,
        highlightPairs: state.highlightPairs,
        folds: state.folds,
        changedEdges: state.changedEdges,
      });
      paint(ctx, canvas.width, canvas.height, list, true);
    }
  };

  const controller = new ViewerController(client, { render });
  rows = buildSliders(byId("params"), controller);

  byId<HTMLInputElement>("scrub").addEventListener("input", (ev) => {
    controller.scrubTo(Number((ev.target as HTMLInputElement).value));
  });

  byId<HTMLSelectElement>("preset").addEventListener("change", (ev) => {
    const name = (ev.target as HTMLSelectElement).value;
    if (name === "default" || name === "footnote") void controller.usePreset(name);
  });

  for (const key of ["wireframe", "highlightIntersections", "foldColoring"] as const) {
    byId<HTMLInputElement>(`toggle-${key}`).addEventListener("change", () =>
      controller.toggle(key),
    );
  }

  byId<HTMLButtonElement>("net-btn").addEventListener("click", async () => {
    const svg = await controller.downloadNet();
    if (svg) saveSvg(svg);
  });

  let dragging = false;
  let last: [number, number] = [0, 0];
  canvas.addEventListener("pointerdown", (ev) => {
    dragging = true;
    last = [ev.clientX, ev.clientY];
    canvas.setPointerCapture(ev.pointerId);
  });
  canvas.addEventListener("pointermove", (ev) => {
    if (!dragging) return;
    controller.orbit((ev.clientX - last[0]) * 0.01, (ev.clientY - last[1]) * 0.01);
    last = [ev.clientX, ev.clientY];
  });
  canvas.addEventListener("pointerup", () => {
    dragging = false;
  });
  canvas.addEventListener("wheel", (ev) => {
    ev.preventDefault();
    controller.orbit(0, 0, ev.deltaY * 0.05);
  });

  void controller.refresh();
}

start();
