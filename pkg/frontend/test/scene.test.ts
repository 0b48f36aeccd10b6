import { describe, expect, it } from "vitest";

import { buildScene, edgeKey, type SceneOptions } from "../src/scene.js";
import { meshPose } from "../src/state.js";
import { mkMesh } from "./helpers.js";

function opts(over: Partial<SceneOptions> = {}): SceneOptions {
  return {
    width: 960,
    height: 640,
    camera: { azimuth: 0.7, elevation: 0.35, distance: 40 },
    toggles: { wireframe: false, highlightIntersections: true, foldColoring: true },
    highlightPairs: [],
    folds: {},
    changedEdges: [],
    ...over,
  };
}

describe("edgeKey", () => {
  it("is orientation independent", () => {
    expect(edgeKey("a", "b")).toBe("a|b");
    expect(edgeKey("b", "a")).toBe("a|b");
    expect(edgeKey("B", "A'")).toBe(edgeKey("A'", "B"));
  });
});

describe("buildScene", () => {
  const mesh = mkMesh();
  const pose = meshPose(mesh);

  it("emits one polygon per face, unique edges, and a label per vertex", () => {
    const list = buildScene(mesh, pose, opts());
    expect(list.faces).toHaveLength(4);
    expect(list.edges).toHaveLength(6);
    expect(list.labels.map((l) => l.text).sort()).toEqual(["a", "b", "c", "d"]);
  });

  it("projects every point inside the canvas for a fitted view", () => {
    const list = buildScene(mesh, pose, opts());
    for (const face of list.faces) {
      for (const [x, y] of face.points) {
        expect(x).toBeGreaterThan(0);
        expect(x).toBeLessThan(960);
        expect(y).toBeGreaterThan(0);
        expect(y).toBeLessThan(640);
      }
    }
  });

  it("orders faces far to near so the painter draws back faces first", () => {
    const list = buildScene(mesh, pose, opts());
    const depths = list.faces.map((f) => f.depth);
    const sorted = [...depths].sort((p, q) => q - p);
    expect(depths).toEqual(sorted);
  });

  it("marks both faces of a highlighted pair when the toggle is on", () => {
    const list = buildScene(mesh, pose, opts({ highlightPairs: [[0, 2]] }));
    expect(list.faces.filter((f) => f.highlighted)).toHaveLength(2);
  });

  it("ignores highlight pairs when the toggle is off", () => {
    const list = buildScene(
      mesh,
      pose,
      opts({
        highlightPairs: [[0, 2]],
        toggles: { wireframe: false, highlightIntersections: false, foldColoring: true },
      }),
    );
    expect(list.faces.some((f) => f.highlighted)).toBe(false);
  });

  it("wireframe mode suppresses face fills", () => {
    const list = buildScene(
      mesh,
      pose,
      opts({ toggles: { wireframe: true, highlightIntersections: true, foldColoring: true } }),
    );
    expect(list.faces.every((f) => f.fill === "none")).toBe(true);
  });

  it("classes edges by fold tag, with sign-changing edges scored for both", () => {
    const list = buildScene(
      mesh,
      pose,
      opts({
        folds: { "a|b": "mountain", "a|c": "valley" },
        changedEdges: ["a|d"],
      }),
    );
    const classes = new Set(list.edges.map((e) => e.cls));
    expect(classes.has("mountain")).toBe(true);
    expect(classes.has("valley")).toBe(true);
    expect(classes.has("score-both")).toBe(true);
    expect(list.edges.filter((e) => e.cls === "flat")).toHaveLength(3);
  });

  it("fold coloring off renders every edge flat", () => {
    const list = buildScene(
      mesh,
      pose,
      opts({
        folds: { "a|b": "mountain" },
        changedEdges: ["a|d"],
        toggles: { wireframe: false, highlightIntersections: true, foldColoring: false },
      }),
    );
    expect(list.edges.every((e) => e.cls === "flat")).toBe(true);
  });

  it("returns an empty list when the pose is missing a vertex", () => {
    const partial = { ...pose };
    delete partial["d"];
    const list = buildScene(mesh, partial, opts());
    expect(list.faces).toEqual([]);
    expect(list.edges).toEqual([]);
    expect(list.labels).toEqual([]);
  });

  it("a camera orbit moves the projected points", () => {
    const before = buildScene(mesh, pose, opts());
    const after = buildScene(
      mesh,
      pose,
      opts({ camera: { azimuth: 1.9, elevation: 0.35, distance: 40 } }),
    );
    expect(before.labels[0]!.at).not.toEqual(after.labels[0]!.at);
  });
});
