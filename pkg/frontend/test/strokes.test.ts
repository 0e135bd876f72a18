import { describe, expect, it } from "vitest";
import { MIN_SPACING_PX, StrokeBuilder } from "../src/strokes.js";
import { Viewport } from "../src/coords.js";

const view: Viewport = { width: 100, height: 100 };

describe("StrokeBuilder", () => {
  it("a click with no drag becomes a one-point dot", () => {
    const b = new StrokeBuilder("repel", 0.04, view);
    b.add(50, 50);
    const stroke = b.finish();
    expect(stroke).not.toBeNull();
    expect(stroke!.points).toHaveLength(1);
    expect(stroke!.brush).toBe("repel");
    expect(stroke!.radius).toBe(0.04);
  });

  it("drops samples closer than the pixel spacing floor", () => {
    const b = new StrokeBuilder("attract", 0.05, view);
    b.add(10, 10);
    for (let k = 0; k < 20; k++) b.add(10 + 0.05 * k, 10); // 1px of total jitter
    expect(b.size).toBe(1);
    b.add(10 + MIN_SPACING_PX, 10);
    expect(b.size).toBe(2);
  });

  it("keeps samples spaced at or beyond the floor", () => {
    const b = new StrokeBuilder("attract", 0.05, view);
    for (let k = 0; k < 30; k++) b.add(5 + 3 * k, 40);
    expect(b.size).toBe(30);
  });

  it("converts pixels to arena units with the y flip", () => {
    const b = new StrokeBuilder("attract", 0.05, view);
    b.add(25, 100); // bottom-left-ish pixel -> low arena y
    b.add(75, 0); // top pixel -> arena y = 1
    const pts = b.finish()!.points;
    expect(pts[0][0]).toBeCloseTo(0.25, 10);
    expect(pts[0][1]).toBeCloseTo(0, 10);
    expect(pts[1][0]).toBeCloseTo(0.75, 10);
    expect(pts[1][1]).toBeCloseTo(1, 10);
  });

  it("clamps off-canvas drags into the unit square", () => {
    const b = new StrokeBuilder("attract", 0.05, view);
    b.add(-30, 50);
    b.add(130, 50);
    for (const [x, y] of b.finish()!.points) {
      expect(x).toBeGreaterThanOrEqual(0);
      expect(x).toBeLessThanOrEqual(1);
      expect(y).toBeGreaterThanOrEqual(0);
      expect(y).toBeLessThanOrEqual(1);
    }
  });

  it("finish on an empty stroke gives null, peek matches finish", () => {
    const b = new StrokeBuilder("attract", 0.05, view);
    expect(b.peek()).toBeNull();
    expect(b.finish()).toBeNull();
    b.add(50, 50);
    b.add(60, 50);
    expect(b.peek()!.points).toEqual(b.finish()!.points);
  });
});
