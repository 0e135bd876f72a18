// Accumulates pointer movement into a stroke and converts it to the wire
// format. Points are collected in canvas pixels and downsampled so
// consecutive samples are at least MIN_SPACING_PX apart; a click with no
// drag still yields a single-point stroke (a dot).

import { canvasToArena, clampArena, Viewport } from "./coords.js";
import { BrushName, WireStroke } from "./protocol.js";

export const MIN_SPACING_PX = 2;

export class StrokeBuilder {
  private points: [number, number][] = [];
  private last: [number, number] | null = null;

  constructor(
    readonly brush: BrushName,
    readonly radius: number,
    private view: Viewport,
  ) {}

  add(px: number, py: number): void {
    if (this.last) {
      const dx = px - this.last[0];
      const dy = py - this.last[1];
      if (Math.hypot(dx, dy) < MIN_SPACING_PX) return;
    }
    this.last = [px, py];
    const [x, y] = canvasToArena(px, py, this.view);
    this.points.push(clampArena(x, y));
  }

  get size(): number {
    return this.points.length;
  }

  /** The stroke so far, for live preview while the pointer is still down. */
  peek(): WireStroke | null {
    if (this.points.length === 0) return null;
    return { points: this.points.slice(), radius: this.radius, brush: this.brush };
  }

  finish(): WireStroke | null {
    if (this.points.length === 0) return null;
    return { points: this.points, radius: this.radius, brush: this.brush };
  }
}
