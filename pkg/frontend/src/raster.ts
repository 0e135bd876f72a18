// Client-side stroke rasterization for the drawing preview.
//
// This mirrors the server's coverage rule: a grid cell is covered when its
// center lies within the brush radius of the stroke polyline. The preview is
// advisory only -- the server's rasterizer is the source of truth -- but the
// two must agree to within a one-cell halo, which the test suite checks
// against a fixture produced by the server-side implementation.

import { WireStroke } from "./protocol.js";

function segmentDistance(
  px: number, py: number,
  ax: number, ay: number,
  bx: number, by: number,
): number {
  const dx = bx - ax;
  const dy = by - ay;
  const lengthSq = dx * dx + dy * dy;
  if (lengthSq === 0) return Math.hypot(px - ax, py - ay);
  let t = ((px - ax) * dx + (py - ay) * dy) / lengthSq;
  t = Math.min(Math.max(t, 0), 1);
  return Math.hypot(px - (ax + t * dx), py - (ay + t * dy));
}

/** Set of covered cells, encoded as i * gridSize + j (i from x, j from y). */
export function coveredCells(stroke: WireStroke, gridSize: number): Set<number> {
  const covered = new Set<number>();
  const pts = stroke.points;
  const r = stroke.radius;
  // only scan the cells inside the stroke's bounding box, padded by the radius
  let minX = 1, minY = 1, maxX = 0, maxY = 0;
  for (const [x, y] of pts) {
    minX = Math.min(minX, x); maxX = Math.max(maxX, x);
    minY = Math.min(minY, y); maxY = Math.max(maxY, y);
  }
  const lo = (v: number) => Math.max(0, Math.floor((v - r) * gridSize));
  const hi = (v: number) => Math.min(gridSize - 1, Math.ceil((v + r) * gridSize));
  for (let i = lo(minX); i <= hi(maxX); i++) {
    for (let j = lo(minY); j <= hi(maxY); j++) {
      const cx = (i + 0.5) / gridSize;
      const cy = (j + 0.5) / gridSize;
      let inside = false;
      if (pts.length === 1) {
        inside = Math.hypot(cx - pts[0][0], cy - pts[0][1]) <= r;
      } else {
        for (let s = 0; s + 1 < pts.length && !inside; s++) {
          inside = segmentDistance(cx, cy, pts[s][0], pts[s][1], pts[s + 1][0], pts[s + 1][1]) <= r;
        }
      }
      if (inside) covered.add(i * gridSize + j);
    }
  }
  return covered;
}
