// Mapping between arena space and canvas pixels.
//
// The arena is the unit square; the server's y grows upward (an agent with
// vy > 0 moves toward y = 1). Canvas pixel y grows downward, so the map
// flips y: arena (0, 0) is the canvas bottom-left, arena (1, 1) the top-right.

export interface Viewport {
  width: number;
  height: number;
}

export function arenaToCanvas(x: number, y: number, view: Viewport): [number, number] {
  return [x * view.width, (1 - y) * view.height];
}

export function canvasToArena(px: number, py: number, view: Viewport): [number, number] {
  return [px / view.width, 1 - py / view.height];
}

export function clampArena(x: number, y: number): [number, number] {
  return [Math.min(Math.max(x, 0), 1), Math.min(Math.max(y, 0), 1)];
}
