// Canvas drawing. Every function takes an explicit context and viewport so
// none of this touches the DOM beyond the 2d context it is handed.
//
// Draw order (back to front): danger field, trails, agents, stroke preview,
// HUD text. The danger field is the *opposing* team's capture layer -- the
// squares that can eat your agents -- shaded darker where hotter.

import { AgentSnapshot, StateMsg, TeamName, WireStroke } from "./protocol.js";
import { arenaToCanvas, Viewport } from "./coords.js";
import { Trails, TRAIL_TICKS } from "./trails.js";
import { CaptureFlash } from "./view.js";

export const TEAM_COLOR: Record<TeamName, string> = {
  red: "#d9434e",
  blue: "#3d7bd9",
};
const TEAM_RGB: Record<TeamName, [number, number, number]> = {
  red: [217, 67, 78],
  blue: [61, 123, 217],
};

export function clear(ctx: CanvasRenderingContext2D, view: Viewport): void {
  ctx.fillStyle = "#10131a";
  ctx.fillRect(0, 0, view.width, view.height);
}

/** Shade one team's capture layer. fields is row-major with value(i, j) at
 *  index i * gridSize + j, i indexing x; alpha scales with cell value. */
export function drawField(
  ctx: CanvasRenderingContext2D,
  fields: number[],
  gridSize: number,
  team: TeamName,
  view: Viewport,
): void {
  const [r, g, b] = TEAM_RGB[team];
  const cw = view.width / gridSize;
  const ch = view.height / gridSize;
  for (let i = 0; i < gridSize; i++) {
    for (let j = 0; j < gridSize; j++) {
      const v = fields[i * gridSize + j];
      if (v <= 0.01) continue;
      ctx.fillStyle = `rgba(${r},${g},${b},${0.45 * v})`;
      // cell (i, j) spans x in [i, i+1)/G, y in [j, j+1)/G; arena y is up
      const cx = i * cw;
      const cy = view.height - (j + 1) * ch;
      ctx.fillRect(cx, cy, cw + 0.5, ch + 0.5);
    }
  }
}

export function drawTrails(
  ctx: CanvasRenderingContext2D,
  trails: Trails,
  nowTick: number,
  agents: AgentSnapshot[],
  view: Viewport,
): void {
  ctx.lineWidth = 1.5;
  for (const agent of agents) {
    const pts = trails.points(agent.id);
    for (let k = 1; k < pts.length; k++) {
      const alpha = 0.6 * Trails.fade(pts[k].tick, nowTick);
      if (alpha <= 0) continue;
      const [x0, y0] = arenaToCanvas(pts[k - 1].x, pts[k - 1].y, view);
      const [x1, y1] = arenaToCanvas(pts[k].x, pts[k].y, view);
      ctx.strokeStyle = TEAM_COLOR[pts[k].team];
      ctx.globalAlpha = alpha;
      ctx.beginPath();
      ctx.moveTo(x0, y0);
      ctx.lineTo(x1, y1);
      ctx.stroke();
    }
  }
  ctx.globalAlpha = 1;
}

export function drawAgents(
  ctx: CanvasRenderingContext2D,
  agents: AgentSnapshot[],
  flashes: CaptureFlash[],
  nowTick: number,
  view: Viewport,
): void {
  for (const agent of agents) {
    const [cx, cy] = arenaToCanvas(agent.x, agent.y, view);
    ctx.fillStyle = TEAM_COLOR[agent.team];
    ctx.beginPath();
    ctx.arc(cx, cy, 5, 0, 2 * Math.PI);
    ctx.fill();
    ctx.strokeStyle = "#10131a";
    ctx.lineWidth = 1;
    ctx.stroke();
  }
  // a short ring pulse where a capture just happened
  for (const flash of flashes) {
    const age = nowTick - flash.tick;
    if (age < 0 || age > 30) continue;
    const agent = agents.find((a) => a.id === flash.agent);
    if (!agent) continue;
    const [cx, cy] = arenaToCanvas(agent.x, agent.y, view);
    ctx.strokeStyle = TEAM_COLOR[flash.to];
    ctx.globalAlpha = 1 - age / 30;
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.arc(cx, cy, 6 + age * 0.6, 0, 2 * Math.PI);
    ctx.stroke();
    ctx.globalAlpha = 1;
  }
}

/** The player's uncommitted drawing: attract strokes in blue, repel in green. */
export function drawPreview(
  ctx: CanvasRenderingContext2D,
  strokes: WireStroke[],
  view: Viewport,
): void {
  for (const stroke of strokes) {
    const color = stroke.brush === "attract" ? "rgba(90,160,255,0.5)" : "rgba(90,210,120,0.5)";
    ctx.strokeStyle = color;
    ctx.fillStyle = color;
    ctx.lineWidth = stroke.radius * 2 * view.width;
    ctx.lineCap = "round";
    ctx.lineJoin = "round";
    if (stroke.points.length === 1) {
      const [cx, cy] = arenaToCanvas(stroke.points[0][0], stroke.points[0][1], view);
      ctx.beginPath();
      ctx.arc(cx, cy, stroke.radius * view.width, 0, 2 * Math.PI);
      ctx.fill();
      continue;
    }
    ctx.beginPath();
    stroke.points.forEach(([x, y], k) => {
      const [cx, cy] = arenaToCanvas(x, y, view);
      if (k === 0) ctx.moveTo(cx, cy);
      else ctx.lineTo(cx, cy);
    });
    ctx.stroke();
  }
}

export function drawHud(
  ctx: CanvasRenderingContext2D,
  state: StateMsg | null,
  role: string | null,
  stale: boolean,
  winner: TeamName | null,
  view: Viewport,
): void {
  ctx.font = "14px system-ui, sans-serif";
  ctx.textBaseline = "top";
  if (state) {
    ctx.fillStyle = TEAM_COLOR.red;
    ctx.fillText(`red ${state.team_sizes.red}`, 8, 8);
    ctx.fillStyle = TEAM_COLOR.blue;
    ctx.fillText(`blue ${state.team_sizes.blue}`, 8, 26);
    ctx.fillStyle = "#9aa4b2";
    ctx.fillText(`tick ${state.tick}`, 8, 44);
  }
  if (role) {
    ctx.fillStyle = "#9aa4b2";
    ctx.textAlign = "right";
    ctx.fillText(`playing: ${role}`, view.width - 8, 8);
    ctx.textAlign = "left";
  }
  if (stale) {
    ctx.fillStyle = "#e0b341";
    ctx.fillText("connection stale", 8, view.height - 22);
  }
  if (winner) {
    ctx.fillStyle = TEAM_COLOR[winner];
    ctx.font = "bold 28px system-ui, sans-serif";
    ctx.textAlign = "center";
    ctx.fillText(`${winner} wins`, view.width / 2, view.height / 2 - 14);
    ctx.textAlign = "left";
  }
}

export { TRAIL_TICKS };
