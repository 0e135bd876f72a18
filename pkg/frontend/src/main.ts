// Page wiring. Everything stateful lives in ViewState; this file just maps
// DOM events onto it and repaints on animation frames.
//
// URL parameters:
//   ?server=host:port   game server (default: page host, port 8000)
//   ?team=red|blue|spectator   seat to request (default: red)

import { serverUrl, connect, GameSocket } from "./net.js";
import { ViewState } from "./view.js";
import { StrokeBuilder } from "./strokes.js";
import { BrushName } from "./protocol.js";
import { Viewport } from "./coords.js";
import * as render from "./render.js";

const canvas = document.getElementById("arena") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const view: Viewport = { width: canvas.width, height: canvas.height };

const statusLine = document.getElementById("status")!;
const sendBtn = document.getElementById("send") as HTMLButtonElement;
const resetBtn = document.getElementById("reset") as HTMLButtonElement;
const radiusInput = document.getElementById("radius") as HTMLInputElement;
const brushInputs = Array.from(
  document.querySelectorAll<HTMLInputElement>("input[name=brush]"),
);

const params = new URLSearchParams(window.location.search);
const seatParam = params.get("team");
const seat: "red" | "blue" | "spectator" =
  seatParam === "blue" || seatParam === "spectator" ? seatParam : "red";

const state = new ViewState();
let socket: GameSocket | null = null;
let building: StrokeBuilder | null = null;
let connected = false;

function currentBrush(): BrushName {
  const checked = brushInputs.find((el) => el.checked);
  return checked?.value === "repel" ? "repel" : "attract";
}

function canDraw(): boolean {
  return connected && (state.role === "red" || state.role === "blue");
}

canvas.addEventListener("pointerdown", (ev) => {
  if (!canDraw()) return;
  canvas.setPointerCapture(ev.pointerId);
  building = new StrokeBuilder(currentBrush(), Number(radiusInput.value), view);
  const rect = canvas.getBoundingClientRect();
  building.add(ev.clientX - rect.left, ev.clientY - rect.top);
});

canvas.addEventListener("pointermove", (ev) => {
  if (!building) return;
  const rect = canvas.getBoundingClientRect();
  building.add(ev.clientX - rect.left, ev.clientY - rect.top);
});

canvas.addEventListener("pointerup", () => {
  if (!building) return;
  const stroke = building.finish();
  building = null;
  if (stroke) state.preview.push(stroke);
});

sendBtn.addEventListener("click", () => {
  if (!socket || !canDraw() || state.preview.length === 0) return;
  socket.send({ type: "command_strokes", strokes: state.preview });
  state.sentCommands += 1;
  state.preview = [];
});

resetBtn.addEventListener("click", () => {
  state.preview = [];
  if (socket && canDraw()) {
    socket.send({ type: "clear" });
    state.sentCommands += 1;
  }
});

socket = connect(serverUrl(window.location.search, window.location.hostname), seat, {
  onMessage: (msg) => state.ingest(msg, performance.now()),
  onOpen: () => {
    connected = true;
  },
  onClose: () => {
    connected = false;
  },
});

function statusText(): string {
  if (!connected) return "connecting…";
  if (state.role === null) return "waiting for seat";
  const parts = [`seat: ${state.role}`, `targets sent: ${state.generation}`];
  if (state.preview.length > 0) parts.push(`${state.preview.length} stroke(s) pending`);
  if (state.lastReject) parts.push(`last rejection: ${state.lastReject}`);
  return parts.join("  ·  ");
}

function frame(): void {
  const now = performance.now();
  render.clear(ctx, view);
  const snap = state.latest;
  if (snap) {
    const grid = state.gridSize;
    // the danger layer: squares where the *other* team can capture you
    if (state.role !== "blue") render.drawField(ctx, snap.fields.blue, grid, "blue", view);
    if (state.role !== "red") render.drawField(ctx, snap.fields.red, grid, "red", view);
    render.drawTrails(ctx, state.trails, snap.tick, snap.agents, view);
    render.drawAgents(ctx, snap.agents, state.flashes, snap.tick, view);
  }
  if (building) {
    const partial = building.peek();
    if (partial) render.drawPreview(ctx, [partial], view);
  }
  render.drawPreview(ctx, state.preview, view);
  render.drawHud(ctx, snap, state.role, state.isStale(now), state.winner, view);
  statusLine.textContent = statusText();
  sendBtn.disabled = !canDraw() || state.preview.length === 0;
  resetBtn.disabled = !canDraw();
  requestAnimationFrame(frame);
}

requestAnimationFrame(frame);
