// Wire types for the /game websocket. Field layers are row-major 50x50
// with the x cell index varying slowest: value(i, j) = fields[i * G + j],
// where i = floor(x * G) and j = floor(y * G).

export type TeamName = "red" | "blue";

export interface AgentSnapshot {
  id: number;
  team: TeamName;
  x: number;
  y: number;
  vx: number;
  vy: number;
}

export interface StateMsg {
  type: "state";
  tick: number;
  agents: AgentSnapshot[];
  fields: { red: number[]; blue: number[] };
  team_sizes: { red: number; blue: number };
}

export interface JoinedMsg {
  type: "joined";
  role: TeamName | "spectator";
  config: Record<string, unknown>;
}

export interface RejectedMsg {
  type: "rejected";
  reason: string;
}

export interface CaptureMsg {
  type: "event";
  kind: "capture";
  tick: number;
  agent: number;
  from: TeamName;
  to: TeamName;
}

export interface GameOverMsg {
  type: "game_over";
  tick: number;
  winner: TeamName;
}

export type ServerMsg = StateMsg | JoinedMsg | RejectedMsg | CaptureMsg | GameOverMsg;

export type BrushName = "attract" | "repel";

export interface WireStroke {
  points: [number, number][];
  radius: number;
  brush: BrushName;
}

export type ClientMsg =
  | { type: "join"; role: TeamName | "spectator" }
  | { type: "command_strokes"; strokes: WireStroke[] }
  | { type: "command_flock"; attractors: { x: number; y: number; weight?: number }[] }
  | { type: "clear" };

export function parseServerMsg(raw: string): ServerMsg | null {
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch {
    return null;
  }
  if (typeof data !== "object" || data === null || typeof (data as { type?: unknown }).type !== "string") {
    return null;
  }
  return data as ServerMsg;
}
