// The client's single source of displayed truth. Network callbacks push
// parsed frames in; the render loop reads the latest snapshot out. Nothing
// here mutates game state -- it only mirrors what the server said, plus the
// player's uncommitted stroke preview.

import { ServerMsg, StateMsg, TeamName, WireStroke } from "./protocol.js";
import { Trails } from "./trails.js";

export interface CaptureFlash {
  agent: number;
  tick: number;
  to: TeamName;
}

export class ViewState {
  latest: StateMsg | null = null;
  role: TeamName | "spectator" | null = null;
  config: Record<string, unknown> | null = null;
  winner: TeamName | null = null;
  trails = new Trails();
  flashes: CaptureFlash[] = [];
  lastReject = "";
  /** confirmed target generation: commands sent minus rejections seen */
  sentCommands = 0;
  rejectedCommands = 0;
  /** wall-clock ms of the last snapshot, for the stale badge */
  lastSnapshotAt = 0;
  /** the player's pending drawing, not yet sent */
  preview: WireStroke[] = [];

  ingest(msg: ServerMsg, nowMs: number): void {
    switch (msg.type) {
      case "state":
        // frames can arrive out of order only if the server restarted;
        // latest-tick-wins keeps the view monotone either way
        if (!this.latest || msg.tick >= this.latest.tick) {
          this.latest = msg;
          this.trails.update(msg.tick, msg.agents);
          this.lastSnapshotAt = nowMs;
        }
        break;
      case "joined":
        this.role = msg.role;
        this.config = msg.config;
        break;
      case "rejected":
        this.lastReject = msg.reason;
        this.rejectedCommands += 1;
        break;
      case "event":
        this.flashes.push({ agent: msg.agent, tick: msg.tick, to: msg.to });
        if (this.flashes.length > 32) this.flashes.shift();
        break;
      case "game_over":
        this.winner = msg.winner;
        break;
    }
  }

  get generation(): number {
    return this.sentCommands - this.rejectedCommands;
  }

  /** Field layers are square; fall back to the layer length if no config yet. */
  get gridSize(): number {
    const fromConfig = this.config?.["grid_size"];
    if (typeof fromConfig === "number") return fromConfig;
    const layer = this.latest?.fields.red;
    return layer ? Math.round(Math.sqrt(layer.length)) : 50;
  }

  /** The team color shown for an agent comes from the newest snapshot, so a
   *  captured agent recolors on exactly the tick the server flipped it. */
  agentTeam(id: number): TeamName | null {
    const agent = this.latest?.agents.find((a) => a.id === id);
    return agent ? agent.team : null;
  }

  isStale(nowMs: number, thresholdMs = 500): boolean {
    return this.latest !== null && nowMs - this.lastSnapshotAt > thresholdMs;
  }
}
