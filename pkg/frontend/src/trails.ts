// Per-agent fading trails, rebuilt client-side from snapshots. Trails are
// cosmetic; the engine's heat field is what actually drives captures.

import { AgentSnapshot, TeamName } from "./protocol.js";

export const TRAIL_TICKS = 90; // ~3 seconds at the 30Hz snapshot rate

export interface TrailPoint {
  x: number;
  y: number;
  tick: number;
  team: TeamName; // team at the time the point was laid down
}

export class Trails {
  private byAgent = new Map<number, TrailPoint[]>();

  update(tick: number, agents: AgentSnapshot[]): void {
    for (const a of agents) {
      let trail = this.byAgent.get(a.id);
      if (!trail) {
        trail = [];
        this.byAgent.set(a.id, trail);
      }
      trail.push({ x: a.x, y: a.y, tick, team: a.team });
      while (trail.length && trail[0].tick < tick - TRAIL_TICKS) {
        trail.shift();
      }
    }
  }

  points(id: number): TrailPoint[] {
    return this.byAgent.get(id) ?? [];
  }

  /** 0 (about to vanish) .. 1 (fresh) for a point at `tick` seen from `now`. */
  static fade(tick: number, now: number): number {
    return Math.max(0, 1 - (now - tick) / TRAIL_TICKS);
  }
}
