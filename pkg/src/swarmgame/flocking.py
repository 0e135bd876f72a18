"""Flocking baseline: separation / cohesion / alignment plus weighted point attractors."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import AgentState, DynamicsConfig, Vec2, ZERO


@dataclass(frozen=True)
class FlockCommand:
    # Default gains make a tight, velocity-synced flock, so the attractor
    # weight alone sets how wide the swarm swings around its goal.
    attractors: tuple[tuple[Vec2, float], ...] = ()
    separation_radius: float = 0.015
    cohesion_radius: float = 0.15
    w_sep: float = 0.2
    w_coh: float = 0.4
    w_align: float = 2.0

    def __post_init__(self):
        if self.separation_radius <= 0 or self.cohesion_radius <= 0:
            raise ValueError("flocking radii must be > 0")
        if min(self.w_sep, self.w_coh, self.w_align, 0.0) < 0:
            raise ValueError("flocking gains must be >= 0")
        for _, weight in self.attractors:
            if weight < 0:
                raise ValueError("attractor weights must be >= 0")


def flock_control(
    agent: AgentState,
    teammates: list[AgentState],
    cmd: FlockCommand,
    dyn: DynamicsConfig,
) -> Vec2:
    """Sum of the three steering terms and the attractor springs, clamped to u_max."""
    p, v = agent.position, agent.velocity

    sep = ZERO
    coh_sum = ZERO
    coh_n = 0
    vel_sum = ZERO
    for mate in teammates:
        d = p - mate.position
        dist = d.norm()
        if 0.0 < dist < cmd.separation_radius:
            sep = sep + d * (1.0 / dist)
        if dist < cmd.cohesion_radius:
            coh_sum = coh_sum + mate.position
            coh_n += 1
        vel_sum = vel_sum + mate.velocity

    u = cmd.w_sep * sep
    if coh_n:
        u = u + cmd.w_coh * (coh_sum * (1.0 / coh_n) - p)
    if teammates:
        u = u + cmd.w_align * (vel_sum * (1.0 / len(teammates)) - v)
    for pos, weight in cmd.attractors:
        u = u + weight * (pos - p)
    return u.clamped_norm(dyn.u_max)
