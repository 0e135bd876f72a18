"""Shared domain types, agent dynamics, and the seeded RNG used everywhere else."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np


class Team(enum.Enum):
    RED = "red"
    BLUE = "blue"

    @property
    def other(self) -> "Team":
        return Team.BLUE if self is Team.RED else Team.RED


@dataclass(frozen=True)
class Vec2:
    x: float
    y: float

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __mul__(self, s: float) -> "Vec2":
        return Vec2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def clamped_norm(self, limit: float) -> "Vec2":
        n = self.norm()
        if n > limit:
            return Vec2(self.x * limit / n, self.y * limit / n)
        return self

    def is_finite(self) -> bool:
        return math.isfinite(self.x) and math.isfinite(self.y)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=float)


ZERO = Vec2(0.0, 0.0)


@dataclass(frozen=True)
class AgentState:
    id: int
    team: Team
    position: Vec2
    velocity: Vec2
    altitude: float  # cosmetic, fixed at spawn


@dataclass(frozen=True)
class DynamicsConfig:
    """Rates for the double-integrator agents.

    Controls run every `engine_substeps` engine ticks, so
    dt_engine = dt_control / engine_substeps (defaults: 10 Hz control, 30 Hz engine).
    """

    dt_control: float = 0.1
    engine_substeps: int = 3
    v_max: float = 0.2
    u_max: float = 1.0

    @property
    def dt_engine(self) -> float:
        return self.dt_control / self.engine_substeps

    def validate(self) -> None:
        if self.dt_control <= 0 or self.engine_substeps < 1:
            raise ValueError("dt_control must be > 0 and engine_substeps >= 1")
        if self.v_max <= 0 or self.u_max <= 0:
            raise ValueError("v_max and u_max must be > 0")


class Rng:
    """Deterministic random source: same seed + same call sequence -> same outputs."""

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def uniform(self, low: float = 0.0, high: float = 1.0) -> float:
        return float(self._gen.uniform(low, high))

    def integer(self, low: int, high: int) -> int:
        """Integer in [low, high)."""
        return int(self._gen.integers(low, high))

    def permutation(self, n: int) -> list[int]:
        return [int(v) for v in self._gen.permutation(n)]

    def spawn_child(self) -> "Rng":
        return Rng(self.integer(0, 2**63))


def integrate_agent(a: AgentState, u: Vec2, dt: float, dyn: DynamicsConfig) -> AgentState:
    """One semi-implicit Euler step with speed and arena clamps.

    The clamps are a safety net beneath the controller's wall barrier: positions
    never leave [0,1]^2 and the normal velocity component is zeroed on contact.
    """
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    if not u.is_finite():
        raise ValueError(f"non-finite control for agent {a.id}: {u}")

    v = (a.velocity + u * dt).clamped_norm(dyn.v_max)
    px = a.position.x + v.x * dt
    py = a.position.y + v.y * dt
    vx, vy = v.x, v.y
    if px < 0.0 or px > 1.0:
        px = min(max(px, 0.0), 1.0)
        vx = 0.0
    if py < 0.0 or py > 1.0:
        py = min(max(py, 0.0), 1.0)
        vy = 0.0
    return replace(a, position=Vec2(px, py), velocity=Vec2(vx, vy))


# Spawn corners per team; each entry is the lower-left of a 0.1 x 0.1 box.
_CORNER_BOXES = {
    Team.RED: [(0.0, 0.0), (0.9, 0.0)],
    Team.BLUE: [(0.9, 0.9), (0.0, 0.9)],
}


def spawn_agents(n_per_team: int, rng: Rng) -> list[AgentState]:
    """Spawn both teams in their corner boxes, round-robin over each team's two corners.

    Red holds the bottom corners, blue the top; ids are 0..n-1 red then n..2n-1 blue.
    Altitudes are distinct levels in (0, 1), shuffled without replacement.
    """
    if n_per_team < 1:
        raise ValueError("n_per_team must be >= 1")
    total = 2 * n_per_team
    levels = rng.permutation(total)
    agents: list[AgentState] = []
    next_id = 0
    for team in (Team.RED, Team.BLUE):
        boxes = _CORNER_BOXES[team]
        for i in range(n_per_team):
            bx, by = boxes[i % 2]
            pos = Vec2(bx + 0.1 * rng.uniform(), by + 0.1 * rng.uniform())
            altitude = (levels[next_id] + 1) / (total + 1)
            agents.append(
                AgentState(id=next_id, team=team, position=pos, velocity=ZERO, altitude=altitude)
            )
            next_id += 1
    return agents
