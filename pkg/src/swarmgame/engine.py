"""Authoritative fixed-timestep game loop: heat trails, capture fields, team switching."""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .core import AgentState, DynamicsConfig, Team, Vec2, integrate_agent


@dataclass(frozen=True)
class EngineConfig:
    grid_size: int = 50
    heat_decay: float = 0.995  # per engine tick
    heat_deposit: float = 1.0
    capture_threshold: float = 0.75  # fraction of the field's max
    activity_floor: float = 1.0  # min field max before any capture is possible


def cell_of(pos: Vec2, grid_size: int) -> tuple[int, int]:
    i = min(int(pos.x * grid_size), grid_size - 1)
    j = min(int(pos.y * grid_size), grid_size - 1)
    return i, j


@dataclass(frozen=True)
class HeatField:
    """Per-team decayed record of where team members have been."""

    red: np.ndarray
    blue: np.ndarray

    @staticmethod
    def zero(grid_size: int) -> "HeatField":
        return HeatField(red=np.zeros((grid_size, grid_size)), blue=np.zeros((grid_size, grid_size)))

    def layer(self, team: Team) -> np.ndarray:
        return self.red if team is Team.RED else self.blue


@dataclass(frozen=True)
class CaptureField:
    """Per-team neighborhood-perimeter means of the heat field."""

    red: np.ndarray
    blue: np.ndarray
    threshold: float
    activity_floor: float

    def layer(self, team: Team) -> np.ndarray:
        return self.red if team is Team.RED else self.blue

    def mask(self, team: Team) -> np.ndarray:
        """Cells where this team captures opponents standing in them."""
        values = self.layer(team)
        top = float(values.max())
        if top <= self.activity_floor:
            return np.zeros_like(values, dtype=bool)
        return values > self.threshold * top


class EventKind(enum.Enum):
    CAPTURE = "capture"
    GAME_OVER = "game_over"


@dataclass(frozen=True)
class GameEvent:
    tick: int
    kind: EventKind
    agent_id: int | None
    from_team: Team | None
    to_team: Team | None


@dataclass(frozen=True)
class GameState:
    tick: int
    agents: tuple[AgentState, ...]
    heat: HeatField
    capture: CaptureField
    events: tuple[GameEvent, ...]
    winner: Team | None = None

    def team_members(self, team: Team) -> list[AgentState]:
        return [a for a in self.agents if a.team is team]

    def team_sizes(self) -> dict[Team, int]:
        sizes = {Team.RED: 0, Team.BLUE: 0}
        for a in self.agents:
            sizes[a.team] += 1
        return sizes


def new_game(agents: list[AgentState], cfg: EngineConfig) -> GameState:
    heat = HeatField.zero(cfg.grid_size)
    capture = compute_capture_field(heat, cfg)
    return GameState(
        tick=0,
        agents=tuple(agents),
        heat=heat,
        capture=capture,
        events=(),
    )


def deposit_heat(heat: HeatField, agents: tuple[AgentState, ...], cfg: EngineConfig) -> HeatField:
    """Decay both layers, then credit each agent's cell to its current team."""
    layers = {Team.RED: heat.red * cfg.heat_decay, Team.BLUE: heat.blue * cfg.heat_decay}
    g = cfg.grid_size
    for a in agents:
        i, j = cell_of(a.position, g)
        layers[a.team][i, j] += cfg.heat_deposit
    return HeatField(red=layers[Team.RED], blue=layers[Team.BLUE])


# The capture neighborhood of a cell is the outer ring of the 5x5 block centered
# on it: the 16 offsets at Chebyshev distance exactly 2, in row-major order.
PERIMETER_OFFSETS = tuple(
    (di, dj) for di in range(-2, 3) for dj in range(-2, 3) if max(abs(di), abs(dj)) == 2
)


@lru_cache(maxsize=8)
def _perimeter_counts(grid_size: int) -> np.ndarray:
    ones = np.pad(np.ones((grid_size, grid_size)), 2)
    count = np.zeros((grid_size, grid_size))
    for di, dj in PERIMETER_OFFSETS:
        count += ones[2 + di : 2 + di + grid_size, 2 + dj : 2 + dj + grid_size]
    return count


def _perimeter_mean(layer: np.ndarray) -> np.ndarray:
    g = layer.shape[0]
    padded = np.pad(layer, 2)
    acc = np.zeros_like(layer)
    for di, dj in PERIMETER_OFFSETS:
        acc += padded[2 + di : 2 + di + g, 2 + dj : 2 + dj + g]
    return acc / _perimeter_counts(g)


def compute_capture_field(heat: HeatField, cfg: EngineConfig) -> CaptureField:
    """Each cell's value is the mean heat over the in-bounds cells of its perimeter."""
    return CaptureField(
        red=_perimeter_mean(heat.red),
        blue=_perimeter_mean(heat.blue),
        threshold=cfg.capture_threshold,
        activity_floor=cfg.activity_floor,
    )


def resolve_captures(state: GameState, cfg: EngineConfig) -> GameState:
    """Flip every agent standing in the opposing capture mask, all simultaneously.

    Masks are frozen for the whole resolution, so mutual captures both fire and
    the outcome is independent of agent order. The winner is set as soon as a
    team reaches zero agents.
    """
    masks = {team: state.capture.mask(team) for team in (Team.RED, Team.BLUE)}
    g = cfg.grid_size
    new_agents = []
    events = list(state.events)
    for a in state.agents:
        i, j = cell_of(a.position, g)
        if masks[a.team.other][i, j]:
            new_agents.append(replace(a, team=a.team.other))
            events.append(
                GameEvent(
                    tick=state.tick,
                    kind=EventKind.CAPTURE,
                    agent_id=a.id,
                    from_team=a.team,
                    to_team=a.team.other,
                )
            )
        else:
            new_agents.append(a)

    winner = state.winner
    if winner is None:
        sizes = {Team.RED: 0, Team.BLUE: 0}
        for a in new_agents:
            sizes[a.team] += 1
        for team in (Team.RED, Team.BLUE):
            if sizes[team] == 0:
                winner = team.other
                events.append(
                    GameEvent(
                        tick=state.tick,
                        kind=EventKind.GAME_OVER,
                        agent_id=None,
                        from_team=None,
                        to_team=winner,
                    )
                )
    return replace(state, agents=tuple(new_agents), events=tuple(events), winner=winner)


def engine_tick(
    state: GameState,
    controls: dict[int, Vec2],
    cfg: EngineConfig,
    dyn: DynamicsConfig,
) -> GameState:
    """Advance one engine tick; a no-op once the game is over.

    Order: integrate agents, deposit heat, recompute capture fields, resolve
    captures against those freshly computed fields, advance the tick counter.
    """
    if state.winner is not None:
        return state
    missing = [a.id for a in state.agents if a.id not in controls]
    if missing or len(controls) != len(state.agents):
        raise ValueError(
            f"need exactly one control per agent: missing={missing}, got {len(controls)}"
        )
    agents = tuple(
        integrate_agent(a, controls[a.id], dyn.dt_engine, dyn) for a in state.agents
    )
    heat = deposit_heat(state.heat, agents, cfg)
    capture = compute_capture_field(heat, cfg)
    moved = replace(state, tick=state.tick + 1, agents=agents, heat=heat, capture=capture)
    return resolve_captures(moved, cfg)


def state_hash(state: GameState) -> str:
    """Stable digest of the authoritative state, for record/replay verification."""
    h = hashlib.sha256()
    h.update(str(state.tick).encode())
    h.update((state.winner.value if state.winner else "none").encode())
    for a in state.agents:
        h.update(str(a.id).encode())
        h.update(a.team.value.encode())
        h.update(np.array([a.position.x, a.position.y, a.velocity.x, a.velocity.y, a.altitude]).tobytes())
    h.update(state.heat.red.tobytes())
    h.update(state.heat.blue.tobytes())
    return h.hexdigest()
