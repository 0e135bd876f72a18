"""Match orchestration: commands in, fixed-timestep ticks out.

A :class:`Match` owns the game state plus everything the engine itself does
not track: per-team target distributions, per-agent coverage statistics, and
the zero-order-held control for each agent.  Controls are recomputed every
``engine_substeps`` ticks (the control rate); the engine integrates at the
finer tick rate in between.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import RunConfig
from .core import ZERO, AgentState, Rng, Team, Vec2, spawn_agents
from .engine import GameEvent, GameState, engine_tick, new_game
from .ergodic import (
    CoverageCoefficients,
    compute_control,
    ergodic_metric,
    target_coeffs,
    team_coeffs,
    update_own_coverage,
)
from .flocking import FlockCommand, flock_control
from .painter import TargetDistribution, rasterize, smooth_and_normalize, strokes_from_wire

COMMAND_TYPES = ("command_strokes", "command_flock", "clear")


@dataclass
class TeamSetup:
    """Mutable per-team command state."""

    controller: str = "ergodic"
    target: TargetDistribution | None = None
    phi: np.ndarray | None = None  # spectral coefficients of target
    flock: FlockCommand | None = None
    generation: int = 0


def parse_flock_command(message: dict) -> FlockCommand:
    attractors = []
    try:
        for entry in message.get("attractors", []):
            point = Vec2(float(entry["x"]), float(entry["y"]))
            weight = float(entry.get("weight", 1.0))
            attractors.append((point, weight))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed flock command: {exc}") from exc
    return FlockCommand(attractors=tuple(attractors))


class Match:
    """A full two-team game driven by wire-format commands."""

    def __init__(self, cfg: RunConfig):
        cfg.validate()
        self.cfg = cfg
        self.dyn = cfg.dynamics()
        self.engine_cfg = cfg.engine()
        self.erg = cfg.ergodic()
        self.basis = cfg.basis()
        self.rng = Rng(cfg.seed)
        agents = spawn_agents(cfg.agents_per_team, self.rng)
        self.state: GameState = new_game(agents, self.engine_cfg)
        self.teams: dict[Team, TeamSetup] = {
            Team.RED: TeamSetup(controller=cfg.red_controller),
            Team.BLUE: TeamSetup(controller=cfg.blue_controller),
        }
        self.coverage: dict[int, CoverageCoefficients] = {
            a.id: CoverageCoefficients.zero(self.basis, self.erg.coverage_gamma(self.dyn))
            for a in agents
        }
        self.held: dict[int, Vec2] = {a.id: ZERO for a in agents}

    # -- commands ---------------------------------------------------------

    def apply_command(self, team: Team, message: dict) -> None:
        kind = message.get("type")
        setup = self.teams[team]
        if kind == "command_strokes":
            strokes = strokes_from_wire(message.get("strokes", []))
            base = setup.target.raw if setup.target is not None else None
            raw = rasterize(strokes, base=base, grid_size=self.cfg.grid_size)
            setup.generation += 1
            setup.target = smooth_and_normalize(
                raw, sigma=self.cfg.smooth_sigma, generation=setup.generation
            )
            setup.phi = target_coeffs(setup.target.grid, self.basis)
        elif kind == "clear":
            base = np.zeros((self.cfg.grid_size, self.cfg.grid_size))
            setup.generation += 1
            setup.target = smooth_and_normalize(
                base, sigma=self.cfg.smooth_sigma, generation=setup.generation
            )
            setup.phi = target_coeffs(setup.target.grid, self.basis)
        elif kind == "command_flock":
            setup.flock = parse_flock_command(message)
        else:
            raise ValueError(f"unknown command type: {kind!r}")

    # -- control ----------------------------------------------------------

    def _recompute_controls(self) -> None:
        # Coverage statistics advance for every agent at the control rate, so
        # an agent captured into an ergodic team arrives with a meaningful
        # time average already in hand.
        for agent in self.state.agents:
            self.coverage[agent.id] = update_own_coverage(
                self.coverage[agent.id], agent.position, self.basis
            )
        for team in (Team.RED, Team.BLUE):
            setup = self.teams[team]
            members = self.state.team_members(team)
            if not members:
                continue
            if setup.controller == "ergodic" and setup.phi is not None:
                shared = team_coeffs([self.coverage[a.id] for a in members])
                for agent in members:
                    self.held[agent.id] = compute_control(
                        agent, shared, setup.phi, self.basis, self.erg, self.dyn
                    )
            elif setup.controller == "flocking" and setup.flock is not None:
                for agent in members:
                    mates = [m for m in members if m.id != agent.id]
                    self.held[agent.id] = flock_control(agent, mates, setup.flock, self.dyn)
            else:
                # No command yet: the team coasts.
                for agent in members:
                    self.held[agent.id] = ZERO

    # -- stepping ---------------------------------------------------------

    def step(self, commands: list[tuple[Team, dict]] = ()) -> list[GameEvent]:
        """Apply queued commands, advance one engine tick, return new events."""
        if self.state.winner is not None:
            return []
        for team, message in commands:
            self.apply_command(team, message)
        if self.state.tick % self.dyn.engine_substeps == 0:
            self._recompute_controls()
        before = len(self.state.events)
        self.state = engine_tick(self.state, dict(self.held), self.engine_cfg, self.dyn)
        return list(self.state.events[before:])

    def run(self, max_ticks: int) -> GameState:
        for _ in range(max_ticks):
            if self.state.winner is not None:
                break
            self.step()
        return self.state

    def ergodic_metric_for(self, team: Team) -> float | None:
        setup = self.teams[team]
        if setup.phi is None:
            return None
        members = self.state.team_members(team)
        if not members:
            return None
        shared = team_coeffs([self.coverage[a.id] for a in members])
        return ergodic_metric(shared, setup.phi, self.basis, self.erg.q)


# -- single-team coverage sessions ----------------------------------------


@dataclass
class CoverageRun:
    """Trace of a captures-off, single-team coverage session."""

    metric: list[float] = field(default_factory=list)  # sampled per control step
    positions: list[list[Vec2]] = field(default_factory=list)
    agents: list[AgentState] = field(default_factory=list)


def run_coverage(
    agents: list[AgentState],
    target: TargetDistribution,
    seconds: float,
    cfg: RunConfig | None = None,
) -> CoverageRun:
    """Drive one team toward ``target`` with no opponent and no captures.

    The trace records the team ergodic metric at every control step (index 0
    is the pre-motion value) and the agent positions alongside it.
    """
    from .core import integrate_agent  # local import keeps module header light

    cfg = cfg or RunConfig()
    dyn, erg, basis = cfg.dynamics(), cfg.ergodic(), cfg.basis()
    phi = target_coeffs(target.grid, basis)
    gamma = erg.coverage_gamma(dyn)
    coverage = {a.id: CoverageCoefficients.zero(basis, gamma) for a in agents}
    current = list(agents)
    trace = CoverageRun()

    steps = int(round(seconds / dyn.dt_control))
    shared = team_coeffs([coverage[a.id] for a in current])
    trace.metric.append(ergodic_metric(shared, phi, basis, erg.q))
    trace.positions.append([a.position for a in current])
    for _ in range(steps):
        for agent in current:
            coverage[agent.id] = update_own_coverage(coverage[agent.id], agent.position, basis)
        shared = team_coeffs([coverage[a.id] for a in current])
        controls = {
            a.id: compute_control(a, shared, phi, basis, erg, dyn) for a in current
        }
        for _ in range(dyn.engine_substeps):
            current = [integrate_agent(a, controls[a.id], dyn.dt_engine, dyn) for a in current]
        trace.metric.append(ergodic_metric(shared, phi, basis, erg.q))
        trace.positions.append([a.position for a in current])
    trace.agents = current
    return trace
