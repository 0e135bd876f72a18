"""Swarm-vs-swarm coverage game: paint a density, your swarm spreads over it,
and sustained presence flips opposing agents that wander into your turf."""

from .config import RunConfig, load_config_file
from .core import (
    AgentState,
    DynamicsConfig,
    Rng,
    Team,
    Vec2,
    integrate_agent,
    spawn_agents,
)
from .engine import (
    CaptureField,
    EngineConfig,
    EventKind,
    GameEvent,
    GameState,
    HeatField,
    compute_capture_field,
    deposit_heat,
    engine_tick,
    new_game,
    resolve_captures,
    state_hash,
)
from .ergodic import (
    BasisConfig,
    CoverageCoefficients,
    ErgodicConfig,
    basis_eval,
    basis_grad,
    compute_control,
    ergodic_metric,
    target_coeffs,
    team_coeffs,
    update_own_coverage,
)
from .flocking import FlockCommand, flock_control
from .painter import (
    GRID_SIZE,
    Brush,
    Stroke,
    TargetDistribution,
    rasterize,
    smooth_and_normalize,
    strokes_from_wire,
    strokes_to_wire,
)
from .sim import CoverageRun, Match, run_coverage
from .recording import Recorder, ReplayResult, export_metrics, replay

__version__ = "0.1.0"

__all__ = [
    "AgentState",
    "BasisConfig",
    "Brush",
    "CaptureField",
    "CoverageCoefficients",
    "CoverageRun",
    "DynamicsConfig",
    "EngineConfig",
    "ErgodicConfig",
    "EventKind",
    "FlockCommand",
    "GRID_SIZE",
    "GameEvent",
    "GameState",
    "HeatField",
    "Match",
    "Recorder",
    "ReplayResult",
    "Rng",
    "RunConfig",
    "Stroke",
    "TargetDistribution",
    "Team",
    "Vec2",
    "basis_eval",
    "basis_grad",
    "compute_capture_field",
    "compute_control",
    "deposit_heat",
    "engine_tick",
    "ergodic_metric",
    "export_metrics",
    "flock_control",
    "integrate_agent",
    "load_config_file",
    "new_game",
    "rasterize",
    "replay",
    "resolve_captures",
    "run_coverage",
    "smooth_and_normalize",
    "spawn_agents",
    "state_hash",
    "strokes_from_wire",
    "strokes_to_wire",
    "target_coeffs",
    "team_coeffs",
    "update_own_coverage",
]
