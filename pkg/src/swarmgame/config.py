"""Flat run configuration: one key-value namespace covering every tunable."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .core import DynamicsConfig
from .engine import EngineConfig
from .ergodic import BasisConfig, ErgodicConfig

CONTROLLER_KINDS = ("ergodic", "flocking")
MODES = ("serve", "headless", "replay")
BOT_KINDS = ("uniform", "stationary", "surround")  # plus "script:PATH"


@dataclass
class RunConfig:
    # run
    mode: str = "headless"
    agents_per_team: int = 12
    seed: int = 0
    max_ticks: int = 3600
    red_controller: str = "ergodic"
    blue_controller: str = "ergodic"
    red_bot: str | None = None
    blue_bot: str | None = None
    port: int = 8000
    record: str | None = None
    replay: str | None = None
    metrics_out: str | None = None
    # dynamics
    dt_control: float = 0.1
    engine_substeps: int = 3
    v_max: float = 0.2
    u_max: float = 1.0
    # engine
    grid_size: int = 50
    heat_decay: float = 0.995
    heat_deposit: float = 1.0
    capture_threshold: float = 0.75
    activity_floor: float = 1.0
    # ergodic control
    num_coeffs: int = 8
    q: float = 1.0
    r_diag: float = 0.01
    horizon: float = 0.5
    horizon_steps: int = 10
    barrier_alpha: float = 100.0
    barrier_margin: float = 0.02
    t_mem: float = 10.0
    # painter
    smooth_sigma: float = 1.5

    def dynamics(self) -> DynamicsConfig:
        return DynamicsConfig(
            dt_control=self.dt_control,
            engine_substeps=self.engine_substeps,
            v_max=self.v_max,
            u_max=self.u_max,
        )

    def engine(self) -> EngineConfig:
        return EngineConfig(
            grid_size=self.grid_size,
            heat_decay=self.heat_decay,
            heat_deposit=self.heat_deposit,
            capture_threshold=self.capture_threshold,
            activity_floor=self.activity_floor,
        )

    def ergodic(self) -> ErgodicConfig:
        return ErgodicConfig(
            q=self.q,
            r_diag=self.r_diag,
            horizon=self.horizon,
            horizon_steps=self.horizon_steps,
            barrier_alpha=self.barrier_alpha,
            barrier_margin=self.barrier_margin,
            t_mem=self.t_mem,
        )

    def basis(self) -> BasisConfig:
        return BasisConfig(num_coeffs=self.num_coeffs)

    def validate(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.agents_per_team < 1:
            raise ValueError("agents_per_team must be >= 1")
        if self.max_ticks < 1:
            raise ValueError("max_ticks must be >= 1")
        for name in ("red_controller", "blue_controller"):
            value = getattr(self, name)
            if value not in CONTROLLER_KINDS:
                raise ValueError(f"{name} must be one of {CONTROLLER_KINDS}, got {value!r}")
        for name in ("red_bot", "blue_bot"):
            value = getattr(self, name)
            if value is not None and value not in BOT_KINDS and not value.startswith("script:"):
                raise ValueError(f"{name} must be one of {BOT_KINDS} or script:PATH, got {value!r}")
        if not (0 < self.port < 65536):
            raise ValueError(f"port out of range: {self.port}")
        if not (0 < self.capture_threshold < 1):
            raise ValueError("capture_threshold must be in (0, 1)")
        if not (0 < self.heat_decay < 1):
            raise ValueError("heat_decay must be in (0, 1)")
        if self.grid_size < 5:
            raise ValueError("grid_size must be >= 5")
        self.dynamics().validate()

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @staticmethod
    def from_dict(values: dict) -> "RunConfig":
        known = {f.name for f in dataclasses.fields(RunConfig)}
        unknown = set(values) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cfg = RunConfig(**values)
        cfg.validate()
        return cfg


def _coerce(name: str, text: str, target_type) -> object:
    if target_type is bool:
        return text.lower() in ("1", "true", "yes")
    if target_type is int:
        return int(text)
    if target_type is float:
        return float(text)
    if text.lower() in ("none", ""):
        return None
    return text


def load_config_file(path: str) -> dict:
    """Parse a flat `key = value` config file; errors carry file and line number."""
    fields = {f.name: f for f in dataclasses.fields(RunConfig)}
    values: dict = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {stripped!r}")
            key, _, raw = stripped.partition("=")
            key = key.strip()
            raw = raw.strip()
            if key not in fields:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            base_type = {"int": int, "float": float, "str": str}.get(
                fields[key].type.replace(" | None", ""), str
            )
            try:
                values[key] = _coerce(key, raw, base_type)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: bad value for {key!r}: {exc}") from exc
    return values
