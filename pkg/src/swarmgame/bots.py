"""Built-in opponents.

Each bot observes the public game state and emits wire-format command
messages, exactly as a human player at a websocket would.  Bots are
deterministic: same seed and same observed states, same commands.
"""

from __future__ import annotations

import json
import math

from .core import Team, Vec2
from .engine import GameState
from .sim import COMMAND_TYPES

DEFAULT_INTERVAL_S = 5.0


class Bot:
    """Base class; subclasses override :meth:`step`."""

    def __init__(self, team: Team):
        self.team = team

    def step(self, state: GameState) -> list[dict]:
        raise NotImplementedError


class StationaryBot(Bot):
    """Never commands; its team coasts in place."""

    def step(self, state: GameState) -> list[dict]:
        return []


class UniformCoverageBot(Bot):
    """Sends one empty stroke command, installing the uniform target."""

    def __init__(self, team: Team):
        super().__init__(team)
        self._sent = False

    def step(self, state: GameState) -> list[dict]:
        if self._sent:
            return []
        self._sent = True
        return [{"type": "command_strokes", "strokes": []}]


class SurroundCentroidBot(Bot):
    """Paints an attract ring around the opposing team's centroid.

    The ring is refreshed every ``interval_s`` seconds (clearing the old
    one first), so it tracks the opponents as they move.
    """

    def __init__(
        self,
        team: Team,
        interval_s: float = DEFAULT_INTERVAL_S,
        ring_radius: float = 0.15,
        brush_radius: float = 0.05,
        segments: int = 24,
        ticks_per_second: float = 30.0,
    ):
        super().__init__(team)
        self.interval_ticks = max(1, int(round(interval_s * ticks_per_second)))
        self.ring_radius = ring_radius
        self.brush_radius = brush_radius
        self.segments = segments

    def _ring_points(self, center: Vec2) -> list[list[float]]:
        pts = []
        for i in range(self.segments + 1):
            theta = 2.0 * math.pi * i / self.segments
            x = center.x + self.ring_radius * math.cos(theta)
            y = center.y + self.ring_radius * math.sin(theta)
            pts.append([min(max(x, 0.0), 1.0), min(max(y, 0.0), 1.0)])
        return pts

    def step(self, state: GameState) -> list[dict]:
        if state.tick % self.interval_ticks != 0:
            return []
        opponents = state.team_members(self.team.other)
        if not opponents:
            return []
        cx = sum(a.position.x for a in opponents) / len(opponents)
        cy = sum(a.position.y for a in opponents) / len(opponents)
        stroke = {
            "points": self._ring_points(Vec2(cx, cy)),
            "radius": self.brush_radius,
            "brush": "attract",
        }
        return [
            {"type": "clear"},
            {"type": "command_strokes", "strokes": [stroke]},
        ]


class ScriptBot(Bot):
    """Replays a recorded command log (the recorder's ``.commands.jsonl`` format).

    Lines are ``{"tick": int, "team": "red"|"blue", "message": {...}}``; the
    bot emits only its own team's commands. Record ticks mark when a command
    took effect, so the bot emits one tick ahead to land on the same tick.
    Malformed lines fail at load time, never mid-game.
    """

    def __init__(self, team: Team, path: str):
        super().__init__(team)
        self.by_tick: dict[int, list[dict]] = {}
        with open(path) as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise ValueError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
                if not isinstance(record, dict) or "tick" not in record or "message" not in record:
                    raise ValueError(
                        f"{path}:{lineno}: expected object with 'tick' and 'message'"
                    )
                tick = record["tick"]
                message = record["message"]
                if not isinstance(tick, int) or tick < 0:
                    raise ValueError(f"{path}:{lineno}: 'tick' must be a non-negative integer")
                if not isinstance(message, dict) or message.get("type") not in COMMAND_TYPES:
                    raise ValueError(
                        f"{path}:{lineno}: 'message' must be a command of type "
                        f"{COMMAND_TYPES}"
                    )
                owner = record.get("team")
                if owner is not None and owner not in ("red", "blue"):
                    raise ValueError(f"{path}:{lineno}: 'team' must be 'red' or 'blue'")
                if owner is None or owner == team.value:
                    self.by_tick.setdefault(max(tick - 1, 0), []).append(message)

    def step(self, state: GameState) -> list[dict]:
        return list(self.by_tick.get(state.tick, []))


def make_bot(spec: str, team: Team) -> Bot:
    """Build a bot from its command-line name (``uniform``, ``script:PATH``...)."""
    if spec == "uniform":
        return UniformCoverageBot(team)
    if spec == "stationary":
        return StationaryBot(team)
    if spec == "surround":
        return SurroundCentroidBot(team)
    if spec.startswith("script:"):
        return ScriptBot(team, spec.split(":", 1)[1])
    raise ValueError(f"unknown bot kind: {spec!r}")
