"""Record, replay, and metrics export.

A recorded run is a set of sibling files sharing one base path:

* ``<base>.record.jsonl``  — header (config), one line per tick with the
  commands applied that tick and the post-tick agent states, and a final
  line with the authoritative state hash and winner.
* ``<base>.commands.jsonl`` — just the command stream, one line per command.
* ``<base>.events.jsonl``   — capture / game-over events as they happened.
* ``<base>.teamsize.csv``   — per-tick team sizes (``time_s,red_count,blue_count``).

Replaying the record file reconstructs the run from the header config and
the command stream alone and checks the final hash and the regenerated
event log byte-for-byte.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from .config import RunConfig
from .core import Team
from .engine import EventKind, GameEvent, GameState, state_hash
from .sim import Match

RECORD_SUFFIX = ".record.jsonl"


def _dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def event_to_wire(event: GameEvent) -> dict:
    if event.kind is EventKind.CAPTURE:
        return {
            "type": "event",
            "kind": "capture",
            "tick": event.tick,
            "agent": event.agent_id,
            "from": event.from_team.value,
            "to": event.to_team.value,
        }
    return {
        "type": "game_over",
        "tick": event.tick,
        "winner": event.to_team.value,
    }


def _agent_row(agent) -> dict:
    return {
        "id": agent.id,
        "team": agent.team.value,
        "x": agent.position.x,
        "y": agent.position.y,
        "vx": agent.velocity.x,
        "vy": agent.velocity.y,
        "alt": agent.altitude,
    }


def base_path_of(path: str) -> str:
    """Accept either the base path or the ``.record.jsonl`` file itself."""
    return path[: -len(RECORD_SUFFIX)] if path.endswith(RECORD_SUFFIX) else path


class Recorder:
    """Streams a run's record, command, and event files; call close() when done."""

    def __init__(self, base_path: str, cfg: RunConfig):
        directory = os.path.dirname(base_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        self.base = base_path
        self._record = open(base_path + RECORD_SUFFIX, "w")
        self._commands = open(base_path + ".commands.jsonl", "w")
        self._events = open(base_path + ".events.jsonl", "w")
        self._sizes: list[tuple[int, int, int]] = []
        self._record.write(_dumps({"type": "header", "config": cfg.to_dict()}) + "\n")

    def on_start(self, state: GameState) -> None:
        sizes = state.team_sizes()
        self._sizes.append((state.tick, sizes[Team.RED], sizes[Team.BLUE]))

    def on_tick(
        self, state: GameState, commands: list[tuple[Team, dict]], events: list[GameEvent]
    ) -> None:
        record = {
            "type": "tick",
            "tick": state.tick,
            "commands": [[team.value, message] for team, message in commands],
            "agents": [_agent_row(a) for a in state.agents],
        }
        self._record.write(_dumps(record) + "\n")
        for team, message in commands:
            self._commands.write(
                _dumps({"tick": state.tick, "team": team.value, "message": message}) + "\n"
            )
        for event in events:
            self._events.write(_dumps(event_to_wire(event)) + "\n")
        sizes = state.team_sizes()
        self._sizes.append((state.tick, sizes[Team.RED], sizes[Team.BLUE]))

    def close(self, state: GameState, dt_engine: float) -> None:
        final = {
            "type": "final",
            "tick": state.tick,
            "state_hash": state_hash(state),
            "winner": state.winner.value if state.winner else None,
        }
        self._record.write(_dumps(final) + "\n")
        for handle in (self._record, self._commands, self._events):
            handle.close()
        with open(self.base + ".teamsize.csv", "w") as fh:
            fh.write("time_s,red_count,blue_count\n")
            for tick, red, blue in self._sizes:
                fh.write(f"{tick * dt_engine:.6f},{red},{blue}\n")


@dataclass
class ReplayResult:
    ticks: int
    recorded_hash: str
    replayed_hash: str
    events_match: bool
    winner: str | None

    @property
    def ok(self) -> bool:
        return self.recorded_hash == self.replayed_hash and self.events_match


def read_record(path: str) -> tuple[RunConfig, list[dict], dict]:
    """Parse a record file into (config, tick records, final record)."""
    header = None
    ticks: list[dict] = []
    final = None
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            kind = record.get("type")
            if kind == "header":
                header = record
            elif kind == "tick":
                ticks.append(record)
            elif kind == "final":
                final = record
            else:
                raise ValueError(f"{path}:{lineno}: unknown record type {kind!r}")
    if header is None or final is None:
        raise ValueError(f"{path}: missing header or final record")
    cfg = RunConfig.from_dict(header["config"])
    return cfg, ticks, final


def replay(record_path: str) -> ReplayResult:
    """Re-run a recorded game from its command stream and verify it.

    Checks the final state hash against the recorded one and, when the
    sibling event log exists, that the regenerated event log is
    byte-identical to it.
    """
    base = base_path_of(record_path)
    cfg, ticks, final = read_record(base + RECORD_SUFFIX)
    commands_by_tick: dict[int, list[tuple[Team, dict]]] = {}
    for record in ticks:
        commands_by_tick[record["tick"]] = [
            (Team(team), message) for team, message in record.get("commands", [])
        ]

    match = Match(cfg)
    event_lines: list[str] = []
    last_tick = final["tick"]
    while match.state.tick < last_tick and match.state.winner is None:
        upcoming = match.state.tick + 1
        events = match.step(commands_by_tick.get(upcoming, []))
        for event in events:
            event_lines.append(_dumps(event_to_wire(event)) + "\n")

    replayed_hash = state_hash(match.state)
    events_path = base + ".events.jsonl"
    if os.path.exists(events_path):
        with open(events_path) as fh:
            events_match = fh.read() == "".join(event_lines)
    else:
        events_match = True
    return ReplayResult(
        ticks=match.state.tick,
        recorded_hash=final["state_hash"],
        replayed_hash=replayed_hash,
        events_match=events_match,
        winner=match.state.winner.value if match.state.winner else None,
    )


def export_metrics(events_path: str, out_path: str, cfg: RunConfig, total_ticks: int) -> None:
    """Derive the per-tick team-size series from an event log.

    Sizes start at ``agents_per_team`` each and change only at capture
    events; a malformed event line fails with its line number.
    """
    deltas: dict[int, tuple[int, int]] = {}
    with open(events_path) as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                event = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{events_path}:{lineno}: invalid JSON: {exc}") from exc
            if event.get("type") == "game_over":
                continue
            if event.get("type") != "event" or event.get("kind") != "capture":
                raise ValueError(f"{events_path}:{lineno}: unrecognized event record")
            try:
                tick = event["tick"]
                gained = Team(event["to"])
            except (KeyError, ValueError) as exc:
                raise ValueError(f"{events_path}:{lineno}: malformed capture event") from exc
            if not isinstance(tick, int) or tick < 0 or tick > total_ticks:
                raise ValueError(f"{events_path}:{lineno}: tick {tick!r} out of range")
            dr, db = deltas.get(tick, (0, 0))
            if gained is Team.RED:
                deltas[tick] = (dr + 1, db - 1)
            else:
                deltas[tick] = (dr - 1, db + 1)

    red = blue = cfg.agents_per_team
    dt = cfg.dynamics().dt_engine
    directory = os.path.dirname(out_path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(out_path, "w") as fh:
        fh.write("time_s,red_count,blue_count\n")
        for tick in range(total_ticks + 1):
            dr, db = deltas.get(tick, (0, 0))
            red += dr
            blue += db
            fh.write(f"{tick * dt:.6f},{red},{blue}\n")
