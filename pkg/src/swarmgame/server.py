"""Websocket game server.

One engine task advances the match in real time; client sessions only parse
messages into the pending-command queue and drain their own outbound queues.
Commands are applied atomically at tick boundaries, snapshots are full-state
JSON frames, and a slow client loses its oldest snapshots rather than ever
stalling the engine.
"""

from __future__ import annotations

import asyncio
import contextlib
import json
import time

import numpy as np
from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from .bots import Bot
from .config import RunConfig
from .core import Team
from .recording import Recorder, event_to_wire
from .sim import COMMAND_TYPES, Match

CLIENT_QUEUE_SIZE = 32


def _normalized_layer(values: np.ndarray, floor: float) -> list[float]:
    top = float(values.max())
    if top <= floor:
        return [0.0] * values.size
    return [round(float(v), 4) for v in (values / top).ravel()]


def state_message(match: Match) -> dict:
    """Full-state snapshot: agents plus both capture layers scaled to [0, 1]."""
    state = match.state
    floor = match.engine_cfg.activity_floor
    sizes = state.team_sizes()
    return {
        "type": "state",
        "tick": state.tick,
        "agents": [
            {
                "id": a.id,
                "team": a.team.value,
                "x": round(a.position.x, 5),
                "y": round(a.position.y, 5),
                "vx": round(a.velocity.x, 5),
                "vy": round(a.velocity.y, 5),
            }
            for a in state.agents
        ],
        "fields": {
            "red": _normalized_layer(state.capture.red, floor),
            "blue": _normalized_layer(state.capture.blue, floor),
        },
        "team_sizes": {"red": sizes[Team.RED], "blue": sizes[Team.BLUE]},
    }


class Session:
    _next_id = 0

    def __init__(self) -> None:
        Session._next_id += 1
        self.id = Session._next_id
        self.role: str = "spectator"
        self.joined = False
        self.last_command_generation = 0
        self.queue: asyncio.Queue[str] = asyncio.Queue(maxsize=CLIENT_QUEUE_SIZE)

    def offer(self, frame: str) -> None:
        """Enqueue without blocking; drop the oldest frame when full."""
        while True:
            try:
                self.queue.put_nowait(frame)
                return
            except asyncio.QueueFull:
                try:
                    self.queue.get_nowait()
                except asyncio.QueueEmpty:
                    pass


class GameHost:
    """Owns the match, the sessions, and the fixed-rate engine loop."""

    def __init__(self, cfg: RunConfig, bots: list[Bot] | None = None,
                 recorder: Recorder | None = None):
        self.cfg = cfg
        self.match = Match(cfg)
        self.bots = bots or []
        self.recorder = recorder
        self.pending: list[tuple[Team, dict]] = []
        self.sessions: set[Session] = set()
        self.players: dict[Team, Session | None] = {Team.RED: None, Team.BLUE: None}
        self.bot_teams = {bot.team for bot in self.bots}
        self.ticks_run = 0
        self.finished = asyncio.Event()
        if recorder is not None:
            recorder.on_start(self.match.state)

    # -- session management -------------------------------------------------

    def handle_join(self, session: Session, message: dict) -> dict:
        role = message.get("role")
        if role not in ("red", "blue", "spectator"):
            return {"type": "rejected", "reason": "bad_role"}
        if role == "spectator":
            session.role = "spectator"
            session.joined = True
            return {"type": "joined", "role": "spectator", "config": self.cfg.to_dict()}
        team = Team(role)
        if team in self.bot_teams or self.players[team] is not None:
            return {"type": "rejected", "reason": "team_taken"}
        self.players[team] = session
        session.role = role
        session.joined = True
        return {"type": "joined", "role": role, "config": self.cfg.to_dict()}

    def handle_message(self, session: Session, message: dict) -> dict | None:
        """Returns an immediate reply, or None when the message just enqueues."""
        kind = message.get("type")
        if kind == "join":
            return self.handle_join(session, message)
        if kind in COMMAND_TYPES:
            if session.role not in ("red", "blue"):
                return {"type": "rejected", "reason": "not_a_player"}
            team = Team(session.role)
            try:
                # Parse eagerly so a malformed command errors back to its
                # sender instead of poisoning the engine loop.
                self._validate_command(message)
            except ValueError as exc:
                return {"type": "rejected", "reason": f"malformed: {exc}"}
            session.last_command_generation += 1
            self.pending.append((team, message))
            return None
        return {"type": "rejected", "reason": f"unknown_type:{kind}"}

    def _validate_command(self, message: dict) -> None:
        from .painter import strokes_from_wire
        from .sim import parse_flock_command

        if message["type"] == "command_strokes":
            strokes_from_wire(message.get("strokes", []))
        elif message["type"] == "command_flock":
            parse_flock_command(message)

    def drop_session(self, session: Session) -> None:
        self.sessions.discard(session)
        for team, holder in self.players.items():
            if holder is session:
                self.players[team] = None

    # -- engine loop ----------------------------------------------------------

    def advance_tick(self) -> list[dict]:
        """One engine tick: bots observe, commands apply, state advances."""
        for bot in self.bots:
            for message in bot.step(self.match.state):
                self.pending.append((bot.team, message))
        commands, self.pending = self.pending, []
        events = self.match.step(commands)
        self.ticks_run += 1
        if self.recorder is not None:
            self.recorder.on_tick(self.match.state, commands, events)
        frames = [json.dumps(state_message(self.match))]
        frames.extend(json.dumps(event_to_wire(e)) for e in events)
        return frames

    def broadcast(self, frames: list[dict]) -> None:
        for frame in frames:
            for session in self.sessions:
                session.offer(frame)

    async def engine_loop(self) -> None:
        dt = self.match.dyn.dt_engine
        next_deadline = time.monotonic()
        try:
            while self.match.state.winner is None and self.ticks_run < self.cfg.max_ticks:
                frames = self.advance_tick()
                self.broadcast(frames)
                next_deadline += dt
                delay = next_deadline - time.monotonic()
                if delay > 0:
                    await asyncio.sleep(delay)
                else:
                    next_deadline = time.monotonic()
                    await asyncio.sleep(0)
        finally:
            if self.recorder is not None:
                self.recorder.close(self.match.state, dt)
            self.finished.set()


def create_app(cfg: RunConfig, bots: list[Bot] | None = None,
               recorder: Recorder | None = None) -> FastAPI:
    host = GameHost(cfg, bots=bots, recorder=recorder)

    @contextlib.asynccontextmanager
    async def lifespan(app: FastAPI):
        task = asyncio.create_task(host.engine_loop())
        app.state.engine_task = task
        try:
            yield
        finally:
            task.cancel()
            with contextlib.suppress(asyncio.CancelledError):
                await task

    app = FastAPI(lifespan=lifespan)
    app.state.host = host

    @app.websocket("/game")
    async def game_socket(ws: WebSocket) -> None:
        await ws.accept()
        session = Session()
        host.sessions.add(session)

        async def sender() -> None:
            while True:
                frame = await session.queue.get()
                await ws.send_text(frame)

        send_task = asyncio.create_task(sender())
        try:
            while True:
                raw = await ws.receive_text()
                try:
                    message = json.loads(raw)
                    if not isinstance(message, dict):
                        raise ValueError("frame must be a JSON object")
                except (json.JSONDecodeError, ValueError) as exc:
                    session.offer(json.dumps(
                        {"type": "rejected", "reason": f"bad_json: {exc}"}
                    ))
                    continue
                reply = host.handle_message(session, message)
                if reply is not None:
                    session.offer(json.dumps(reply))
        except WebSocketDisconnect:
            pass
        finally:
            send_task.cancel()
            with contextlib.suppress(asyncio.CancelledError):
                await send_task
            host.drop_session(session)

    return app
