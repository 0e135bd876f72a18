"""Command-line entry point: serve, headless runs, and replay verification."""

from __future__ import annotations

import argparse
import dataclasses
import os
import socket
import sys

from .bots import Bot, make_bot
from .config import RunConfig, load_config_file
from .core import Team
from .recording import Recorder, base_path_of, export_metrics, replay
from .sim import Match

PORT_ENV_VAR = "SWARMGAME_PORT"
DEFAULT_RECORD_BASE = "swarm_run"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swarmgame",
        description="Swarm-vs-swarm coverage game: server, headless runs, replay.",
    )
    parser.add_argument("--mode", choices=("serve", "headless", "replay"))
    parser.add_argument("--agents-per-team", type=int, dest="agents_per_team")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--max-ticks", type=int, dest="max_ticks")
    parser.add_argument("--red-controller", choices=("ergodic", "flocking"),
                        dest="red_controller")
    parser.add_argument("--blue-controller", choices=("ergodic", "flocking"),
                        dest="blue_controller")
    parser.add_argument("--red-bot", dest="red_bot",
                        help="uniform | stationary | surround | script:PATH")
    parser.add_argument("--blue-bot", dest="blue_bot")
    parser.add_argument("--port", type=int)
    parser.add_argument("--record", help="base path for run artifacts")
    parser.add_argument("--replay", help="recorded run to verify (base or .record.jsonl)")
    parser.add_argument("--config", help="flat key=value config file; flags win")
    parser.add_argument("--metrics-out", dest="metrics_out",
                        help="write the team-size CSV here")
    return parser


def resolve_config(argv: list[str]) -> RunConfig:
    """Merge precedence: flag > environment port > config file > default."""
    args = build_parser().parse_args(argv)
    values: dict = {}
    if args.config:
        values.update(load_config_file(args.config))
    env_port = os.environ.get(PORT_ENV_VAR)
    if env_port is not None:
        try:
            values["port"] = int(env_port)
        except ValueError:
            raise ValueError(f"{PORT_ENV_VAR} must be an integer, got {env_port!r}")
    field_names = {f.name for f in dataclasses.fields(RunConfig)}
    for name, value in vars(args).items():
        if name in field_names and value is not None:
            values[name] = value
    cfg = RunConfig.from_dict(values)
    if cfg.mode == "replay" and not cfg.replay:
        raise ValueError("replay mode needs --replay PATH")
    return cfg


def make_bots(cfg: RunConfig) -> list[Bot]:
    bots = []
    if cfg.red_bot:
        bots.append(make_bot(cfg.red_bot, Team.RED))
    if cfg.blue_bot:
        bots.append(make_bot(cfg.blue_bot, Team.BLUE))
    return bots


def run_headless(cfg: RunConfig) -> int:
    base = base_path_of(cfg.record or DEFAULT_RECORD_BASE)
    match = Match(cfg)
    bots = make_bots(cfg)
    recorder = Recorder(base, cfg)
    recorder.on_start(match.state)
    while match.state.winner is None and match.state.tick < cfg.max_ticks:
        commands = []
        for bot in bots:
            for message in bot.step(match.state):
                commands.append((bot.team, message))
        events = match.step(commands)
        recorder.on_tick(match.state, commands, events)
    recorder.close(match.state, match.dyn.dt_engine)
    if cfg.metrics_out:
        export_metrics(base + ".events.jsonl", cfg.metrics_out, cfg, match.state.tick)
    winner = match.state.winner.value if match.state.winner else "none"
    print(f"headless run finished: tick={match.state.tick} winner={winner}")
    print(f"artifacts: {base}.record.jsonl .commands.jsonl .events.jsonl .teamsize.csv")
    return 0


def run_replay(cfg: RunConfig) -> int:
    result = replay(cfg.replay)
    if result.ok:
        print(f"replay OK: tick={result.ticks} hash={result.replayed_hash}")
        return 0
    print("replay MISMATCH:", file=sys.stderr)
    print(f"  recorded hash: {result.recorded_hash}", file=sys.stderr)
    print(f"  replayed hash: {result.replayed_hash}", file=sys.stderr)
    print(f"  event log byte-identical: {result.events_match}", file=sys.stderr)
    return 1


def _check_port_free(port: int) -> None:
    with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as probe:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        try:
            probe.bind(("127.0.0.1", port))
        except OSError as exc:
            raise RuntimeError(f"port {port} is not available: {exc}") from exc


def run_serve(cfg: RunConfig) -> int:
    import uvicorn

    from .server import create_app

    _check_port_free(cfg.port)
    recorder = Recorder(base_path_of(cfg.record), cfg) if cfg.record else None
    app = create_app(cfg, bots=make_bots(cfg), recorder=recorder)
    print(f"serving on ws://127.0.0.1:{cfg.port}/game")
    uvicorn.run(app, host="127.0.0.1", port=cfg.port, log_level="warning")
    return 0


def run(cfg: RunConfig) -> int:
    if cfg.mode == "headless":
        return run_headless(cfg)
    if cfg.mode == "replay":
        return run_replay(cfg)
    return run_serve(cfg)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = resolve_config(argv)
    except (ValueError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        return run(cfg)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
