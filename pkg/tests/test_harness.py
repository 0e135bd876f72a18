import json
import socket

import pytest

from swarmgame.harness import PORT_ENV_VAR, build_parser, main, resolve_config


def test_every_flag_reaches_the_config(tmp_path):
    cfg = resolve_config(
        [
            "--mode", "headless",
            "--agents-per-team", "7",
            "--seed", "42",
            "--max-ticks", "120",
            "--red-controller", "flocking",
            "--blue-controller", "ergodic",
            "--red-bot", "surround",
            "--blue-bot", "stationary",
            "--port", "9100",
            "--record", str(tmp_path / "run"),
            "--metrics-out", str(tmp_path / "sizes.csv"),
        ]
    )
    assert cfg.mode == "headless"
    assert cfg.agents_per_team == 7
    assert cfg.seed == 42
    assert cfg.max_ticks == 120
    assert cfg.red_controller == "flocking"
    assert cfg.blue_controller == "ergodic"
    assert cfg.red_bot == "surround"
    assert cfg.blue_bot == "stationary"
    assert cfg.port == 9100
    assert cfg.record == str(tmp_path / "run")
    assert cfg.metrics_out == str(tmp_path / "sizes.csv")


def test_defaults_hold_when_nothing_is_given():
    cfg = resolve_config([])
    assert cfg.mode == "headless"
    assert cfg.agents_per_team == 12
    assert cfg.port == 8000


def test_unknown_flag_exits_with_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["--warp-speed", "9"])
    assert exc.value.code == 2


def test_precedence_flag_beats_env_beats_file(tmp_path, monkeypatch):
    config = tmp_path / "run.cfg"
    config.write_text("port = 7001\nseed = 9\n")
    monkeypatch.delenv(PORT_ENV_VAR, raising=False)

    cfg = resolve_config(["--config", str(config)])
    assert cfg.port == 7001 and cfg.seed == 9

    monkeypatch.setenv(PORT_ENV_VAR, "7002")
    cfg = resolve_config(["--config", str(config)])
    assert cfg.port == 7002  # env wins over the file
    assert cfg.seed == 9  # untouched keys still come from the file

    cfg = resolve_config(["--config", str(config), "--port", "7003", "--seed", "11"])
    assert cfg.port == 7003 and cfg.seed == 11  # flags win over everything


def test_bad_env_port_is_a_config_error(monkeypatch, capsys):
    monkeypatch.setenv(PORT_ENV_VAR, "eight thousand")
    assert main([]) == 2
    err = capsys.readouterr().err
    assert "config error" in err and PORT_ENV_VAR in err


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("bogus_key = 4\n", "unknown key"),
        ("seed 42\n", "expected 'key = value'"),
        ("seed = forty-two\n", "bad value for 'seed'"),
    ],
)
def test_config_file_errors_carry_file_and_line(tmp_path, capsys, text, fragment):
    config = tmp_path / "broken.cfg"
    config.write_text("# comment line\n\n" + text)
    assert main(["--config", str(config)]) == 2
    err = capsys.readouterr().err
    assert fragment in err
    assert f"{config}:3" in err  # comment and blank lines still count


def test_replay_mode_requires_a_path(capsys):
    assert main(["--mode", "replay"]) == 2
    assert "--replay" in capsys.readouterr().err


def test_missing_replay_file_is_a_runtime_error(tmp_path, capsys):
    assert main(["--mode", "replay", "--replay", str(tmp_path / "nope")]) == 1
    assert "error" in capsys.readouterr().err


# --- headless runs -----------------------------------------------------------------


def headless(tmp_path, *extra):
    base = tmp_path / "run"
    code = main(
        [
            "--mode", "headless",
            "--agents-per-team", "1",
            "--seed", "0",
            "--record", str(base),
            *extra,
        ]
    )
    return code, base


def test_two_idle_teams_produce_no_captures(tmp_path, capsys):
    code, base = headless(
        tmp_path, "--red-bot", "stationary", "--blue-bot", "stationary", "--max-ticks", "900"
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "winner=none" in out
    assert (tmp_path / "run.events.jsonl").read_text() == ""
    rows = (tmp_path / "run.teamsize.csv").read_text().splitlines()
    assert rows[0] == "time_s,red_count,blue_count"
    assert len(rows) == 1 + 901  # pre-game row plus one per tick
    assert all(row.endswith(",1,1") for row in rows[1:])
    assert rows[-1].startswith("30.0000")  # 900 ticks at 30 per second


def test_record_and_replay_agree(tmp_path, capsys):
    code, base = headless(
        tmp_path,
        "--agents-per-team", "2",
        "--red-bot", "uniform",
        "--blue-bot", "uniform",
        "--max-ticks", "240",
    )
    assert code == 0
    capsys.readouterr()
    assert main(["--mode", "replay", "--replay", str(base)]) == 0
    out = capsys.readouterr().out
    assert "replay OK" in out
    # the .record.jsonl path spelling works too
    assert main(["--mode", "replay", "--replay", str(base) + ".record.jsonl"]) == 0


def test_replay_catches_a_tampered_record(tmp_path, capsys):
    code, base = headless(
        tmp_path, "--red-bot", "uniform", "--blue-bot", "uniform", "--max-ticks", "120"
    )
    assert code == 0
    record = tmp_path / "run.record.jsonl"
    lines = record.read_text().splitlines()
    final = json.loads(lines[-1])
    final["state_hash"] = "0" * 64
    lines[-1] = json.dumps(final, sort_keys=True, separators=(",", ":"))
    record.write_text("\n".join(lines) + "\n")
    capsys.readouterr()
    assert main(["--mode", "replay", "--replay", str(base)]) == 1
    assert "MISMATCH" in capsys.readouterr().err


def test_metrics_export_matches_the_event_log(tmp_path):
    code, base = headless(
        tmp_path,
        "--agents-per-team", "12",
        "--red-bot", "surround",
        "--blue-bot", "uniform",
        "--max-ticks", "600",
        "--metrics-out", str(tmp_path / "sizes.csv"),
    )
    assert code == 0
    capture_ticks = set()
    for line in (tmp_path / "run.events.jsonl").read_text().splitlines():
        event = json.loads(line)
        if event.get("kind") == "capture":
            capture_ticks.add(event["tick"])
    rows = (tmp_path / "sizes.csv").read_text().splitlines()
    assert rows[0] == "time_s,red_count,blue_count"
    prev = None
    changes = set()
    for tick, row in enumerate(rows[1:]):
        _, red, blue = row.split(",")
        pair = (int(red), int(blue))
        assert pair[0] + pair[1] == 24  # conservation in the exported series too
        if prev is not None and pair != prev:
            changes.add(tick)
        prev = pair
    assert changes == capture_ticks  # counts move exactly when captures happen


def test_serve_mode_reports_occupied_port(capsys):
    blocker = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    blocker.bind(("127.0.0.1", 0))
    port = blocker.getsockname()[1]
    blocker.listen(1)
    try:
        assert main(["--mode", "serve", "--port", str(port)]) == 1
        assert "not available" in capsys.readouterr().err
    finally:
        blocker.close()
