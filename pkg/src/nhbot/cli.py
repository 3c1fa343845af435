"""Command-line entry points.

Configuration precedence: explicit flags beat the JSON config file
(--config), which beats NHBOT_* environment variables, which beat
built-in defaults. Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import json
import os
import sys

import click

from . import __version__
from .controller import Agent, ControllerConfig, run_episode
from .datafiles import scenario_text
from .envs.base import CharacterSpec, ConfigError, EnvError, validate_character
from .envs.mock import mock_scenario
from .envs.pty_backend import PtyEnv
from .envs.replay import ReplayEnv
from .evaluation.metrics import compare, metric_tuple
from .evaluation.records import MetricTuple
from .evaluation.report import emit_report, read_records_jsonl, write_records_jsonl
from .evaluation.rotation import rotation_schedule
from .evaluation.runner import EvalBudgets, run_eval
from .term.ttyrec import TtyrecError, read_ttyrec

DEFAULT_SCENARIO = "three-level.scn"


class _Config:
    """Layered option lookup: flag > config file > environment > default."""

    def __init__(self, config_path: str | None) -> None:
        self.values: dict = {}
        if config_path:
            with open(config_path) as f:
                self.values = json.load(f)

    def get(self, name: str, flag_value, default):
        if flag_value is not None:
            return flag_value
        if name in self.values:
            return self.values[name]
        env = os.environ.get(f"NHBOT_{name.upper().replace('-', '_')}")
        if env is not None:
            return type(default)(env) if default is not None else env
        return default


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


def _parse_character(text: str | None) -> CharacterSpec | None:
    if not text:
        return None
    parts = text.split("-")
    if len(parts) != 4:
        raise click.UsageError(
            "character must be role-race-alignment-gender, e.g."
            " Valkyrie-human-lawful-female"
        )
    return validate_character(CharacterSpec(*parts))


def _scenario_source(path: str | None) -> str:
    if path and os.path.exists(path):
        with open(path) as f:
            return f.read()
    return scenario_text(path or DEFAULT_SCENARIO)


def _make_env(backend, scenario, seed, character, nethack_bin, ttyrec, record_sink,
              step_timeout=2.0):
    if backend == "mock":
        return mock_scenario(
            _scenario_source(scenario),
            character=character,
            seed=seed,
            record_to=record_sink,
        )
    if backend == "replay":
        if not ttyrec:
            raise click.UsageError("--ttyrec is required for the replay backend")
        return ReplayEnv(ttyrec, character=character)
    if backend == "pty":
        if not nethack_bin:
            raise click.UsageError("--nethack-bin is required for the pty backend")
        return PtyEnv(
            nethack_bin,
            character or CharacterSpec("Valkyrie", "human", "lawful", "female"),
            record_to=record_sink,
            step_timeout=step_timeout,
        )
    raise click.UsageError(f"unknown backend {backend!r}")


@click.group()
@click.version_option(version=__version__)
def main() -> None:
    """Symbolic dungeon agent and its evaluation harness."""


@main.command()
@click.option("--backend", type=click.Choice(["mock", "pty", "replay"]), default=None)
@click.option("--scenario", default=None, help="Scenario file (mock backend).")
@click.option("--nethack-bin", default=None, help="NetHack binary (pty backend).")
@click.option("--ttyrec", default=None, help="Recording to replay (replay backend).")
@click.option("--character", default=None, help="role-race-alignment-gender.")
@click.option("--seed", type=int, default=None)
@click.option("--max-steps", type=int, default=None)
@click.option("--view-distance", type=int, default=None)
@click.option("--score-cutoff", type=int, default=None, help="Quit early beyond this score.")
@click.option("--record", default=None, help="Write a ttyrec of the episode.")
@click.option("--trace", default=None, help="Write a JSONL step trace.")
@click.option("--config", "config_path", default=None, help="JSON config file.")
def play(backend, scenario, nethack_bin, ttyrec, character, seed, max_steps,
         view_distance, score_cutoff, record, trace, config_path) -> None:
    """Run one episode and print its record."""
    cfg = _Config(config_path)
    backend = cfg.get("backend", backend, "mock")
    seed = cfg.get("seed", seed, 0)
    controller = ControllerConfig(
        view_distance=cfg.get("view-distance", view_distance, 8),
        max_steps=cfg.get("max-steps", max_steps, 2000),
        score_cutoff=score_cutoff,
    )
    record_sink = open(record, "wb") if record else None
    trace_sink = open(trace, "w") if trace else None
    try:
        env = _make_env(
            backend,
            cfg.get("scenario", scenario, None),
            seed,
            _parse_character(character),
            cfg.get("nethack-bin", nethack_bin, None),
            ttyrec,
            record_sink,
            step_timeout=controller.step_time_budget,
        )
    except (ConfigError, FileNotFoundError) as exc:
        _fail(str(exc))
        return
    try:
        episode = run_episode(
            env, Agent(config=controller), controller, trace_sink=trace_sink, seed=seed
        )
    except (EnvError, ConfigError) as exc:
        _fail(str(exc))
        return
    finally:
        env.close()
        if record_sink:
            record_sink.close()
        if trace_sink:
            trace_sink.close()
    click.echo(json.dumps(episode.to_json_dict(), indent=2, sort_keys=True))


@main.command()
@click.argument("ttyrec_path")
@click.option("--trace", default=None, help="Step trace to annotate frames with.")
@click.option("--speed", type=float, default=0.0,
              help="Seconds per frame; 0 dumps without delay.")
@click.option("--frames", type=int, default=None, help="Stop after this many frames.")
def replay(ttyrec_path, trace, speed, frames) -> None:
    """Render a recorded episode frame by frame (watch-only)."""
    import time as _time

    annotations: dict[int, str] = {}
    if trace:
        try:
            with open(trace) as f:
                for i, line in enumerate(f):
                    if line.strip():
                        data = json.loads(line)
                        stack = "/".join(data.get("strategy_stack", [])) or data.get(
                            "dispatched_by", ""
                        )
                        annotations[i] = f"[{data.get('step')}] {stack}"
        except FileNotFoundError as exc:
            _fail(str(exc))
            return
    try:
        from .term.emulator import TerminalEmulator

        emu = TerminalEmulator()
        with open(ttyrec_path, "rb") as f:
            count = 0
            for frame in read_ttyrec(f):
                emu.feed(frame.payload)
                count += 1
                snap = emu.snapshot()
                click.echo(f"--- frame {count} {annotations.get(count - 1, '')}")
                click.echo(snap.text())
                if speed > 0:
                    _time.sleep(speed)
                if frames is not None and count >= frames:
                    break
    except (FileNotFoundError, TtyrecError) as exc:
        _fail(str(exc))
        return


@main.command()
@click.option("--backend", type=click.Choice(["mock", "pty"]), default=None)
@click.option("--scenario", default=None)
@click.option("--nethack-bin", default=None)
@click.option("-n", "--episodes", type=int, default=None)
@click.option("--parallelism", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--report-dir", default=None)
@click.option("--max-steps", type=int, default=None)
@click.option("--view-distance", type=int, default=None)
@click.option("--score-cutoff", type=int, default=None)
@click.option("--episode-budget", type=float, default=None,
              help="Wall-clock seconds per episode.")
@click.option("--total-budget", type=float, default=None,
              help="Wall-clock seconds for the whole run.")
@click.option("--config", "config_path", default=None)
def evaluate(backend, scenario, nethack_bin, episodes, parallelism, seed, report_dir,
             max_steps, view_distance, score_cutoff, episode_budget, total_budget,
             config_path) -> None:
    """Run a rotation of episodes and write the report."""
    cfg = _Config(config_path)
    backend = cfg.get("backend", backend, "mock")
    episodes = cfg.get("episodes", episodes, 16)
    parallelism = cfg.get("parallelism", parallelism, 1)
    seed = cfg.get("seed", seed, 0)
    report_dir = cfg.get("report-dir", report_dir, "report")
    scenario_name = cfg.get("scenario", scenario, None)
    nethack_bin = cfg.get("nethack-bin", nethack_bin, None)
    controller = ControllerConfig(
        view_distance=cfg.get("view-distance", view_distance, 8),
        max_steps=cfg.get("max-steps", max_steps, 2000),
        score_cutoff=score_cutoff,
        episode_time_budget=episode_budget,
    )
    scenario_text_value = _scenario_source(scenario_name) if backend == "mock" else None

    def episode_runner(character: CharacterSpec, episode_seed: int, index: int):
        import time as _time

        start = _time.monotonic()
        if backend == "mock":
            env = mock_scenario(
                scenario_text_value, character=character, seed=episode_seed
            )
        else:
            env = PtyEnv(nethack_bin, character,
                         step_timeout=controller.step_time_budget)
        try:
            record = run_episode(env, Agent(config=controller), controller,
                                 seed=episode_seed)
        finally:
            env.close()
        record.wallclock = _time.monotonic() - start
        return record

    records = run_eval(
        episode_runner,
        n_episodes=episodes,
        seed=seed,
        parallelism=parallelism,
        budgets=EvalBudgets(
            episode_seconds=episode_budget, total_seconds=total_budget
        ),
    )
    if not records:
        _fail("no episodes completed")
        return
    paths = emit_report(records, report_dir)
    write_records_jsonl(records, os.path.join(report_dir, "records.jsonl"))
    metric = metric_tuple(records)
    click.echo(
        f"episodes={len(records)} ascensions={metric.ascensions}"
        f" median={metric.median_score} mean={metric.mean_score:.2f}"
    )
    for path in paths:
        click.echo(path)
    crashed = sum(1 for r in records if r.death == "crashed")
    if crashed:
        _fail(f"{crashed} episodes crashed")


@main.command()
@click.option("--records", "records_path", required=True,
              help="records.jsonl from a previous run.")
@click.option("--report-dir", default="report")
@click.option("--xlogfile", default=None,
              help="NetHack xlogfile whose score/death fields override"
                   " end-screen parsing (entries pair with records in order).")
def report(records_path, report_dir, xlogfile) -> None:
    """Rebuild report files from stored episode records."""
    from .evaluation.xlog import apply_xlog_overrides, read_xlogfile

    try:
        records = read_records_jsonl(records_path)
    except FileNotFoundError as exc:
        _fail(str(exc))
        return
    if not records:
        _fail("records file is empty")
        return
    if xlogfile:
        try:
            overridden = apply_xlog_overrides(records, read_xlogfile(xlogfile))
        except FileNotFoundError as exc:
            _fail(str(exc))
            return
        click.echo(f"xlogfile overrides applied to {overridden} records")
    for path in emit_report(records, report_dir):
        click.echo(path)


@main.command()
@click.argument("summary", type=click.Path(exists=False))
@click.option("--against", default=None, help="Second summary.json to compare with.")
def inspect(summary, against) -> None:
    """Print a report's metric tuple, optionally comparing two reports."""
    def load(path: str) -> MetricTuple:
        if os.path.isdir(path):
            path = os.path.join(path, "summary.json")
        with open(path) as f:
            data = json.load(f)
        m = data["metric_tuple"]
        return MetricTuple(m["ascensions"], m["median_score"], m["mean_score"])

    try:
        mine = load(summary)
    except (FileNotFoundError, KeyError, json.JSONDecodeError) as exc:
        _fail(f"unreadable summary: {exc}")
        return
    click.echo(
        f"ascensions={mine.ascensions} median={mine.median_score}"
        f" mean={mine.mean_score}"
    )
    if against:
        try:
            theirs = load(against)
        except (FileNotFoundError, KeyError, json.JSONDecodeError) as exc:
            _fail(f"unreadable summary: {exc}")
            return
        verdict = compare(mine, theirs)
        word = {1: "ranked higher", 0: "equal", -1: "ranked lower"}[verdict]
        click.echo(f"comparison: {word}")


@main.command("roles")
@click.option("-n", "--episodes", type=int, default=13)
@click.option("--seed", type=int, default=0)
def roles(episodes, seed) -> None:
    """Print the rotation schedule (diagnostic)."""
    for spec in rotation_schedule(episodes, seed=seed):
        click.echo(str(spec))


if __name__ == "__main__":
    main()
