import io
import json

from conftest import make_monster, simple_state, snapshot_from_lines
from nhbot.controller import Agent, ControllerConfig, handle_prompts, run_episode
from nhbot.datafiles import scenario_text
from nhbot.envs.mock import mock_scenario
from nhbot.state.types import Outcome, UiMode


def test_handle_prompts_more_is_space(blank_state):
    blank_state.ui_mode = UiMode.MORE_PROMPT
    keys = handle_prompts(blank_state)
    assert keys is not None and bytes(keys) == b" "


def test_handle_prompts_map_is_none(blank_state):
    blank_state.ui_mode = UiMode.MAP
    assert handle_prompts(blank_state) is None


def test_handle_prompts_stray_menu_escapes(blank_state):
    blank_state.ui_mode = UiMode.MENU
    keys = handle_prompts(blank_state)
    assert keys is not None and bytes(keys) == b"\x1b"


def test_handle_prompts_peaceful_attack_denied(blank_state):
    blank_state.ui_mode = UiMode.YES_NO_PROMPT
    blank_state.message = "Really attack the little dog? [yn] (n)"
    keys = handle_prompts(blank_state)
    assert keys is not None and bytes(keys) == b"n"


def test_handle_prompts_answer_table_yes(blank_state):
    blank_state.ui_mode = UiMode.YES_NO_PROMPT
    blank_state.message = "Are you sure you want to pray? [yn] (n)"
    keys = handle_prompts(blank_state)
    assert keys is not None and bytes(keys) == b"y"


def test_combat_gate_dispatches_by_distance():
    env = mock_scenario(scenario_text("corridor-jackal.scn"), seed=1)
    cfg = ControllerConfig(max_steps=250)
    agent = Agent(config=cfg)
    run_episode(env, agent, cfg)
    combat_steps = [t for t in agent.traces if t.dispatched_by == "CombatPolicy"]
    assert combat_steps, "jackal within the gate must reach the combat policy"
    for trace in agent.traces:
        assert sum(
            (
                trace.dispatched_by == "CombatPolicy",
                trace.dispatched_by.startswith("FirstFitSkill"),
                trace.dispatched_by == "PromptHandler",
            )
        ) == 1


def test_empty_level_never_dispatches_combat():
    env = mock_scenario(scenario_text("hunger-clock.scn"), seed=0)
    cfg = ControllerConfig(max_steps=150)
    agent = Agent(config=cfg)
    run_episode(env, agent, cfg)
    assert all(t.dispatched_by != "CombatPolicy" for t in agent.traces)
    assert any(t.dispatched_by.startswith("FirstFitSkill") for t in agent.traces)


def test_monster_within_gate_next_dispatch_is_combat():
    cfg = ControllerConfig(view_distance=8)
    agent = Agent(config=cfg)
    state = simple_state(
        ["---------", "|.......|", "|.......|", "---------"],
        monsters=[make_monster((1, 4))],
        hero=(1, 1),
    )
    agent.state = state
    agent._inventory_dirty = False
    snap = snapshot_from_lines(
        ["", "---------", "|" + chr(64) + "..d....|", "|.......|", "---------"]
        + [""] * 17
        + ["Agent the Stripling  St:16 Dx:12 Co:14 In:9 Wi:10 Ch:8",
           "Dlvl:1 $:0 HP:12(12) Pw:5(5) AC:7 Exp:1 T:5"],
        cursor=(2, 1),
    )
    agent.observe(snap)
    assert agent.traces[-1].dispatched_by == "CombatPolicy"


def test_step_trace_jsonl_stream():
    env = mock_scenario(scenario_text("hunger-clock.scn"), seed=0)
    cfg = ControllerConfig(max_steps=40)
    agent = Agent(config=cfg)
    sink = io.StringIO()
    run_episode(env, agent, cfg, trace_sink=sink)
    lines = [json.loads(line) for line in sink.getvalue().splitlines()]
    assert len(lines) == len(agent.traces)
    for row in lines:
        assert {"step", "turn", "ui_mode", "dispatched_by", "action",
                "keys", "strategy_stack"} <= set(row)


def test_time_limit_outcome_on_budget():
    env = mock_scenario(scenario_text("hunger-clock.scn"), seed=0)
    cfg = ControllerConfig(max_steps=10)
    record = run_episode(env, Agent(config=cfg), cfg)
    assert record.outcome is Outcome.TIME_LIMIT


def test_starvation_episode_record():
    env = mock_scenario(scenario_text("hunger-clock.scn"), seed=0)
    cfg = ControllerConfig(max_steps=600)
    record = run_episode(env, Agent(config=cfg), cfg)
    assert record.outcome is Outcome.DEATH
    assert "starved" in record.death
    assert record.score >= 0
    assert record.turns > 0


def test_score_cutoff_triggers_early_quit():
    env = mock_scenario(scenario_text("three-level.scn"), seed=1)
    cfg = ControllerConfig(max_steps=1500, score_cutoff=100)
    record = run_episode(env, Agent(config=cfg), cfg)
    assert record.outcome is Outcome.QUIT
    assert record.score >= 100


def test_no_progress_detector_breaks_identical_loops():
    cfg = ControllerConfig(no_progress_limit=3)
    agent = Agent(config=cfg)
    snap = snapshot_from_lines(
        ["", "|." + chr(64) + ".|"] + [""] * 20
        + ["", "Dlvl:1 $:0 HP:12(12) Pw:5(5) AC:7 Exp:1 T:5"],
        cursor=(1, 2),
    )
    agent._inventory_dirty = False
    outs = [bytes(agent.observe(snap)) for _ in range(12)]
    assert b"\x1bs" in outs, "forced ESC+search after repeated identical steps"
