import time

from nhbot.controller import Agent, ControllerConfig, run_episode
from nhbot.datafiles import scenario_text
from nhbot.envs.mock import mock_scenario
from nhbot.evaluation.runner import EvalBudgets, run_eval
from nhbot.state.types import Outcome

SCENARIO = scenario_text("hunger-clock.scn")


def mock_runner(max_steps=60, episode_budget=None):
    def episode_runner(character, seed, index):
        config = ControllerConfig(
            max_steps=max_steps, episode_time_budget=episode_budget
        )
        env = mock_scenario(SCENARIO, character=character, seed=seed)
        try:
            return run_episode(env, Agent(config=config), config, seed=seed)
        finally:
            env.close()

    return episode_runner


def test_sixteen_episodes_parallel_four():
    records = run_eval(mock_runner(), n_episodes=16, seed=1, parallelism=4)
    assert len(records) == 16
    assert all(r.score >= 0 for r in records)


def test_tiny_episode_budget_yields_time_limits():
    records = run_eval(
        mock_runner(max_steps=100_000, episode_budget=0.001),
        n_episodes=4,
        seed=2,
        parallelism=2,
    )
    assert len(records) == 4
    assert all(r.outcome is Outcome.TIME_LIMIT for r in records)


def test_deterministic_given_seed_regardless_of_parallelism():
    a = run_eval(mock_runner(), n_episodes=8, seed=3, parallelism=1)
    b = run_eval(mock_runner(), n_episodes=8, seed=3, parallelism=4)
    assert [r.to_json_dict(include_wallclock=False) for r in a] == [
        r.to_json_dict(include_wallclock=False) for r in b
    ]


def test_crashing_episode_recorded_not_fatal():
    def flaky(character, seed, index):
        if index == 1:
            raise RuntimeError("boom")
        return mock_runner()(character, seed, index)

    records = run_eval(flaky, n_episodes=3, seed=4, parallelism=2)
    assert len(records) == 3
    assert records[1].death == "crashed"
    assert records[1].outcome is Outcome.TIME_LIMIT


def test_total_window_preserves_partial_results():
    def slow(character, seed, index):
        time.sleep(0.05)
        return mock_runner(max_steps=5)(character, seed, index)

    records = run_eval(
        slow,
        n_episodes=20,
        seed=5,
        parallelism=1,
        budgets=EvalBudgets(total_seconds=0.12),
    )
    assert 1 <= len(records) < 20
