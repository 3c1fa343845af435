"""Environment backends: scripted mock, ttyrec replay, live pty."""

from .base import (
    Backend,
    CharacterSpec,
    ConfigError,
    EnvError,
    EnvHandle,
    StepResult,
    valid_character_combos,
    validate_character,
)
from .scenario import Scenario, ScenarioError, parse_scenario
from .mock import MockEnv, mock_scenario
from .replay import ReplayEnv

__all__ = [
    "Backend",
    "CharacterSpec",
    "ConfigError",
    "EnvError",
    "EnvHandle",
    "StepResult",
    "valid_character_combos",
    "validate_character",
    "Scenario",
    "ScenarioError",
    "parse_scenario",
    "MockEnv",
    "mock_scenario",
    "ReplayEnv",
]
