"""Shared environment contract and the starting-character table."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import BinaryIO, Protocol

from ..actions.keys import KeySequence
from ..datafiles import read_table
from ..term.screen import ScreenSnapshot
from ..term.ttyrec import TtyrecFrame, write_ttyrec


class Backend(enum.Enum):
    PTY = "pty"
    REPLAY = "replay"
    MOCK = "mock"


class EnvError(RuntimeError):
    pass


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class CharacterSpec:
    role: str
    race: str
    alignment: str
    gender: str

    def __str__(self) -> str:
        return f"{self.role}-{self.race}-{self.alignment}-{self.gender}"


@lru_cache(maxsize=1)
def valid_character_combos() -> tuple[CharacterSpec, ...]:
    """Cross the role/race/alignment/gender constraint tables."""
    roles = []
    race_aligns: dict[str, frozenset[str]] = {}
    for row in read_table("roles.txt"):
        if row[0] == "role":
            _, name, races, aligns, genders = row
            roles.append(
                (name, races.split(","), aligns.split(","), genders.split(","))
            )
        else:
            _, name, aligns = row
            race_aligns[name] = frozenset(aligns.split(","))
    combos = []
    for name, races, aligns, genders in roles:
        for race in races:
            for align in aligns:
                if align not in race_aligns[race]:
                    continue
                for gender in genders:
                    combos.append(CharacterSpec(name, race, align, gender))
    return tuple(combos)


@lru_cache(maxsize=1)
def role_names() -> tuple[str, ...]:
    return tuple(
        sorted({spec.role for spec in valid_character_combos()})
    )


def validate_character(spec: CharacterSpec) -> CharacterSpec:
    if spec not in valid_character_combos():
        raise ConfigError(f"invalid character combination {spec}")
    return spec


@dataclass
class StepResult:
    snapshot: ScreenSnapshot
    terminated: bool = False
    raw_bytes_len: int = 0


class EnvHandle(Protocol):
    """One handle per episode; single-owner."""

    backend: Backend
    character: CharacterSpec

    def reset(self) -> StepResult: ...

    def step_keys(self, keys: KeySequence) -> StepResult: ...

    def close(self) -> None: ...


@dataclass
class TtyrecRecorder:
    """Collects raw output bytes into ttyrec frames, one per step."""

    sink: BinaryIO
    clock: float = 0.0
    frames_written: int = field(default=0)

    def record(self, payload: bytes, dt: float = 0.1) -> None:
        if not payload:
            return
        self.clock += dt
        sec = int(self.clock)
        usec = int(round((self.clock - sec) * 1_000_000)) % 1_000_000
        write_ttyrec([TtyrecFrame(sec=sec, usec=usec, payload=payload)], self.sink)
        self.frames_written += 1
