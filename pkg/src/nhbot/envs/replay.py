"""Deterministic ttyrec replay behind the env contract.

Keys are ignored; each step feeds the next recorded frame through the
emulator. The same file always yields the same StepResult sequence.
"""

from __future__ import annotations

from ..actions.keys import KeySequence
from ..term.emulator import TerminalEmulator
from ..term.ttyrec import read_ttyrec
from .base import Backend, CharacterSpec, EnvError, StepResult


class ReplayEnv:
    backend = Backend.REPLAY

    def __init__(self, path: str, character: CharacterSpec | None = None) -> None:
        self.path = path
        self.character = character or CharacterSpec(
            "Valkyrie", "human", "lawful", "female"
        )
        self._frames: list[bytes] = []
        self._index = 0
        self._emu: TerminalEmulator | None = None

    def reset(self) -> StepResult:
        with open(self.path, "rb") as f:
            self._frames = [frame.payload for frame in read_ttyrec(f)]
        self._emu = TerminalEmulator()
        self._index = 0
        if not self._frames:
            return StepResult(self._emu.snapshot(), terminated=True)
        return self._advance()

    def step_keys(self, keys: KeySequence) -> StepResult:
        del keys  # watch-only
        if self._emu is None:
            raise EnvError("step before reset")
        return self._advance()

    def _advance(self) -> StepResult:
        assert self._emu is not None
        if self._index >= len(self._frames):
            return StepResult(self._emu.snapshot(), terminated=True)
        payload = self._frames[self._index]
        self._index += 1
        self._emu.feed(payload)
        return StepResult(
            snapshot=self._emu.snapshot(),
            terminated=self._index >= len(self._frames),
            raw_bytes_len=len(payload),
        )

    def close(self) -> None:
        self._frames = []
