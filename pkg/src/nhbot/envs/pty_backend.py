"""Live NetHack over a pseudo-terminal.

Spawns the real binary with a per-episode rc file pinning the requested
character, reads output until quiescence (an idle window with no pending
partial escape sequence, capped by a hard per-step timeout), and feeds
keystrokes back. NetHack emits no end-of-output marker, so quiescence is
necessarily time-based.
"""

from __future__ import annotations

import os
import select
import signal
import tempfile
import time

from ..actions.keys import KeySequence
from ..term.emulator import TerminalEmulator
from .base import (
    Backend,
    CharacterSpec,
    EnvError,
    StepResult,
    TtyrecRecorder,
    validate_character,
)

IDLE_WINDOW_S = 0.03
STEP_TIMEOUT_S = 2.0

_RC_TEMPLATE = """\
OPTIONS=role:{role}
OPTIONS=race:{race}
OPTIONS=align:{alignment}
OPTIONS=gender:{gender}
OPTIONS=name:agent
OPTIONS=pettype:none
OPTIONS=!autopickup
OPTIONS=!legacy
OPTIONS=!news
OPTIONS=!splash_screen
OPTIONS=!tombstone
OPTIONS=showscore
OPTIONS=hilite_pet
OPTIONS=!cmdassist
OPTIONS=!sparkle
OPTIONS=!timed_delay
OPTIONS=number_pad:0
OPTIONS=runmode:teleport
OPTIONS=msg_window:single
OPTIONS=windowtype:tty
"""


class PtyEnv:
    backend = Backend.PTY

    def __init__(
        self,
        nethack_bin: str,
        character: CharacterSpec,
        record_to=None,
        idle_window: float = IDLE_WINDOW_S,
        step_timeout: float = STEP_TIMEOUT_S,
        playground: str | None = None,
    ) -> None:
        self.nethack_bin = nethack_bin
        self.character = validate_character(character)
        self.idle_window = idle_window
        self.step_timeout = step_timeout
        self.playground = playground
        self._recorder = TtyrecRecorder(record_to) if record_to else None
        self._pid: int | None = None
        self._fd: int | None = None
        self._emu: TerminalEmulator | None = None
        self._rc_dir: tempfile.TemporaryDirectory | None = None

    def reset(self) -> StepResult:
        if not os.path.exists(self.nethack_bin):
            raise EnvError(f"NetHack binary not found: {self.nethack_bin}")
        self.close()
        self._rc_dir = tempfile.TemporaryDirectory(prefix="nhbot-rc-")
        rc_path = os.path.join(self._rc_dir.name, "nethackrc")
        with open(rc_path, "w") as f:
            f.write(
                _RC_TEMPLATE.format(
                    role=self.character.role,
                    race=self.character.race,
                    alignment=self.character.alignment,
                    gender=self.character.gender,
                )
            )
        env = dict(os.environ)
        env["NETHACKOPTIONS"] = f"@{rc_path}"
        env["TERM"] = "xterm"
        env["LINES"] = "24"
        env["COLUMNS"] = "80"
        if self.playground:
            env["HACKDIR"] = self.playground

        pid, fd = os.forkpty()
        if pid == 0:  # child
            try:
                os.execvpe(self.nethack_bin, [self.nethack_bin], env)
            finally:
                os._exit(127)
        self._pid = pid
        self._fd = fd
        self._emu = TerminalEmulator()
        return self._read_step()

    def step_keys(self, keys: KeySequence) -> StepResult:
        if self._fd is None or self._emu is None:
            raise EnvError("step before reset")
        try:
            os.write(self._fd, bytes(keys))
        except OSError:
            return self._finish(terminated=True)
        return self._read_step()

    def _read_step(self) -> StepResult:
        assert self._fd is not None and self._emu is not None
        deadline = time.monotonic() + self.step_timeout
        collected = bytearray()
        saw_output = False
        while True:
            now = time.monotonic()
            if now >= deadline:
                break
            wait = self.idle_window if saw_output or collected else min(
                0.25, deadline - now
            )
            try:
                ready, _, _ = select.select([self._fd], [], [], wait)
            except OSError:
                return self._finish(terminated=True, payload=bytes(collected))
            if not ready:
                # Idle: done only once something arrived and no escape is
                # pending; otherwise keep waiting for the slow start.
                if collected and not self._emu.mid_sequence:
                    break
                if not collected and not self._alive():
                    return self._finish(terminated=True)
                continue
            try:
                chunk = os.read(self._fd, 65536)
            except OSError:
                return self._finish(terminated=True, payload=bytes(collected))
            if not chunk:
                return self._finish(terminated=True, payload=bytes(collected))
            collected += chunk
            self._emu.feed(chunk)
            saw_output = True
        payload = bytes(collected)
        if self._recorder is not None:
            self._recorder.record(payload)
        return StepResult(
            snapshot=self._emu.snapshot(),
            terminated=not self._alive(),
            raw_bytes_len=len(payload),
        )

    def _finish(self, terminated: bool, payload: bytes = b"") -> StepResult:
        assert self._emu is not None
        if payload and self._recorder is not None:
            self._recorder.record(payload)
        return StepResult(
            snapshot=self._emu.snapshot(),
            terminated=terminated,
            raw_bytes_len=len(payload),
        )

    def _alive(self) -> bool:
        if self._pid is None:
            return False
        try:
            pid, _status = os.waitpid(self._pid, os.WNOHANG)
        except ChildProcessError:
            return False
        if pid == self._pid:
            self._pid = None
            return False
        return True

    def close(self) -> None:
        if self._pid is not None:
            try:
                os.kill(self._pid, signal.SIGKILL)
                os.waitpid(self._pid, 0)
            except (ProcessLookupError, ChildProcessError):
                pass
            self._pid = None
        if self._fd is not None:
            try:
                os.close(self._fd)
            except OSError:
                pass
            self._fd = None
        if self._rc_dir is not None:
            self._rc_dir.cleanup()
            self._rc_dir = None
