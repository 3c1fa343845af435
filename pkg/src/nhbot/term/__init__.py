"""Terminal emulation: escape-stream parsing, screen snapshots, ttyrec I/O."""

from .screen import (
    COLS,
    ROWS,
    ATTR_BOLD,
    ATTR_INVERSE,
    ScreenSnapshot,
    ShapeError,
    from_grid,
)
from .emulator import TerminalEmulator
from .ttyrec import TtyrecError, TtyrecFrame, read_ttyrec, write_ttyrec

__all__ = [
    "ROWS",
    "COLS",
    "ATTR_BOLD",
    "ATTR_INVERSE",
    "ScreenSnapshot",
    "ShapeError",
    "from_grid",
    "TerminalEmulator",
    "TtyrecFrame",
    "TtyrecError",
    "read_ttyrec",
    "write_ttyrec",
]
