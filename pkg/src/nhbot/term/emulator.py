"""A small, total terminal emulator for a fixed 24x80 screen.

Supports the escape subset NetHack's tty windowport actually emits:
cursor positioning and relative movement, erase line/screen, scroll
regions, and SGR colors 0-15 with bold/inverse.  Everything else is
consumed without touching the grid and tallied in ``diagnostics``.
The parser never raises on input: malformed or truncated sequences are
skipped, and sequence state survives chunk boundaries so a byte stream
may be fed in arbitrary slices.
"""

from __future__ import annotations

import re
from collections import Counter

from .screen import (
    ATTR_BOLD,
    ATTR_FG_MASK,
    ATTR_INVERSE,
    COLS,
    PRINTABLE_MAX,
    PRINTABLE_MIN,
    ROWS,
    ScreenSnapshot,
)

_GROUND = 0
_ESC = 1
_CSI = 2
_OSC = 3
_CHARSET = 4

# In GROUND, everything up to the next C0 control or high byte can be
# printed in one slice.
_PLAIN_RUN = re.compile(rb"[\x20-\x7e]+")

_MAX_PARAM = 9999


class TerminalEmulator:
    """Mutable emulator state; take :meth:`snapshot` for an immutable view.

    Single-owner: one emulator per episode, never shared across threads.
    """

    def __init__(self, rows: int = ROWS, cols: int = COLS) -> None:
        if rows != ROWS or cols != COLS:
            raise ValueError(f"only {ROWS}x{COLS} screens are supported")
        self.diagnostics: Counter[str] = Counter()
        self._grid = [bytearray(b" " * COLS) for _ in range(ROWS)]
        self._colors = [bytearray(COLS) for _ in range(ROWS)]
        self._row = 0
        self._col = 0
        self._attr = 0
        self._scroll_top = 0
        self._scroll_bottom = ROWS - 1
        self._state = _GROUND
        self._params = bytearray()
        self._osc_esc = False

    # -- public API ---------------------------------------------------

    @property
    def mid_sequence(self) -> bool:
        """True while a partial escape sequence is pending."""
        return self._state != _GROUND

    def feed(self, data: bytes) -> None:
        """Interpret a chunk of terminal output."""
        i = 0
        n = len(data)
        while i < n:
            if self._state == _GROUND:
                b = data[i]
                if PRINTABLE_MIN <= b <= PRINTABLE_MAX:
                    m = _PLAIN_RUN.match(data, i)
                    assert m is not None
                    self._print(m.group())
                    i = m.end()
                    continue
                i += 1
                self._control(b)
            elif self._state == _ESC:
                i = self._feed_esc(data, i)
            elif self._state == _CSI:
                i = self._feed_csi(data, i)
            elif self._state == _OSC:
                i = self._feed_osc(data, i)
            else:  # _CHARSET: swallow the designator byte
                self._state = _GROUND
                i += 1

    def snapshot(self) -> ScreenSnapshot:
        return ScreenSnapshot(
            chars=tuple(bytes(r) for r in self._grid),
            colors=tuple(bytes(r) for r in self._colors),
            cursor=(self._row, self._col),
        )

    # -- printing and C0 controls --------------------------------------

    def _print(self, run: bytes) -> None:
        row = self._grid[self._row]
        colors = self._colors[self._row]
        col = self._col
        attr = self._attr
        for b in run:
            row[col] = b
            colors[col] = attr
            if col < COLS - 1:
                col += 1
            else:
                # No autowrap: overflow overwrites the last column, so the
                # cursor invariant can never break.
                self.diagnostics["overflow"] += 1
        self._col = col

    def _control(self, b: int) -> None:
        if b == 0x1B:
            self._state = _ESC
        elif b == 0x0D:  # CR
            self._col = 0
        elif b == 0x0A:  # LF
            self._linefeed()
        elif b == 0x08:  # BS
            if self._col > 0:
                self._col -= 1
        elif b == 0x09:  # HT
            self._col = min((self._col // 8 + 1) * 8, COLS - 1)
        elif b == 0x07:  # BEL
            pass
        elif b >= 0x80:
            # High bytes inside text (e.g. IBMgraphics) become spaces.
            self.diagnostics["nonprintable"] += 1
            self._print(b" ")
        else:
            self.diagnostics["nonprintable"] += 1

    def _linefeed(self) -> None:
        if self._row == self._scroll_bottom:
            self._scroll_up(1)
        elif self._row < ROWS - 1:
            self._row += 1

    def _scroll_up(self, count: int) -> None:
        top, bottom = self._scroll_top, self._scroll_bottom
        for _ in range(min(count, bottom - top + 1)):
            del self._grid[top]
            del self._colors[top]
            self._grid.insert(bottom, bytearray(b" " * COLS))
            self._colors.insert(bottom, bytearray(COLS))

    def _scroll_down(self, count: int) -> None:
        top, bottom = self._scroll_top, self._scroll_bottom
        for _ in range(min(count, bottom - top + 1)):
            del self._grid[bottom]
            del self._colors[bottom]
            self._grid.insert(top, bytearray(b" " * COLS))
            self._colors.insert(top, bytearray(COLS))

    # -- escape dispatch ------------------------------------------------

    def _feed_esc(self, data: bytes, i: int) -> int:
        b = data[i]
        self._state = _GROUND
        if b == ord("["):
            self._state = _CSI
            self._params.clear()
        elif b == ord("]"):
            self._state = _OSC
            self._osc_esc = False
        elif b in b"()*+#%":  # charset / line-size designators: skip payload
            self._state = _CHARSET
            self.diagnostics["skipped_escape"] += 1
        elif b == ord("M"):  # reverse index
            if self._row == self._scroll_top:
                self._scroll_down(1)
            elif self._row > 0:
                self._row -= 1
        elif b == ord("D"):  # index
            self._linefeed()
        elif b == ord("E"):  # next line
            self._col = 0
            self._linefeed()
        elif b == 0x1B:
            self._state = _ESC  # restart on doubled ESC
            self.diagnostics["malformed"] += 1
        else:
            self.diagnostics["skipped_escape"] += 1
        return i + 1

    def _feed_csi(self, data: bytes, i: int) -> int:
        n = len(data)
        params = self._params
        while i < n:
            b = data[i]
            i += 1
            if 0x30 <= b <= 0x3F or 0x20 <= b <= 0x2F:
                if len(params) < 64:
                    params.append(b)
                continue
            if b == 0x1B:  # aborted sequence
                self.diagnostics["malformed"] += 1
                self._state = _ESC
                return i
            if 0x40 <= b <= 0x7E:
                self._state = _GROUND
                self._csi_dispatch(b, bytes(params))
                return i
            # Stray control byte inside a sequence: drop the sequence.
            self.diagnostics["malformed"] += 1
            self._state = _GROUND
            return i
        return i  # chunk ended mid-sequence; state persists

    def _feed_osc(self, data: bytes, i: int) -> int:
        # Consume until BEL or ESC \ (string terminator).
        n = len(data)
        while i < n:
            b = data[i]
            i += 1
            if b == 0x07:
                self._state = _GROUND
                self.diagnostics["skipped_escape"] += 1
                return i
            if self._osc_esc:
                self._state = _GROUND
                self.diagnostics["skipped_escape"] += 1
                return i
            if b == 0x1B:
                self._osc_esc = True
        return i

    @staticmethod
    def _parse_params(raw: bytes) -> list[int]:
        out: list[int] = []
        for part in raw.split(b";"):
            digits = bytes(ch for ch in part if 0x30 <= ch <= 0x39)
            out.append(min(int(digits), _MAX_PARAM) if digits else 0)
        return out

    def _csi_dispatch(self, final: int, raw: bytes) -> None:
        if raw.startswith(b"?") or raw.startswith(b">"):
            self.diagnostics["skipped_escape"] += 1  # private modes
            return
        p = self._parse_params(raw)
        c = chr(final)
        if c in "Hf":  # cursor position, 1-indexed
            row = (p[0] or 1) - 1
            col = ((p[1] if len(p) > 1 else 1) or 1) - 1
            self._row = min(max(row, 0), ROWS - 1)
            self._col = min(max(col, 0), COLS - 1)
        elif c == "A":
            self._row = max(self._row - (p[0] or 1), 0)
        elif c == "B":
            self._row = min(self._row + (p[0] or 1), ROWS - 1)
        elif c == "C":
            self._col = min(self._col + (p[0] or 1), COLS - 1)
        elif c == "D":
            self._col = max(self._col - (p[0] or 1), 0)
        elif c == "G":
            self._col = min(max((p[0] or 1) - 1, 0), COLS - 1)
        elif c == "d":
            self._row = min(max((p[0] or 1) - 1, 0), ROWS - 1)
        elif c == "J":
            self._erase_display(p[0])
        elif c == "K":
            self._erase_line(p[0])
        elif c == "m":
            self._sgr(p, raw)
        elif c == "r":
            self._set_scroll_region(p)
        elif c == "S":
            self._scroll_up(p[0] or 1)
        elif c == "T":
            self._scroll_down(p[0] or 1)
        else:
            self.diagnostics["skipped_escape"] += 1

    def _erase_cells(self, row: int, start: int, stop: int) -> None:
        self._grid[row][start:stop] = b" " * (stop - start)
        self._colors[row][start:stop] = bytes(stop - start)

    def _erase_display(self, mode: int) -> None:
        if mode == 0:
            self._erase_cells(self._row, self._col, COLS)
            for r in range(self._row + 1, ROWS):
                self._erase_cells(r, 0, COLS)
        elif mode == 1:
            for r in range(self._row):
                self._erase_cells(r, 0, COLS)
            self._erase_cells(self._row, 0, self._col + 1)
        else:
            for r in range(ROWS):
                self._erase_cells(r, 0, COLS)

    def _erase_line(self, mode: int) -> None:
        if mode == 0:
            self._erase_cells(self._row, self._col, COLS)
        elif mode == 1:
            self._erase_cells(self._row, 0, self._col + 1)
        else:
            self._erase_cells(self._row, 0, COLS)

    def _sgr(self, params: list[int], raw: bytes) -> None:
        if raw == b"":
            params = [0]
        for v in params:
            if v == 0:
                self._attr = 0
            elif v == 1:
                self._attr |= ATTR_BOLD
            elif v == 7:
                self._attr |= ATTR_INVERSE
            elif v == 22:
                self._attr &= ~ATTR_BOLD
            elif v == 27:
                self._attr &= ~ATTR_INVERSE
            elif 30 <= v <= 37:
                self._attr = (self._attr & ~ATTR_FG_MASK) | (v - 30)
            elif 90 <= v <= 97:
                self._attr = (self._attr & ~ATTR_FG_MASK) | (v - 90 + 8)
            elif v == 39:
                self._attr &= ~ATTR_FG_MASK
            else:
                self.diagnostics["sgr_ignored"] += 1

    def _set_scroll_region(self, p: list[int]) -> None:
        top = (p[0] or 1) - 1
        bottom = (p[1] if len(p) > 1 and p[1] else ROWS) - 1
        if 0 <= top < bottom <= ROWS - 1:
            self._scroll_top = top
            self._scroll_bottom = bottom
            self._row = 0
            self._col = 0
        else:
            self.diagnostics["malformed"] += 1
