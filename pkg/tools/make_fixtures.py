#!/usr/bin/env python3
"""Generate the ttyrec fixture and its golden final grid.

The byte stream is composed from explicit (escape sequence, semantics)
pairs: every emitted control is mirrored into an independent expected
model that applies the documented ECMA-48 meaning directly (plain array
writes, no parser). The golden therefore encodes what the bytes are
*defined* to do, not what any emulator under test happens to produce.
Run once, eyeball the printed screen, commit the outputs.
"""

from __future__ import annotations

import os
import struct

ROWS, COLS = 24, 80

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures")


class Expected:
    """Direct-application model of the sequences the generator emits."""

    def __init__(self) -> None:
        self.chars = [[" "] * COLS for _ in range(ROWS)]
        self.colors = [[0] * COLS for _ in range(ROWS)]
        self.row = 0
        self.col = 0
        self.attr = 0

    def set_attr(self, attr: int) -> None:
        self.attr = attr

    def goto(self, row: int, col: int) -> None:
        self.row, self.col = row, col

    def put(self, text: str) -> None:
        for ch in text:
            self.chars[self.row][self.col] = ch
            self.colors[self.row][self.col] = self.attr
            if self.col < COLS - 1:
                self.col += 1

    def clear(self) -> None:
        self.chars = [[" "] * COLS for _ in range(ROWS)]
        self.colors = [[0] * COLS for _ in range(ROWS)]

    def erase_to_eol(self) -> None:
        for c in range(self.col, COLS):
            self.chars[self.row][c] = " "
            self.colors[self.row][c] = 0

    def scroll_up_region(self, top: int, bottom: int) -> None:
        del self.chars[top]
        del self.colors[top]
        self.chars.insert(bottom, [" "] * COLS)
        self.colors.insert(bottom, [0] * COLS)


class Builder:
    def __init__(self) -> None:
        self.expected = Expected()
        self.frames: list[bytes] = []
        self._buf = bytearray()

    def raw(self, data: bytes) -> None:
        self._buf += data

    def clear(self) -> None:
        self.raw(b"\x1b[2J")
        self.expected.clear()

    def goto(self, row: int, col: int) -> None:  # 0-indexed args
        self.raw(f"\x1b[{row + 1};{col + 1}H".encode())
        self.expected.goto(row, col)

    def sgr(self, *params: int) -> None:
        self.raw(("\x1b[" + ";".join(str(p) for p in params) + "m").encode())
        attr = self.expected.attr
        for p in params:
            if p == 0:
                attr = 0
            elif p == 1:
                attr |= 0x10
            elif p == 7:
                attr |= 0x20
            elif 30 <= p <= 37:
                attr = (attr & ~0x0F) | (p - 30)
        self.expected.set_attr(attr)

    def put(self, text: str) -> None:
        self.raw(text.encode("ascii"))
        self.expected.put(text)

    def erase_to_eol(self) -> None:
        self.raw(b"\x1b[K")
        self.expected.erase_to_eol()

    def junk(self, data: bytes) -> None:
        """Sequences defined to not touch the grid (skipped by contract)."""
        self.raw(data)

    def end_frame(self, sec: int, usec: int) -> None:
        self.frames.append(bytes(self._buf))
        self._buf = bytearray()
        self._last_time = (sec, usec)


def build() -> Builder:
    b = Builder()

    # Frame 1: clear, banner, early map sketch.
    b.junk(b"\x1b[?1049h")  # private mode: defined as skipped
    b.clear()
    b.goto(0, 0)
    b.put("NetHack, Copyright 1985-2020")
    b.goto(1, 0)
    b.put("         By Stichting Mathematisch Centrum and M. Stephenson.")
    b.goto(2, 0)
    b.put("         Version 3.6.6. See license for details.")
    b.end_frame(100, 0)

    # Frame 2: full dungeon screen with colors.
    b.clear()
    b.goto(0, 0)
    b.put("Hello agent, welcome to NetHack!  You are a lawful female human")
    map_rows = [
        "                 --------------",
        "                 |............|",
        "                 |.....{......|",
        "                 |............|",
        "                 --------------",
    ]
    for i, row in enumerate(map_rows):
        b.goto(3 + i, 0)
        b.put(row)
    # Fountain colored blue, door overlaid in yellow.
    b.sgr(0)
    b.goto(5, 23)
    b.sgr(34)
    b.put("{")
    b.sgr(0)
    b.goto(4, 17)
    b.sgr(33)
    b.put("|")
    b.sgr(0)
    # Hero with bold white, a pet with inverse.
    b.goto(4, 20)
    b.sgr(1, 37)
    b.put("@")
    b.sgr(0)
    b.goto(4, 22)
    b.sgr(7)
    b.put("f")
    b.sgr(0)
    # Status rows.
    b.goto(22, 0)
    b.put("Agent the Stripling            St:17 Dx:11 Co:18 In:8 Wi:9 Ch:8  Lawful")
    b.goto(23, 0)
    b.put("Dlvl:1  $:0  HP:16(16) Pw:2(2) AC:6  Exp:1 T:1")
    b.goto(4, 20)
    b.end_frame(100, 250000)

    # Frame 3: message with erase, unknown escapes, overwrite, tab/backspace.
    b.goto(0, 0)
    b.erase_to_eol()
    b.put("You see here a red gem.")
    b.junk(b"\x1b]0;window title\x07")  # OSC: skipped
    b.junk(b"\x1b(B")  # charset: skipped
    b.goto(4, 21)
    b.put(".")  # pet moved away; floor behind
    b.goto(4, 22)
    b.sgr(7)
    b.put("f")
    b.sgr(0)
    b.goto(23, 0)
    b.put("Dlvl:1  $:7  HP:16(16) Pw:2(2) AC:6  Exp:1 T:23")
    b.erase_to_eol()
    b.goto(4, 20)
    b.end_frame(101, 500)

    # Frame 4: scroll region exercise on the message area (rows 1-3),
    # then restore full region.
    b.raw(b"\x1b[2;4r")  # set region rows 1..3 (0-indexed), homes cursor
    b.expected.goto(0, 0)
    b.goto(3, 0)
    b.put("old line one")
    b.raw(b"\r\n")  # CR, then LF at region bottom scrolls rows 1..3 up
    b.expected.scroll_up_region(1, 3)
    b.expected.goto(3, 0)
    b.put("old line two")
    b.raw(b"\x1b[r")  # reset region, homes cursor
    b.expected.goto(0, 0)
    b.goto(4, 20)
    b.end_frame(102, 999999)
    return b


def main() -> None:
    os.makedirs(OUT_DIR, exist_ok=True)
    b = build()
    rec_path = os.path.join(OUT_DIR, "start_screen.ttyrec")
    with open(rec_path, "wb") as f:
        times = [(100, 0), (100, 250000), (101, 500), (102, 999999)]
        for (sec, usec), payload in zip(times, b.frames):
            f.write(struct.pack("<III", sec, usec, len(payload)))
            f.write(payload)
    exp = b.expected
    golden_path = os.path.join(OUT_DIR, "start_screen.golden")
    with open(golden_path, "w") as f:
        f.write(f"cursor {exp.row} {exp.col}\n")
        for r in range(ROWS):
            f.write("".join(exp.chars[r]) + "\n")
        for r in range(ROWS):
            f.write(",".join(str(c) for c in exp.colors[r]) + "\n")
    print(f"wrote {rec_path} and {golden_path}")
    print("--- final screen for eyeball verification ---")
    for r in range(ROWS):
        print("".join(exp.chars[r]).rstrip())


if __name__ == "__main__":
    main()
