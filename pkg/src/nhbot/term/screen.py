"""Immutable 24x80 screen snapshots.

The snapshot is the only view of the game the agent ever gets: a grid of
printable bytes, a parallel grid of color attributes, and the cursor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

ROWS = 24
COLS = 80

# Attribute byte layout: bits 0-3 foreground color index (0-15),
# bit 4 bold, bit 5 inverse video.
ATTR_FG_MASK = 0x0F
ATTR_BOLD = 0x10
ATTR_INVERSE = 0x20

PRINTABLE_MIN = 0x20
PRINTABLE_MAX = 0x7E


class ShapeError(ValueError):
    """Grid input does not have the fixed 24x80 geometry."""


@dataclass(frozen=True)
class ScreenSnapshot:
    """A frozen copy of the terminal screen.

    ``chars`` and ``colors`` are tuples of 24 rows, each an 80-byte
    ``bytes`` object.  Every char byte is printable ASCII (0x20-0x7E).
    """

    chars: tuple[bytes, ...]
    colors: tuple[bytes, ...]
    cursor: tuple[int, int]

    @property
    def rows(self) -> int:
        return ROWS

    @property
    def cols(self) -> int:
        return COLS

    def line(self, row: int) -> str:
        """Row as text (ASCII, always exactly 80 chars)."""
        return self.chars[row].decode("ascii")

    def lines(self) -> list[str]:
        return [self.line(r) for r in range(ROWS)]

    def char_at(self, row: int, col: int) -> str:
        return chr(self.chars[row][col])

    def color_at(self, row: int, col: int) -> int:
        return self.colors[row][col]

    def text(self) -> str:
        """Whole screen as one newline-joined string (for matching/goldens)."""
        return "\n".join(self.lines())

    def validate(self) -> None:
        """Raise ShapeError/ValueError if any snapshot invariant is broken."""
        if len(self.chars) != ROWS or len(self.colors) != ROWS:
            raise ShapeError(f"expected {ROWS} rows")
        for row in self.chars:
            if len(row) != COLS:
                raise ShapeError(f"expected {COLS} columns")
            for b in row:
                if not (PRINTABLE_MIN <= b <= PRINTABLE_MAX):
                    raise ValueError(f"non-printable byte {b:#x} in grid")
        for row in self.colors:
            if len(row) != COLS:
                raise ShapeError(f"expected {COLS} columns")
        r, c = self.cursor
        if not (0 <= r < ROWS and 0 <= c < COLS):
            raise ValueError(f"cursor {self.cursor} out of bounds")


def blank_snapshot() -> ScreenSnapshot:
    row = b" " * COLS
    attr = bytes(COLS)
    return ScreenSnapshot(
        chars=tuple(row for _ in range(ROWS)),
        colors=tuple(attr for _ in range(ROWS)),
        cursor=(0, 0),
    )


def _as_row(row: Iterable[int] | bytes | str) -> bytes:
    if isinstance(row, str):
        data = row.encode("ascii", errors="replace")
    else:
        data = bytes(row)
    if len(data) != COLS:
        raise ShapeError(f"row has {len(data)} cells, expected {COLS}")
    return data


def from_grid(
    chars: Sequence[Iterable[int] | bytes | str],
    colors: Sequence[Iterable[int] | bytes] | None = None,
    cursor: tuple[int, int] = (0, 0),
) -> ScreenSnapshot:
    """Wrap raw 24x80 grids in a snapshot, replacing non-printable bytes.

    This is the entry point for callers that receive whole grids (rather
    than an escape-code byte stream), e.g. observation bridges.  Shape
    mismatches raise :class:`ShapeError`.
    """
    if len(chars) != ROWS:
        raise ShapeError(f"grid has {len(chars)} rows, expected {ROWS}")
    char_rows = []
    for row in chars:
        data = _as_row(row)
        # Sanitize rather than reject: grids from foreign sources may carry
        # NULs for unseen cells.
        data = bytes(
            b if PRINTABLE_MIN <= b <= PRINTABLE_MAX else ord(" ") for b in data
        )
        char_rows.append(data)
    if colors is None:
        color_rows = [bytes(COLS) for _ in range(ROWS)]
    else:
        if len(colors) != ROWS:
            raise ShapeError(f"color grid has {len(colors)} rows, expected {ROWS}")
        color_rows = [_as_row(row) for row in colors]
    r, c = cursor
    if not (0 <= r < ROWS and 0 <= c < COLS):
        raise ShapeError(f"cursor {cursor} out of bounds")
    return ScreenSnapshot(tuple(char_rows), tuple(color_rows), (r, c))
