"""Loader for the versioned plain-text tables shipped under nhbot/data."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources


def _read(name: str) -> str:
    return resources.files("nhbot").joinpath("data", name).read_text("utf-8")


def _is_comment(line: str) -> bool:
    # Comment lines are "# ..." (hash then space); a bare "#" column value
    # (e.g. the corridor glyph) is data.
    stripped = line.lstrip()
    return stripped.startswith("# ") or stripped == "#"


@lru_cache(maxsize=None)
def read_table(name: str) -> tuple[tuple[str, ...], ...]:
    """Read a tab-separated data file, skipping comments and blank lines."""
    rows = []
    for line in _read(name).splitlines():
        if not line.strip() or _is_comment(line):
            continue
        rows.append(tuple(line.rstrip("\n").split("\t")))
    return tuple(rows)


@lru_cache(maxsize=None)
def read_lines(name: str) -> tuple[str, ...]:
    """Read a one-entry-per-line data file, skipping comments and blanks."""
    return tuple(
        line.strip()
        for line in _read(name).splitlines()
        if line.strip() and not _is_comment(line)
    )


def scenario_text(name: str) -> str:
    """Raw text of a shipped mock scenario."""
    return _read(f"scenarios/{name}")
