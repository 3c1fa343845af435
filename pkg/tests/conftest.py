from __future__ import annotations

import os

import pytest

from nhbot.state.types import Branch, GameState, Monster
from nhbot.term.screen import COLS, ROWS, ScreenSnapshot, from_grid

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


def snapshot_from_lines(lines, cursor=(0, 0), colors=None) -> ScreenSnapshot:
    """Build a snapshot from up to 24 text rows (padded/truncated to 80)."""
    rows = [line[:COLS].ljust(COLS) for line in lines]
    while len(rows) < ROWS:
        rows.append(" " * COLS)
    return from_grid(rows[:ROWS], colors, cursor)


def map_screen(map_rows, message="", status="Dlvl:1 $:0 HP:12(12) Pw:5(5) AC:7 Exp:1 T:1",
               attr_row="Agent the Stripling  St:16 Dx:12 Co:14 In:9 Wi:10 Ch:8  Lawful",
               cursor=None, colors=None):
    """Assemble a full screen: message, 21 map rows, two status rows."""
    rows = [message]
    rows.extend(list(map_rows) + [""] * (21 - len(map_rows)))
    rows.append(attr_row)
    rows.append(status)
    if cursor is None:
        cursor = (0, 0)
        for r, line in enumerate(map_rows):
            c = line.find("@")
            if c >= 0:
                cursor = (r + 1, c)
                break
    return snapshot_from_lines(rows, cursor=cursor, colors=colors)


def simple_state(map_rows, turn=1, hp=12, max_hp=12, branch=Branch.UNKNOWN,
                 monsters=(), inventory=(), hero=None) -> GameState:
    """GameState parsed from plain map rows plus direct field overrides."""
    from nhbot.state.blstats import parse_status_text
    from nhbot.state.mapparse import parse_map

    state = GameState.new(branch=branch)
    state.blstats = parse_status_text(
        f"Dlvl:1 $:0 HP:{hp}({max_hp}) Pw:5(5) AC:7 Exp:1 T:{turn}"
    )
    snap = map_screen(map_rows, status=f"Dlvl:1 $:0 HP:{hp}({max_hp}) Pw:5(5)"
                                       f" AC:7 Exp:1 T:{turn}")
    parse_map(snap, state)
    if hero is not None:
        state.hero_pos = hero
    if monsters:
        state.monsters = list(monsters)
    state.inventory = list(inventory)
    state.current_level.branch = branch
    return state


@pytest.fixture
def blank_state() -> GameState:
    return GameState.new()


def make_monster(pos, char="d", color=3, hostile=True) -> Monster:
    return Monster(pos=pos, char=char, color=color, hostile_guess=hostile)
