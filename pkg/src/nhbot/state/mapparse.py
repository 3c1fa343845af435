"""Dungeon-map parsing into persistent level memory.

Only visible cells update memory; blank cells keep whatever was known.
Monster candidates are re-derived per parse: any alphabetic glyph (or a
'@' away from the cursor) counts, with inverse video taken as the pet
highlight and therefore a non-hostile guess.
"""

from __future__ import annotations

from ..datafiles import read_table
from ..term.screen import ATTR_FG_MASK, ATTR_INVERSE, COLS, ScreenSnapshot
from .types import MAP_ROWS, MAP_TOP, Branch, Feature, GameState, Monster

_SOKOBAN_MIN_BOULDERS = 4


def _feature_table() -> tuple[tuple[str, int | None, Feature], ...]:
    rows = []
    for char, color, name in read_table("features.txt"):
        rows.append((char, None if color == "*" else int(color), Feature[name]))
    return tuple(rows)


_FEATURES = _feature_table()


def classify_cell(char: str, color: int) -> Feature | None:
    """Feature for a map cell, or None when the cell shows an item."""
    fg = color & ATTR_FG_MASK
    for tchar, tcolor, feature in _FEATURES:
        if tchar == char and (tcolor is None or tcolor == fg):
            return feature
    return None


def _branch_cues() -> tuple[tuple[Branch, str], ...]:
    return tuple(
        (Branch[row[0]], row[1]) for row in read_table("branch_cues.txt")
    )


_BRANCH_CUES = _branch_cues()


def parse_map(snapshot: ScreenSnapshot, state: GameState) -> GameState:
    """Update level memory, hero position and monster list from a map screen."""
    turn = state.blstats.turn
    level = state.current_level
    state.message = snapshot.line(0).rstrip()

    cr, cc = snapshot.cursor
    if MAP_TOP <= cr < MAP_TOP + MAP_ROWS:
        state.hero_pos = (cr - MAP_TOP, cc)

    if level.branch is Branch.UNKNOWN and state.message:
        lowered = state.message.lower()
        for branch, cue in _BRANCH_CUES:
            if cue in lowered:
                level.branch = branch
                break

    monsters: list[Monster] = []
    boulders = 0
    for r in range(MAP_ROWS):
        row = snapshot.chars[MAP_TOP + r]
        colors = snapshot.colors[MAP_TOP + r]
        for c in range(COLS):
            ch = chr(row[c])
            if ch == " ":
                continue  # unseen or out of sight: memory persists
            color = colors[c]
            tile = level.tiles[r][c]
            tile.last_seen_turn = max(tile.last_seen_turn, turn)
            if (r, c) == state.hero_pos and ch == "@":
                level.stepped.add((r, c))
                if tile.feature is Feature.UNKNOWN:
                    tile.feature = Feature.FLOOR
                continue
            if ch.isalpha() or ch == "@":
                hostile = not (color & ATTR_INVERSE)
                monsters.append(
                    Monster(pos=(r, c), char=ch, color=color & ATTR_FG_MASK,
                            hostile_guess=hostile)
                )
                continue  # the tile underneath keeps its remembered feature
            tile.appearance = (ch, color & ATTR_FG_MASK)
            feature = classify_cell(ch, color)
            if feature is None:
                # Item pile: items rest on something walkable.
                if ch not in tile.items_seen:
                    tile.items_seen.append(ch)
                if tile.feature is Feature.UNKNOWN:
                    tile.feature = Feature.FLOOR
                if ch == "%" and tile.corpse_age is None:
                    tile.corpse_age = turn
            else:
                if feature is Feature.TRAP and level.branch is Branch.SOKOBAN:
                    feature = Feature.HOLE
                if feature is Feature.BOULDER:
                    boulders += 1
                tile.feature = feature
                tile.corpse_age = None

    state.monsters = monsters

    if (
        level.branch is Branch.UNKNOWN
        and boulders >= _SOKOBAN_MIN_BOULDERS
        and not level.find_feature(Feature.STAIRS_DOWN)
    ):
        level.branch = Branch.SOKOBAN
        # Re-read traps as holes under the new branch on the next parse.
    return state


def monster_distance(state: GameState) -> int | None:
    """Chebyshev distance to the nearest hostile-guess monster, if any."""
    hr, hc = state.hero_pos
    best: int | None = None
    for monster in state.monsters:
        if not monster.hostile_guess:
            continue
        d = max(abs(monster.pos[0] - hr), abs(monster.pos[1] - hc))
        if best is None or d < best:
            best = d
    return best
