"""Shortest paths over remembered level tiles.

8-connected uniform-cost search with NetHack's movement quirks: no
diagonal step may pass through a door cell, and the Sokoban branch
forbids diagonals outright. Unknown tiles are not walkable -- the agent
only plans over what it has seen.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from ..term.screen import COLS
from ..state.types import MAP_ROWS, Branch, Feature, LevelMemory

WALKABLE_FEATURES = frozenset(
    {
        Feature.FLOOR,
        Feature.CORRIDOR,
        Feature.OPEN_DOOR,
        Feature.STAIRS_UP,
        Feature.STAIRS_DOWN,
        Feature.ALTAR,
        Feature.FOUNTAIN,
        Feature.TRAP,
        Feature.HOLE,
    }
)

_DOOR_FEATURES = frozenset({Feature.OPEN_DOOR, Feature.CLOSED_DOOR})

_STEPS_8 = ((-1, 0), (1, 0), (0, -1), (0, 1), (-1, -1), (-1, 1), (1, -1), (1, 1))
_STEPS_4 = ((-1, 0), (1, 0), (0, -1), (0, 1))


@dataclass(frozen=True)
class MovementRules:
    allow_diagonal: bool = True
    no_diagonal_through_doors: bool = True


def movement_rules_for(level: LevelMemory) -> MovementRules:
    return MovementRules(allow_diagonal=level.branch is not Branch.SOKOBAN)


def in_bounds(pos: tuple[int, int]) -> bool:
    return 0 <= pos[0] < MAP_ROWS and 0 <= pos[1] < COLS


def walkable(level: LevelMemory, pos: tuple[int, int]) -> bool:
    return in_bounds(pos) and level.tile(pos).feature in WALKABLE_FEATURES


def step_legal(
    level: LevelMemory,
    src: tuple[int, int],
    dst: tuple[int, int],
    rules: MovementRules,
) -> bool:
    """Is the single move src->dst legal (dst walkable, diagonal rules ok)?"""
    if not walkable(level, dst):
        return False
    dr, dc = dst[0] - src[0], dst[1] - src[1]
    if dr == 0 or dc == 0:
        return True
    if not rules.allow_diagonal:
        return False
    if rules.no_diagonal_through_doors:
        if level.tile(src).feature in _DOOR_FEATURES:
            return False
        if level.tile(dst).feature in _DOOR_FEATURES:
            return False
    return True


def neighbors(
    level: LevelMemory, pos: tuple[int, int], rules: MovementRules
) -> list[tuple[int, int]]:
    steps = _STEPS_8 if rules.allow_diagonal else _STEPS_4
    out = []
    for dr, dc in steps:
        dst = (pos[0] + dr, pos[1] + dc)
        if step_legal(level, pos, dst, rules):
            out.append(dst)
    return out


def find_path(
    level: LevelMemory,
    start: tuple[int, int],
    goal: tuple[int, int],
    rules: MovementRules | None = None,
) -> list[tuple[int, int]] | None:
    """Minimal move sequence from start to goal (start excluded).

    A* with a Chebyshev (or Manhattan, when diagonals are off) heuristic;
    returns None when the goal is unreachable. The start tile itself need
    not be walkable (the hero may stand on an unclassified cell), the
    goal must be.
    """
    if not in_bounds(start) or not in_bounds(goal):
        return None
    if rules is None:
        rules = movement_rules_for(level)
    if start == goal:
        return []
    if not walkable(level, goal):
        return None

    def h(pos: tuple[int, int]) -> int:
        dr = abs(pos[0] - goal[0])
        dc = abs(pos[1] - goal[1])
        return max(dr, dc) if rules.allow_diagonal else dr + dc

    frontier: list[tuple[int, int, tuple[int, int]]] = [(h(start), 0, start)]
    best_g = {start: 0}
    came: dict[tuple[int, int], tuple[int, int]] = {}
    while frontier:
        f, g, pos = heapq.heappop(frontier)
        if pos == goal:
            path = [pos]
            while pos in came:
                pos = came[pos]
                path.append(pos)
            path.reverse()
            return path[1:]
        if g > best_g.get(pos, g):
            continue
        for nxt in neighbors(level, pos, rules):
            ng = g + 1
            if ng < best_g.get(nxt, 1 << 30):
                best_g[nxt] = ng
                came[nxt] = pos
                heapq.heappush(frontier, (ng + h(nxt), ng, nxt))
    return None


def reachable_set(
    level: LevelMemory, start: tuple[int, int], rules: MovementRules | None = None
) -> dict[tuple[int, int], int]:
    """BFS distances from start over walkable tiles (start included at 0)."""
    if rules is None:
        rules = movement_rules_for(level)
    dist = {start: 0}
    queue = [start]
    head = 0
    while head < len(queue):
        pos = queue[head]
        head += 1
        for nxt in neighbors(level, pos, rules):
            if nxt not in dist:
                dist[nxt] = dist[pos] + 1
                queue.append(nxt)
    return dist
