"""Level exploration goals.

Priority: nearest reachable frontier (a walkable tile touching unseen
space), then an unvisited item pile, then the downstairs, then the most
promising search spot (a dead-end or wall-adjacent tile with remaining
search budget). None once the level is exhausted.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..term.screen import COLS
from ..state.types import MAP_ROWS, Feature, GameState, LevelMemory
from . import pathfind

SEARCH_BUDGET_PER_TILE = 10


@dataclass(frozen=True)
class ExploreGoal:
    pos: tuple[int, int]
    purpose: str  # "frontier", "pile", "descend", "search"


def _neighbors8(pos: tuple[int, int]) -> list[tuple[int, int]]:
    r, c = pos
    out = []
    for dr in (-1, 0, 1):
        for dc in (-1, 0, 1):
            if dr == dc == 0:
                continue
            if 0 <= r + dr < MAP_ROWS and 0 <= c + dc < COLS:
                out.append((r + dr, c + dc))
    return out


def _is_frontier(level: LevelMemory, pos: tuple[int, int]) -> bool:
    # Standing on a frontier resolves it: whatever stayed unknown after a
    # visit is not reachable by walking there again.
    if pos in level.stepped or not pathfind.walkable(level, pos):
        return False
    return any(
        level.tile(n).feature is Feature.UNKNOWN for n in _neighbors8(pos)
    )


def explore_next_goal(
    state: GameState, search_budget: int = SEARCH_BUDGET_PER_TILE
) -> ExploreGoal | None:
    level = state.current_level
    hero = state.hero_pos
    reach = pathfind.reachable_set(level, hero)

    frontier_best: tuple[int, tuple[int, int]] | None = None
    pile_best: tuple[int, tuple[int, int]] | None = None
    for pos, dist in reach.items():
        if _is_frontier(level, pos):
            key = (dist, pos)
            if frontier_best is None or key < frontier_best:
                frontier_best = key
        tile = level.tile(pos)
        if tile.items_seen and pos not in level.stepped:
            key = (dist, pos)
            if pile_best is None or key < pile_best:
                pile_best = key
    if frontier_best is not None:
        return ExploreGoal(pos=frontier_best[1], purpose="frontier")
    if pile_best is not None:
        return ExploreGoal(pos=pile_best[1], purpose="pile")

    for pos in sorted(level.find_feature(Feature.STAIRS_DOWN)):
        if pos in reach:
            return ExploreGoal(pos=pos, purpose="descend")

    spot = _best_search_spot(level, reach, search_budget)
    if spot is not None:
        return ExploreGoal(pos=spot, purpose="search")
    return None


def _best_search_spot(
    level: LevelMemory,
    reach: dict[tuple[int, int], int],
    search_budget: int,
) -> tuple[int, int] | None:
    """Reachable tile worth searching: touching wall/unknown, budget left.

    Dead ends (3+ blocked cardinal neighbors) rank first, then fewer
    searches so effort spreads evenly.
    """
    best: tuple[int, int, int, tuple[int, int]] | None = None
    for pos, dist in reach.items():
        tile = level.tile(pos)
        if tile.search_count >= search_budget:
            continue
        walls = sum(
            1
            for n in _neighbors8(pos)
            if level.tile(n).feature in (Feature.WALL_OR_ROCK, Feature.UNKNOWN)
        )
        if walls == 0:
            continue
        dead_end_rank = 0 if _cardinal_blocked(level, pos) >= 3 else 1
        key = (dead_end_rank, tile.search_count, dist, pos)
        if best is None or key < best:
            best = key
    return best[3] if best else None


def _cardinal_blocked(level: LevelMemory, pos: tuple[int, int]) -> int:
    blocked = 0
    for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1)):
        n = (pos[0] + dr, pos[1] + dc)
        if not pathfind.in_bounds(n) or not pathfind.walkable(level, n):
            blocked += 1
    return blocked
