"""Sokoban push planning by state-space search.

States are (hero reachable region, boulder set, hole set); a push stands
the hero behind a boulder and shoves it one cardinal step, and a boulder
shoved into a hole fills it (both disappear). Breadth-first search over
pushes finds a plan filling every hole, or None within the node budget.
Plans are re-validated against live state before each push.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..actions.codec import Direction
from ..term.screen import COLS
from ..state.types import MAP_ROWS, Feature, LevelMemory

DEFAULT_NODE_BUDGET = 200_000

_CARDINALS = (Direction.N, Direction.S, Direction.W, Direction.E)

_PUSHABLE_GROUND = frozenset(
    {
        Feature.FLOOR,
        Feature.CORRIDOR,
        Feature.OPEN_DOOR,
        Feature.STAIRS_UP,
        Feature.STAIRS_DOWN,
        Feature.ALTAR,
        Feature.FOUNTAIN,
        Feature.TRAP,
    }
)


@dataclass(frozen=True)
class PushStep:
    push_from: tuple[int, int]  # hero stands here...
    direction: Direction  # ...and moves this way into the boulder


def _static_open(level: LevelMemory) -> frozenset[tuple[int, int]]:
    """Cells the hero or a boulder could ever occupy (ignoring boulders)."""
    open_cells = set()
    for r in range(MAP_ROWS):
        for c in range(COLS):
            feature = level.tiles[r][c].feature
            if feature in _PUSHABLE_GROUND or feature is Feature.BOULDER:
                open_cells.add((r, c))
            elif feature is Feature.HOLE:
                open_cells.add((r, c))
    return frozenset(open_cells)


def _region(
    open_cells: frozenset[tuple[int, int]],
    boulders: frozenset[tuple[int, int]],
    holes: frozenset[tuple[int, int]],
    start: tuple[int, int],
) -> frozenset[tuple[int, int]]:
    """Hero-reachable cells: open, not a boulder, not an unfilled hole."""
    if start not in open_cells or start in boulders or start in holes:
        return frozenset({start})
    seen = {start}
    queue = deque([start])
    while queue:
        r, c = queue.popleft()
        for d in _CARDINALS:
            n = (r + d.delta[0], c + d.delta[1])
            if (
                n in open_cells
                and n not in boulders
                and n not in holes
                and n not in seen
            ):
                seen.add(n)
                queue.append(n)
    return frozenset(seen)


def sokoban_plan(
    level: LevelMemory,
    hero_pos: tuple[int, int],
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> list[PushStep] | None:
    """A push sequence filling all holes, or None (unsolvable/budget)."""
    boulders = frozenset(level.find_feature(Feature.BOULDER))
    holes = frozenset(level.find_feature(Feature.HOLE))
    if not holes:
        return []
    if not boulders:
        return None
    open_cells = _static_open(level)

    start_region = _region(open_cells, boulders, holes, hero_pos)
    start = (start_region, boulders, holes)
    seen = {(min(start_region), boulders, holes)}
    queue: deque[tuple[tuple, list[PushStep]]] = deque([(start, [])])
    expanded = 0

    while queue:
        (region, cur_boulders, cur_holes), plan = queue.popleft()
        expanded += 1
        if expanded > node_budget:
            return None
        for boulder in sorted(cur_boulders):
            for d in _CARDINALS:
                behind = (boulder[0] - d.delta[0], boulder[1] - d.delta[1])
                dest = (boulder[0] + d.delta[0], boulder[1] + d.delta[1])
                if behind not in region:
                    continue
                if dest not in open_cells or dest in cur_boulders:
                    continue
                next_boulders = set(cur_boulders)
                next_boulders.discard(boulder)
                next_holes = cur_holes
                if dest in cur_holes:
                    next_holes = cur_holes - {dest}  # boulder plugs the hole
                else:
                    next_boulders.add(dest)
                nb = frozenset(next_boulders)
                step = PushStep(push_from=behind, direction=d)
                if not next_holes:
                    return plan + [step]
                nregion = _region(open_cells, nb, next_holes, boulder)
                fingerprint = (min(nregion), nb, next_holes)
                if fingerprint in seen:
                    continue
                seen.add(fingerprint)
                queue.append(((nregion, nb, next_holes), plan + [step]))
    return None


def validate_push(
    level: LevelMemory,
    step: PushStep,
    monsters_at: frozenset[tuple[int, int]] = frozenset(),
) -> bool:
    """Check a planned push against the live level before committing."""
    boulder = (
        step.push_from[0] + step.direction.delta[0],
        step.push_from[1] + step.direction.delta[1],
    )
    dest = (boulder[0] + step.direction.delta[0], boulder[1] + step.direction.delta[1])
    if level.tile(boulder).feature is not Feature.BOULDER:
        return False
    if not (0 <= dest[0] < MAP_ROWS and 0 <= dest[1] < COLS):
        return False
    dest_feature = level.tile(dest).feature
    if dest_feature not in _PUSHABLE_GROUND and dest_feature is not Feature.HOLE:
        return False
    if dest in monsters_at or boulder in monsters_at:
        return False
    return True
