"""The concrete strategy tree.

Priorities encode the interruption chain: emergency healing preempts
combat, which preempts everything below; sustenance, exploration,
descending and the idle fallback follow in first-fit order. Bodies
re-check their own activation every step so a resumed strategy with a
stale goal exits cleanly instead of acting on old state.
"""

from __future__ import annotations

from typing import Generator

from ..actions.codec import Direction, Eat, GoDown, Move, PickUp, Search, Wait
from ..engine import StateRef, StepOutput, Strategy, Subtree
from ..state.mapparse import monster_distance
from ..state.types import Feature, GameState
from . import combat as combat_mod
from . import pathfind
from .explore import explore_next_goal
from .healing import healing_decide
from .nutrition import sustenance_decide, sustenance_state_from

PRIORITY_HEALING = 90
PRIORITY_COMBAT = 70
PRIORITY_SUSTENANCE = 50
PRIORITY_SOKOBAN = 35
PRIORITY_EXPLORE = 30
PRIORITY_DESCEND = 20
PRIORITY_IDLE = 5

DEFAULT_COMBAT_RANGE = 8


def _healing_body(ref: StateRef) -> Generator[StepOutput, None, None]:
    while True:
        action = healing_decide(ref.state)
        if action is None:
            return
        yield action


def healing_strategy() -> Strategy:
    return Strategy(
        id="emergency-healing",
        priority=PRIORITY_HEALING,
        activation=lambda s: healing_decide(s) is not None,
        body=_healing_body,
    )


def _combat_active(state: GameState, view_distance: int) -> bool:
    d = monster_distance(state)
    return d is not None and d <= view_distance


def combat_strategy(
    view_distance: int = DEFAULT_COMBAT_RANGE,
    config: combat_mod.CombatConfig | None = None,
) -> Strategy:
    def body(ref: StateRef) -> Generator[StepOutput, None, None]:
        while _combat_active(ref.state, view_distance):
            action = combat_mod.combat_policy(ref.state, config)
            yield combat_mod.to_abstract(ref.state, action)

    return Strategy(
        id="combat",
        priority=PRIORITY_COMBAT,
        activation=lambda s: _combat_active(s, view_distance),
        body=body,
        interruptible_by=frozenset({"emergency-healing"}),
    )


def _fresh_corpse_target(state: GameState) -> tuple[int, int] | None:
    """Nearest fresh safe corpse on or adjacent to the hero."""
    from .nutrition import CORPSE_FRESHNESS_TURNS
    from .tables import corpse_is_safe

    level = state.current_level
    hr, hc = state.hero_pos
    best: tuple[int, tuple[int, int]] | None = None
    for dr in (-1, 0, 1):
        for dc in (-1, 0, 1):
            pos = (hr + dr, hc + dc)
            if not pathfind.in_bounds(pos):
                continue
            tile = level.tile(pos)
            if tile.corpse_age is None:
                continue
            if state.blstats.turn - tile.corpse_age > CORPSE_FRESHNESS_TURNS:
                continue
            species = next((i for i in tile.items_seen if "corpse" in i), None)
            if not corpse_is_safe(species):
                continue
            key = (max(abs(dr), abs(dc)), pos)
            if best is None or key < best:
                best = key
    return best[1] if best else None


def _sustenance_body(ref: StateRef) -> Generator[StepOutput, None, None]:
    while True:
        state = ref.state
        action = sustenance_decide(sustenance_state_from(state))
        if action is None:
            return
        if isinstance(action, Eat) and action.slot is None:
            # Floor rule: step onto the corpse before eating it.
            target = _fresh_corpse_target(state)
            if target is None:
                return
            if target != state.hero_pos:
                direction = Direction.between(state.hero_pos, target)
                if direction is None:
                    return
                yield Move(direction)
                continue
        yield action


def sustenance_strategy() -> Strategy:
    return Strategy(
        id="sustenance",
        priority=PRIORITY_SUSTENANCE,
        activation=lambda s: sustenance_decide(sustenance_state_from(s)) is not None,
        body=_sustenance_body,
        interruptible_by=frozenset({"emergency-healing", "combat"}),
    )


_INTERRUPTERS = frozenset({"emergency-healing", "combat", "sustenance"})


def go_to(goal: tuple[int, int], interruptible_by: frozenset[str]) -> Strategy:
    """Dynamically built child: walk one step at a time toward goal,
    re-planning from fresh state each step."""

    def body(ref: StateRef) -> Generator[StepOutput, None, None]:
        while True:
            state = ref.state
            if state.hero_pos == goal:
                return
            path = pathfind.find_path(state.current_level, state.hero_pos, goal)
            if not path:
                return
            direction = Direction.between(state.hero_pos, path[0])
            if direction is None:
                return
            yield combat_mod.to_abstract(
                state,
                combat_mod.CombatAction(combat_mod.CombatKind.MOVE, direction),
            )

    return Strategy(
        id=f"go-to{goal}",
        priority=0,
        activation=lambda s: True,
        body=body,
        interruptible_by=interruptible_by,
    )


def _explore_body(ref: StateRef) -> Generator[StepOutput, None, None]:
    while True:
        state = ref.state
        goal = explore_next_goal(state)
        if goal is None:
            return
        if state.hero_pos != goal.pos:
            yield Subtree(go_to(goal.pos, _INTERRUPTERS))
            continue
        if goal.purpose == "pile":
            state.current_level.stepped.add(goal.pos)
            yield PickUp()
        elif goal.purpose == "descend":
            yield GoDown()
        elif goal.purpose == "search":
            state.current_level.tile(goal.pos).bump_search()
            yield Search()
        else:  # standing on a frontier: adjacent unknown resolves next parse
            state.current_level.tile(goal.pos).bump_search()
            yield Search()


def explore_strategy() -> Strategy:
    return Strategy(
        id="level-exploration",
        priority=PRIORITY_EXPLORE,
        activation=lambda s: explore_next_goal(s) is not None,
        body=_explore_body,
        interruptible_by=_INTERRUPTERS,
    )


def _sokoban_ready(state: GameState) -> bool:
    from ..state.types import Branch

    level = state.current_level
    return (
        level.branch is Branch.SOKOBAN
        and bool(level.find_feature(Feature.HOLE))
        and bool(level.find_feature(Feature.BOULDER))
    )


def _sokoban_body(ref: StateRef) -> Generator[StepOutput, None, None]:
    from .sokoban import sokoban_plan, validate_push

    while True:
        state = ref.state
        if not _sokoban_ready(state):
            return
        plan = sokoban_plan(state.current_level, state.hero_pos)
        if not plan:
            return  # unsolvable or budget: leave the branch to exploration
        for step in plan:
            state = ref.state
            monsters = frozenset(m.pos for m in state.monsters)
            if not validate_push(state.current_level, step, monsters):
                break  # stale plan: re-plan from fresh state
            if state.hero_pos != step.push_from:
                yield Subtree(go_to(step.push_from, _INTERRUPTERS))
                if ref.state.hero_pos != step.push_from:
                    break
            yield Move(step.direction)
        else:
            return


def sokoban_strategy() -> Strategy:
    return Strategy(
        id="sokoban",
        priority=PRIORITY_SOKOBAN,
        activation=_sokoban_ready,
        body=_sokoban_body,
        interruptible_by=_INTERRUPTERS,
    )


def _stairs_goal(state: GameState) -> tuple[int, int] | None:
    level = state.current_level
    stairs = sorted(level.find_feature(Feature.STAIRS_DOWN))
    if not stairs:
        return None
    reach = pathfind.reachable_set(level, state.hero_pos)
    for pos in stairs:
        if pos in reach:
            return pos
    return None


def _descend_body(ref: StateRef) -> Generator[StepOutput, None, None]:
    while True:
        state = ref.state
        goal = _stairs_goal(state)
        if goal is None:
            return
        if state.hero_pos == goal:
            yield GoDown()
            return
        yield Subtree(go_to(goal, _INTERRUPTERS))


def descend_strategy() -> Strategy:
    return Strategy(
        id="descend-stairs",
        priority=PRIORITY_DESCEND,
        activation=lambda s: _stairs_goal(s) is not None,
        body=_descend_body,
        interruptible_by=_INTERRUPTERS,
    )


def _idle_body(ref: StateRef) -> Generator[StepOutput, None, None]:
    while True:
        tile = ref.state.current_level.tile(ref.state.hero_pos)
        if tile.search_count < 2 * 10:
            tile.bump_search()
            yield Search()
        else:
            yield Wait()


def idle_strategy() -> Strategy:
    return Strategy(
        id="idle-search",
        priority=PRIORITY_IDLE,
        activation=lambda s: True,
        body=_idle_body,
        interruptible_by=_INTERRUPTERS | {"level-exploration", "descend-stairs"},
    )


def default_strategies(
    include_combat: bool = True,
    combat_range: int = DEFAULT_COMBAT_RANGE,
) -> list[Strategy]:
    """The first-fit tree: healing, (combat,) sustenance, explore, descend,
    idle."""
    out = [healing_strategy()]
    if include_combat:
        out.append(combat_strategy(view_distance=combat_range))
    out.extend(
        [
            sustenance_strategy(),
            sokoban_strategy(),
            explore_strategy(),
            descend_strategy(),
            idle_strategy(),
        ]
    )
    return out
