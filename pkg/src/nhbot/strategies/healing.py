"""Emergency healing: potion, then prayer, then Elbereth.

Active only below the emergency HP threshold. The prayer cooldown is the
same global 500-turn clock nutrition uses, and the Elbereth fallback
only makes sense with a hostile in touching range.
"""

from __future__ import annotations

from ..actions.codec import AbstractAction, Engrave, Pray, Quaff
from ..state.types import GameState
from .nutrition import PRAYER_COOLDOWN_TURNS

EMERGENCY_HP_FRACTION = 1 / 3

_HEALING_WORDS = ("potion of healing", "potion of extra healing",
                  "potion of full healing")


def healing_potion_slot(state: GameState) -> str | None:
    for item in sorted(state.inventory, key=lambda i: i.slot):
        if any(word in item.text for word in _HEALING_WORDS):
            return item.slot
    return None


def prayer_available(state: GameState, cooldown: int = PRAYER_COOLDOWN_TURNS) -> bool:
    return (
        state.last_prayer_turn is None
        or state.blstats.turn - state.last_prayer_turn > cooldown
    )


def _adjacent_hostile(state: GameState) -> bool:
    hr, hc = state.hero_pos
    return any(
        m.hostile_guess
        and max(abs(m.pos[0] - hr), abs(m.pos[1] - hc)) == 1
        for m in state.monsters
    )


def healing_decide(
    state: GameState, threshold: float = EMERGENCY_HP_FRACTION
) -> AbstractAction | None:
    """The emergency cascade; None when HP is fine or nothing applies."""
    if state.blstats.hp / max(state.blstats.max_hp, 1) >= threshold:
        return None
    slot = healing_potion_slot(state)
    if slot is not None:
        return Quaff(slot)
    if prayer_available(state):
        return Pray()
    if _adjacent_hostile(state):
        return Engrave("Elbereth")
    return None
