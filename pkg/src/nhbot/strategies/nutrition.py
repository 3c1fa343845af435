"""Nutrition management: the three-rule cascade.

(1) eat a fresh, safe corpse off the floor unless already satiated;
(2) otherwise eat a carried food ration once hungry or worse;
(3) otherwise pray at fainting, never within 500 turns of the last
prayer. At most one rule fires, always the first applicable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..actions.codec import AbstractAction, Eat, Pray
from ..state.types import Feature, GameState, Hunger
from .tables import corpse_is_safe

CORPSE_FRESHNESS_TURNS = 50
PRAYER_COOLDOWN_TURNS = 500

_RATION_WORDS = ("food ration", "cram ration", "K-ration", "C-ration")

_EAT_RULE_HUNGERS = frozenset({Hunger.HUNGRY, Hunger.WEAK, Hunger.FAINTING})


@dataclass
class SustenanceState:
    hunger: Hunger
    turn: int
    fresh_corpses_adjacent: list[int] = field(default_factory=list)  # turn stamps
    food_rations_in_inventory: int = 0
    ration_slot: str | None = None
    last_prayer_turn: int | None = None


def sustenance_decide(
    s: SustenanceState,
    freshness_window: int = CORPSE_FRESHNESS_TURNS,
    prayer_cooldown: int = PRAYER_COOLDOWN_TURNS,
) -> AbstractAction | None:
    """Apply the cascade; None when no rule fires."""
    if s.hunger is not Hunger.SATIATED and any(
        s.turn - age <= freshness_window for age in s.fresh_corpses_adjacent
    ):
        return Eat(slot=None)
    if s.hunger in _EAT_RULE_HUNGERS and s.food_rations_in_inventory > 0:
        return Eat(slot=s.ration_slot or "a")
    if s.hunger is Hunger.FAINTING and (
        s.last_prayer_turn is None or s.turn - s.last_prayer_turn > prayer_cooldown
    ):
        return Pray()
    return None


def sustenance_state_from(state: GameState) -> SustenanceState:
    """Project the game state onto the cascade's inputs.

    Corpses count only when on or orthogonally/diagonally adjacent to the
    hero, with a recorded age, and a species known to be safe (unknown
    species are unsafe).
    """
    level = state.current_level
    hr, hc = state.hero_pos
    corpses: list[int] = []
    for dr in (-1, 0, 1):
        for dc in (-1, 0, 1):
            pos = (hr + dr, hc + dc)
            if not (0 <= pos[0] < len(level.tiles) and 0 <= pos[1] < 80):
                continue
            tile = level.tile(pos)
            if tile.corpse_age is None:
                continue
            species = _corpse_species(tile.items_seen)
            if corpse_is_safe(species):
                corpses.append(tile.corpse_age)
    ration_slot = None
    rations = 0
    for item in sorted(state.inventory, key=lambda i: i.slot):
        if any(word in item.text for word in _RATION_WORDS):
            rations += item.count
            if ration_slot is None:
                ration_slot = item.slot
    return SustenanceState(
        hunger=state.blstats.hunger,
        turn=state.blstats.turn,
        fresh_corpses_adjacent=corpses,
        food_rations_in_inventory=rations,
        ration_slot=ration_slot,
        last_prayer_turn=state.last_prayer_turn,
    )


def _corpse_species(items_seen: list[str]) -> str | None:
    for entry in items_seen:
        if "corpse" in entry:
            return entry
    return None


def record_corpse(state: GameState, pos: tuple[int, int], species: str) -> None:
    """Stamp a freshly dropped corpse (called on kill messages)."""
    level = state.current_level
    if not (0 <= pos[0] < len(level.tiles)):
        return
    tile = level.tile(pos)
    tile.corpse_age = state.blstats.turn
    entry = f"{species} corpse"
    if entry not in tile.items_seen:
        tile.items_seen.append(entry)
    if tile.feature is Feature.UNKNOWN:
        tile.feature = Feature.FLOOR
