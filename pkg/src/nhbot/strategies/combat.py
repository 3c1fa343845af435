"""Priority-scored combat over a simplified 34-action space.

Four directional families (move, melee, ranged, ray-wand zap) plus
engraving Elbereth and waiting: 4 x 8 + 2 = 34 actions. Every candidate
gets a deterministic heuristic score -- expected damage dealt minus a
threat proxy and a positioning term, with emergency bonuses for the two
defensive actions at low HP -- and the best legal action wins. Melee
against passive-damage monsters (floating eyes, gas spores, ...) is
scored minus infinity so it can never be chosen.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field

from ..actions.codec import Direction
from ..state.types import GameState, InventoryItem, Monster
from . import pathfind
from .tables import (
    Dice,
    TargetSize,
    WeaponProfile,
    is_melee_avoided,
    profile_for_item,
)

NEG_INF = float("-inf")

_CHARGES = re.compile(r"\((-?\d+):(-?\d+)\)")


class CombatKind(enum.Enum):
    MOVE = "Move"
    MELEE = "MeleeAttack"
    RANGED = "RangedAttack"
    ZAP_WAND = "ZapRayWand"
    ELBERETH = "EngraveElbereth"
    WAIT = "Wait"


@dataclass(frozen=True)
class CombatAction:
    kind: CombatKind
    direction: Direction | None = None

    def __post_init__(self) -> None:
        directional = self.kind not in (CombatKind.ELBERETH, CombatKind.WAIT)
        if directional != (self.direction is not None):
            raise ValueError(f"{self.kind.value} direction mismatch")


def _enumerate_all() -> tuple[CombatAction, ...]:
    out = []
    for kind in (CombatKind.MOVE, CombatKind.MELEE, CombatKind.RANGED,
                 CombatKind.ZAP_WAND):
        for direction in Direction:
            out.append(CombatAction(kind, direction))
    out.append(CombatAction(CombatKind.ELBERETH))
    out.append(CombatAction(CombatKind.WAIT))
    return tuple(out)


ALL_COMBAT_ACTIONS = _enumerate_all()
assert len(ALL_COMBAT_ACTIONS) == 34


@dataclass(frozen=True)
class CombatConfig:
    """Scoring weights. Defaults chosen to satisfy the combat properties,
    with damage dominating threat and positioning."""

    damage_weight: float = 1.0
    threat_weight: float = 0.4
    positioning_weight: float = 0.25
    approach_weight: float = 0.5
    ranged_weight: float = 0.8
    zap_weight: float = 0.9
    move_base_penalty: float = 0.1
    wasted_shot_penalty: float = 2.0
    emergency_hp_fraction: float = 1 / 3
    emergency_defense_bonus: float = 6.0
    wait_base: float = -1.0
    elbereth_base: float = -1.5
    bare_hands: Dice = Dice(1, 2, 0)


class IllegalCombatActionError(ValueError):
    pass


def expected_damage(profile: WeaponProfile, target_size: TargetSize) -> float:
    """Mean roll of the profile's damage dice for the target size class."""
    dice = (
        profile.damage_small
        if target_size is TargetSize.SMALL
        else profile.damage_large
    )
    return dice.count * (dice.faces + 1) / 2 + dice.bonus


def best_melee_weapon(
    inventory: list[InventoryItem],
    profiles: tuple[WeaponProfile, ...] | None = None,
    to_hit_weight: float = 0.25,
    proficiency_weights: dict[str, float] | None = None,
) -> str | None:
    """Slot of the best melee weapon carried, or None without one.

    Ranks by expected damage plus a weighted to-hit bonus plus an optional
    per-weapon proficiency weight; ties keep the lower slot letter.
    """
    del profiles  # profiles always come from the shipped table
    best_slot: str | None = None
    best_score = NEG_INF
    for item in sorted(inventory, key=lambda i: i.slot):
        profile = profile_for_item(item.text)
        if profile is None or not profile.is_melee:
            continue
        score = (
            expected_damage(profile, TargetSize.SMALL)
            + to_hit_weight * profile.to_hit_bonus
            + (proficiency_weights or {}).get(profile.name, 0.0)
        )
        if score > best_score:
            best_score = score
            best_slot = item.slot
    return best_slot


@dataclass
class _Arsenal:
    """What the inventory offers for each action family."""

    melee: WeaponProfile | None = None
    projectile: tuple[str, WeaponProfile] | None = None
    ray_wand: tuple[str, WeaponProfile] | None = None
    launchers: set[str] = field(default_factory=set)


def _survey_inventory(inventory: list[InventoryItem]) -> _Arsenal:
    arsenal = _Arsenal()
    melee_slot = best_melee_weapon(inventory)
    for item in sorted(inventory, key=lambda i: i.slot):
        profile = profile_for_item(item.text)
        if profile is None:
            continue
        if item.slot == melee_slot:
            arsenal.melee = profile
        if profile.launcher_class:
            arsenal.launchers.add(profile.launcher_class)
        if profile.is_ray_wand and arsenal.ray_wand is None:
            if _wand_charged(item.text):
                arsenal.ray_wand = (item.slot, profile)
    # Projectiles: anything throwable, or launcher ammo when the launcher
    # class is carried.
    for item in sorted(inventory, key=lambda i: i.slot):
        profile = profile_for_item(item.text)
        if profile is None:
            continue
        pclass = profile.projectile_class
        usable = profile.is_thrown or (
            pclass is not None and pclass in arsenal.launchers
        )
        if usable and arsenal.projectile is None:
            arsenal.projectile = (item.slot, profile)
    return arsenal


def _wand_charged(text: str) -> bool:
    """Charge state from "(N:M)" when engraved/identified; unknown counts
    as charged."""
    m = _CHARGES.search(text)
    return m is None or int(m.group(2)) > 0


def _monster_at(state: GameState, pos: tuple[int, int]) -> Monster | None:
    for monster in state.monsters:
        if monster.pos == pos:
            return monster
    return None


def _hostiles(state: GameState) -> list[Monster]:
    return [m for m in state.monsters if m.hostile_guess]


def _adjacent_hostiles(state: GameState, pos: tuple[int, int]) -> int:
    return sum(
        1
        for m in _hostiles(state)
        if max(abs(m.pos[0] - pos[0]), abs(m.pos[1] - pos[1])) == 1
    )


def _nearest_hostile_distance(state: GameState, pos: tuple[int, int]) -> int:
    # Avoid-list monsters are excluded: there is no value in closing on a
    # target the policy refuses to melee.
    distances = [
        max(abs(m.pos[0] - pos[0]), abs(m.pos[1] - pos[1]))
        for m in _hostiles(state)
        if not is_melee_avoided(m.char, m.color)
    ]
    return min(distances) if distances else 0


def _first_monster_in_line(
    state: GameState, direction: Direction, max_range: int = 8
) -> Monster | None:
    level = state.current_level
    pos = state.hero_pos
    dr, dc = direction.delta
    for _ in range(max_range):
        pos = (pos[0] + dr, pos[1] + dc)
        if not pathfind.in_bounds(pos):
            return None
        m = _monster_at(state, pos)
        if m is not None:
            return m
        if not pathfind.walkable(level, pos):
            return None  # wall blocks the shot
    return None


def combat_enumerate(
    state: GameState,
) -> list[tuple[CombatAction, bool]]:
    """All 34 actions, each with a legality flag for this state."""
    level = state.current_level
    rules = pathfind.movement_rules_for(level)
    arsenal = _survey_inventory(state.inventory)
    hero = state.hero_pos

    out: list[tuple[CombatAction, bool]] = []
    for action in ALL_COMBAT_ACTIONS:
        if action.kind is CombatKind.WAIT:
            legal = True  # waiting is always possible
        elif action.kind is CombatKind.ELBERETH:
            legal = True
        elif action.kind is CombatKind.MOVE:
            dst = _dest(hero, action.direction)
            legal = (
                pathfind.step_legal(level, hero, dst, rules)
                and _monster_at(state, dst) is None
            )
        elif action.kind is CombatKind.MELEE:
            dst = _dest(hero, action.direction)
            legal = _monster_at(state, dst) is not None and (
                not action.direction.diagonal or rules.allow_diagonal
            )
        elif action.kind is CombatKind.RANGED:
            legal = arsenal.projectile is not None
        else:  # ZAP_WAND
            legal = arsenal.ray_wand is not None
        out.append((action, legal))
    return out


def _dest(pos: tuple[int, int], direction: Direction) -> tuple[int, int]:
    dr, dc = direction.delta
    return (pos[0] + dr, pos[1] + dc)


def combat_score(
    state: GameState,
    action: CombatAction,
    config: CombatConfig | None = None,
) -> float:
    """Deterministic heuristic score; -inf marks never-choose melee."""
    config = config or CombatConfig()
    legality = dict(combat_enumerate(state))
    if not legality.get(action, False):
        raise IllegalCombatActionError(f"{action} is illegal in this state")

    arsenal = _survey_inventory(state.inventory)
    hero = state.hero_pos
    hp_fraction = state.blstats.hp / max(state.blstats.max_hp, 1)
    emergency = hp_fraction < config.emergency_hp_fraction
    here_threat = _adjacent_hostiles(state, hero)

    if action.kind is CombatKind.MELEE:
        target = _monster_at(state, _dest(hero, action.direction))
        assert target is not None
        if is_melee_avoided(target.char, target.color):
            return NEG_INF
        weapon = arsenal.melee
        damage = (
            expected_damage(weapon, TargetSize.SMALL)
            if weapon is not None
            else config.bare_hands.count * (config.bare_hands.faces + 1) / 2
        )
        damage = max(damage, 1.0)  # a connecting hit deals at least a point
        return (
            config.damage_weight * damage
            - config.threat_weight * here_threat
        )

    if action.kind is CombatKind.RANGED:
        assert arsenal.projectile is not None
        target = _first_monster_in_line(state, action.direction)
        damage = max(expected_damage(arsenal.projectile[1], TargetSize.SMALL), 1.0)
        if target is None:
            return -config.wasted_shot_penalty
        return (
            config.ranged_weight * config.damage_weight * damage
            - config.threat_weight * here_threat
        )

    if action.kind is CombatKind.ZAP_WAND:
        assert arsenal.ray_wand is not None
        target = _first_monster_in_line(state, action.direction)
        damage = max(expected_damage(arsenal.ray_wand[1], TargetSize.SMALL), 1.0)
        if target is None:
            return -config.wasted_shot_penalty
        return (
            config.zap_weight * config.damage_weight * damage
            - config.threat_weight * here_threat
        )

    if action.kind is CombatKind.MOVE:
        dst = _dest(hero, action.direction)
        threat_delta = _adjacent_hostiles(state, dst) - here_threat
        score = -config.move_base_penalty - config.positioning_weight * threat_delta
        closing = _nearest_hostile_distance(state, hero) - _nearest_hostile_distance(
            state, dst
        )
        if emergency:
            # Retreating from adjacency is the emergency move.
            score += config.emergency_defense_bonus * max(-threat_delta, 0) * 0.5
            score -= config.approach_weight * closing
        else:
            score += config.approach_weight * closing
        return score

    if action.kind is CombatKind.ELBERETH:
        score = config.elbereth_base
        if emergency and here_threat >= 1:
            score += config.emergency_defense_bonus
        return score

    # WAIT
    score = config.wait_base
    if emergency and here_threat == 0:
        score += config.emergency_defense_bonus * 0.5
    return score


def combat_policy(
    state: GameState, config: CombatConfig | None = None
) -> CombatAction:
    """Argmax of combat_score over legal actions, ties by enumeration order."""
    config = config or CombatConfig()
    best: CombatAction | None = None
    best_score = NEG_INF
    for action, legal in combat_enumerate(state):
        if not legal:
            continue
        score = combat_score(state, action, config)
        if best is None or score > best_score:
            best = action
            best_score = score
    assert best is not None  # Wait is always legal
    return best


def to_abstract(state: GameState, action: CombatAction):
    """Translate a combat action into the sendable intent for this state."""
    from ..actions import codec

    if action.kind is CombatKind.MOVE:
        return codec.Move(action.direction)
    if action.kind is CombatKind.MELEE:
        return codec.MeleeAttack(action.direction)
    if action.kind is CombatKind.RANGED:
        arsenal = _survey_inventory(state.inventory)
        assert arsenal.projectile is not None
        return codec.Throw(slot=arsenal.projectile[0], direction=action.direction)
    if action.kind is CombatKind.ZAP_WAND:
        arsenal = _survey_inventory(state.inventory)
        assert arsenal.ray_wand is not None
        return codec.ZapWand(slot=arsenal.ray_wand[0], direction=action.direction)
    if action.kind is CombatKind.ELBERETH:
        return codec.Engrave("Elbereth")
    return codec.Wait()
