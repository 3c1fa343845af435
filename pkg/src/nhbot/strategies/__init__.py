"""Concrete strategies: combat, nutrition, healing, pathing, Sokoban."""

from .tables import (
    Dice,
    TargetSize,
    WeaponProfile,
    corpse_is_safe,
    is_melee_avoided,
    weapon_profiles,
)
from .combat import (
    ALL_COMBAT_ACTIONS,
    CombatAction,
    CombatConfig,
    CombatKind,
    IllegalCombatActionError,
    best_melee_weapon,
    combat_enumerate,
    combat_policy,
    combat_score,
    expected_damage,
)
from .nutrition import (
    CORPSE_FRESHNESS_TURNS,
    PRAYER_COOLDOWN_TURNS,
    SustenanceState,
    sustenance_decide,
    sustenance_state_from,
)
from .healing import EMERGENCY_HP_FRACTION, healing_decide
from .pathfind import MovementRules, find_path, movement_rules_for, reachable_set
from .explore import ExploreGoal, explore_next_goal
from .sokoban import PushStep, sokoban_plan, validate_push
from .library import default_strategies

__all__ = [
    "Dice",
    "TargetSize",
    "WeaponProfile",
    "corpse_is_safe",
    "is_melee_avoided",
    "weapon_profiles",
    "ALL_COMBAT_ACTIONS",
    "CombatAction",
    "CombatConfig",
    "CombatKind",
    "IllegalCombatActionError",
    "best_melee_weapon",
    "combat_enumerate",
    "combat_policy",
    "combat_score",
    "expected_damage",
    "CORPSE_FRESHNESS_TURNS",
    "PRAYER_COOLDOWN_TURNS",
    "SustenanceState",
    "sustenance_decide",
    "sustenance_state_from",
    "EMERGENCY_HP_FRACTION",
    "healing_decide",
    "MovementRules",
    "find_path",
    "movement_rules_for",
    "reachable_set",
    "ExploreGoal",
    "explore_next_goal",
    "PushStep",
    "sokoban_plan",
    "validate_push",
    "default_strategies",
]
