"""Weapon profiles, the melee avoid-list, and the corpse blacklist."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache

from ..datafiles import read_lines, read_table

_DICE = re.compile(r"(\d+)d(\d+)([+-]\d+)?$")


class TargetSize(enum.Enum):
    SMALL = "small"
    LARGE = "large"


@dataclass(frozen=True)
class Dice:
    count: int
    faces: int
    bonus: int = 0

    def __post_init__(self) -> None:
        if self.count < 1 or self.faces < 2:
            raise ValueError(f"degenerate dice {self.count}d{self.faces}")

    @staticmethod
    def parse(text: str) -> "Dice":
        m = _DICE.match(text.strip())
        if not m:
            raise ValueError(f"bad dice spec {text!r}")
        return Dice(int(m.group(1)), int(m.group(2)), int(m.group(3) or 0))


@dataclass(frozen=True)
class WeaponProfile:
    name: str
    damage_small: Dice
    damage_large: Dice
    to_hit_bonus: int
    tags: frozenset[str]

    @property
    def is_melee(self) -> bool:
        return "melee" in self.tags

    @property
    def is_thrown(self) -> bool:
        return "thrown" in self.tags

    @property
    def is_ray_wand(self) -> bool:
        return "raywand" in self.tags

    @property
    def launcher_class(self) -> str | None:
        for tag in self.tags:
            if tag.startswith("launcher:"):
                return tag.split(":", 1)[1]
        return None

    @property
    def projectile_class(self) -> str | None:
        for tag in self.tags:
            if tag.startswith("projectile:"):
                return tag.split(":", 1)[1]
        return None


@lru_cache(maxsize=1)
def weapon_profiles() -> tuple[WeaponProfile, ...]:
    rows = []
    for name, small, large, to_hit, tags in read_table("weapons.txt"):
        rows.append(
            WeaponProfile(
                name=name,
                damage_small=Dice.parse(small),
                damage_large=Dice.parse(large),
                to_hit_bonus=int(to_hit),
                tags=frozenset(tags.split(",")),
            )
        )
    return tuple(rows)


def profile_for_item(text: str) -> WeaponProfile | None:
    """Match inventory text to a weapon profile (longest name wins)."""
    lowered = text.lower()
    best: WeaponProfile | None = None
    for profile in weapon_profiles():
        if re.search(rf"\b{re.escape(profile.name)}s?\b", lowered):
            if best is None or len(profile.name) > len(best.name):
                best = profile
    return best


@lru_cache(maxsize=1)
def melee_avoid_list() -> tuple[tuple[str, int | None, str], ...]:
    """(char, color-or-None, species) triples never to melee."""
    rows = []
    for char, color, name in read_table("avoid_monsters.txt"):
        rows.append((char, None if color == "*" else int(color), name))
    return tuple(rows)


def is_melee_avoided(char: str, color: int) -> bool:
    for achar, acolor, _name in melee_avoid_list():
        if achar == char and (acolor is None or acolor == color):
            return True
    return False


@lru_cache(maxsize=1)
def corpse_blacklist() -> tuple[str, ...]:
    return read_lines("corpse_blacklist.txt")


def corpse_is_safe(species: str | None) -> bool:
    """Unknown species are treated as unsafe."""
    if not species:
        return False
    lowered = species.lower()
    for bad in corpse_blacklist():
        if re.search(rf"\b{re.escape(bad)}\b", lowered):
            return False
    return True
