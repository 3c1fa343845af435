"""Deterministic character rotation across episodes."""

from __future__ import annotations

import random

from ..envs.base import CharacterSpec, role_names, valid_character_combos


def rotation_schedule(n_episodes: int, seed: int = 0) -> list[CharacterSpec]:
    """Round-robin over the 13 roles with a seeded starting offset.

    Every role appears floor(n/13) or ceil(n/13) times; the concrete
    race/alignment/gender for each appearance cycles through that role's
    valid combinations, shuffled once per seed.
    """
    if n_episodes < 1:
        raise ValueError("need at least one episode")
    roles = role_names()
    rng = random.Random(seed)
    offset = rng.randrange(len(roles))
    combos_by_role: dict[str, list[CharacterSpec]] = {}
    for spec in valid_character_combos():
        combos_by_role.setdefault(spec.role, []).append(spec)
    for role_combo_list in combos_by_role.values():
        rng.shuffle(role_combo_list)

    schedule: list[CharacterSpec] = []
    occurrence: dict[str, int] = {}
    for i in range(n_episodes):
        role = roles[(offset + i) % len(roles)]
        k = occurrence.get(role, 0)
        occurrence[role] = k + 1
        combos = combos_by_role[role]
        schedule.append(combos[k % len(combos)])
    return schedule
