"""Scenario files for the scripted mock dungeon.

Plain text: directive lines followed by one or more level blocks::

    name corridor-jackal
    hero-hp 14
    nutrition 800 1
    monster d jackal hostile hp=5 damage=2 corpse=safe color=3
    give a food ration
    spawn 1 d 3 30 at-turn=12
    branch 2 Sokoban
    message-on-enter 2 Welcome to Sokoban!
    level 1
    <grid rows: NetHack map characters, '@' marks the hero start>
    end

Grid rows use the usual symbols: ``- |`` walls, ``.`` floor, ``#``
corridor, ``+`` door, ``< >`` stairs, ``0`` boulder, ``^`` hole/trap,
``%`` corpse, ``!`` potion, ``$`` gold, letters for legend monsters.
Parse errors carry the 1-based line number.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..state.types import Branch


class ScenarioError(ValueError):
    def __init__(self, message: str, line_no: int) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass
class MonsterSpec:
    char: str
    name: str
    hostile: bool = True
    hp: int = 4
    damage: int = 2
    passive: bool = False
    corpse_safe: bool = True
    color: int = 7


@dataclass
class SpawnSpec:
    level: int
    char: str
    row: int
    col: int
    at_turn: int = 0


@dataclass
class LevelSpec:
    number: int
    rows: list[str]
    branch: Branch = Branch.MAIN
    entry_message: str = ""


@dataclass
class Scenario:
    name: str = "scenario"
    hero_hp: int = 14
    hero_damage: int = 4
    nutrition_start: int = 800
    nutrition_drain: int = 1
    starting_gold: int = 0
    monsters: dict[str, MonsterSpec] = field(default_factory=dict)
    spawns: list[SpawnSpec] = field(default_factory=list)
    inventory: list[tuple[str, str, int]] = field(default_factory=list)
    levels: dict[int, LevelSpec] = field(default_factory=dict)

    def level(self, number: int) -> LevelSpec:
        return self.levels[number]


def _parse_kv(parts: list[str], line_no: int) -> dict[str, str]:
    out = {}
    for part in parts:
        if "=" not in part:
            raise ScenarioError(f"expected key=value, got {part!r}", line_no)
        k, v = part.split("=", 1)
        out[k] = v
    return out


def parse_scenario(text: str) -> Scenario:
    scenario = Scenario()
    branch_overrides: dict[int, Branch] = {}
    entry_messages: dict[int, str] = {}
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        line_no = i + 1
        raw = lines[i]
        i += 1
        if raw.lstrip().startswith("#") or not raw.strip():
            continue
        parts = raw.rstrip().split()
        keyword = parts[0]
        if keyword == "name":
            scenario.name = " ".join(parts[1:]) or scenario.name
        elif keyword == "hero-hp":
            scenario.hero_hp = int(parts[1])
        elif keyword == "hero-damage":
            scenario.hero_damage = int(parts[1])
        elif keyword == "nutrition":
            scenario.nutrition_start = int(parts[1])
            if len(parts) > 2:
                scenario.nutrition_drain = int(parts[2])
        elif keyword == "gold":
            scenario.starting_gold = int(parts[1])
        elif keyword == "monster":
            if len(parts) < 3:
                raise ScenarioError("monster needs '<char> <name...>'", line_no)
            char = parts[1]
            if len(char) != 1:
                raise ScenarioError(f"monster char must be one symbol: {char!r}", line_no)
            name_words = []
            opts: dict[str, str] = {}
            flags: set[str] = set()
            for part in parts[2:]:
                if "=" in part:
                    k, v = part.split("=", 1)
                    opts[k] = v
                elif part in ("hostile", "peaceful", "passive"):
                    flags.add(part)
                else:
                    name_words.append(part)
            if not name_words:
                raise ScenarioError("monster needs a name", line_no)
            scenario.monsters[char] = MonsterSpec(
                char=char,
                name=" ".join(name_words),
                hostile="peaceful" not in flags,
                hp=int(opts.get("hp", 4)),
                damage=int(opts.get("damage", 2)),
                passive="passive" in flags,
                corpse_safe=opts.get("corpse", "safe") == "safe",
                color=int(opts.get("color", 7)),
            )
        elif keyword == "spawn":
            if len(parts) < 5:
                raise ScenarioError(
                    "spawn needs '<level> <char> <row> <col> [at-turn=N]'", line_no
                )
            opts = _parse_kv(parts[5:], line_no)
            scenario.spawns.append(
                SpawnSpec(
                    level=int(parts[1]),
                    char=parts[2],
                    row=int(parts[3]),
                    col=int(parts[4]),
                    at_turn=int(opts.get("at-turn", 0)),
                )
            )
        elif keyword == "give":
            if len(parts) < 3:
                raise ScenarioError("give needs '<slot> <item text...>'", line_no)
            count = 1
            words = parts[2:]
            if words and words[-1].startswith("count="):
                count = int(words[-1].split("=", 1)[1])
                words = words[:-1]
            scenario.inventory.append((parts[1], " ".join(words), count))
        elif keyword == "branch":
            try:
                branch_overrides[int(parts[1])] = Branch(parts[2])
            except (IndexError, ValueError) as exc:
                raise ScenarioError(f"bad branch directive: {exc}", line_no) from None
        elif keyword == "message-on-enter":
            entry_messages[int(parts[1])] = " ".join(parts[2:])
        elif keyword == "level":
            number = int(parts[1])
            rows: list[str] = []
            start = i
            while i < len(lines) and lines[i].strip() != "end":
                rows.append(lines[i].rstrip("\n"))
                i += 1
            if i >= len(lines):
                raise ScenarioError("level block missing 'end'", start)
            i += 1  # consume 'end'
            if not rows:
                raise ScenarioError("empty level block", line_no)
            if len(rows) > 21 or any(len(r) > 80 for r in rows):
                raise ScenarioError("level grid exceeds 21x80", line_no)
            scenario.levels[number] = LevelSpec(number=number, rows=rows)
        else:
            raise ScenarioError(f"unknown directive {keyword!r}", line_no)

    if not scenario.levels:
        raise ScenarioError("scenario has no levels", len(lines) or 1)
    for number, branch in branch_overrides.items():
        if number in scenario.levels:
            scenario.levels[number].branch = branch
    for number, message in entry_messages.items():
        if number in scenario.levels:
            scenario.levels[number].entry_message = message
    hero_starts = sum(row.count("@") for lv in scenario.levels.values() for row in lv.rows)
    if hero_starts != 1:
        raise ScenarioError(
            f"expected exactly one '@' hero start, found {hero_starts}", 1
        )
    for spawn in scenario.spawns:
        if spawn.char not in scenario.monsters:
            raise ScenarioError(f"spawn references unknown monster {spawn.char!r}", 1)
        if spawn.level not in scenario.levels:
            raise ScenarioError(f"spawn references unknown level {spawn.level}", 1)
    return scenario
