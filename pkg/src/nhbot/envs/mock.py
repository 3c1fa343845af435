"""Scripted mock dungeon with NetHack-shaped terminal output.

The mock runs a deliberately narrow rule set (movement, melee, a hunger
clock, corpse decay, boulders and holes, potions, prayer, Elbereth) and
renders every frame as escape-coded bytes through the same emulator path
real output takes, so every parser is exercised identically. All rules
are deterministic given the scenario and seed; the seed only jitters
spawn turns, monster damage and the starting nutrition so that repeated
evaluations spread over outcomes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..actions.keys import KeySequence
from ..state.types import Branch
from ..term.emulator import TerminalEmulator
from ..term.screen import COLS
from .base import Backend, CharacterSpec, EnvError, StepResult, TtyrecRecorder
from .scenario import MonsterSpec, Scenario, parse_scenario

_WALKABLE = set(".#<>_{^")  # plus filled holes; boulders handled separately
_ESCAPE = 0x1B
_ENTER = 0x0D
_KICK = 0x04

# Nutrition thresholds: state at or above the bound.
_HUNGER_BOUNDS = (
    (1000, "Satiated"),
    (150, ""),  # NotHungry shows no token
    (50, "Hungry"),
    (20, "Weak"),
    (1, "Fainting"),
)

_CORPSE_DECAY_TURNS = 100
_ELBERETH_DURATION = 10
_PRAYER_ANGER_WINDOW = 500

_ROLE_RANKS = {
    "Valkyrie": "Stripling",
    "Wizard": "Evoker",
    "Tourist": "Rambler",
    "Samurai": "Hatamoto",
    "Barbarian": "Plunderer",
    "Archeologist": "Digger",
    "Caveman": "Troglodyte",
    "Healer": "Rhizotomist",
    "Knight": "Gallant",
    "Monk": "Candidate",
    "Priest": "Aspirant",
    "Rogue": "Footpad",
    "Ranger": "Tenderfoot",
}


@dataclass
class _MockMonster:
    spec: MonsterSpec
    pos: tuple[int, int]
    hp: int
    damage: int
    scared_until: int = -1


@dataclass
class _MockLevel:
    number: int
    branch: Branch
    grid: list[list[str]]  # terrain only; 21 rows x 80 cols
    entry_message: str = ""
    corpses: dict[tuple[int, int], tuple[str, int, bool]] = field(
        default_factory=dict
    )  # pos -> (species, dropped turn, safe)
    items: dict[tuple[int, int], str] = field(default_factory=dict)
    gold: dict[tuple[int, int], int] = field(default_factory=dict)
    monsters: list[_MockMonster] = field(default_factory=list)
    row_cache: list[bytes] | None = None

    def mutate(self, pos: tuple[int, int], char: str) -> None:
        self.grid[pos[0]][pos[1]] = char
        self.row_cache = None


class MockEnv:
    """Deterministic scripted dungeon behind the EnvHandle contract."""

    backend = Backend.MOCK

    def __init__(
        self,
        scenario: Scenario,
        character: CharacterSpec | None = None,
        seed: int = 0,
        record_to=None,
    ) -> None:
        self.scenario = scenario
        self.character = character or CharacterSpec(
            "Valkyrie", "human", "lawful", "female"
        )
        self.seed = seed
        self._recorder = TtyrecRecorder(record_to) if record_to else None
        self._started = False

    # -- lifecycle ------------------------------------------------------

    def reset(self) -> StepResult:
        rng = random.Random(self.seed)
        sc = self.scenario
        self._emu = TerminalEmulator()
        self._levels: dict[int, _MockLevel] = {}
        self._hero: tuple[int, int] = (0, 0)
        for number, spec in sc.levels.items():
            grid = [[" "] * COLS for _ in range(21)]
            for r, row in enumerate(spec.rows):
                for c, ch in enumerate(row):
                    if ch == "@":
                        grid[r][c] = "."
                    else:
                        grid[r][c] = ch
            level = _MockLevel(
                number=number,
                branch=spec.branch,
                grid=grid,
                entry_message=spec.entry_message,
            )
            for r, row in enumerate(spec.rows):
                for c, ch in enumerate(row):
                    if ch == "@":
                        self._hero = (r, c)
                        self._hero_level = number
                    elif ch == "%":
                        grid[r][c] = "."
                        level.corpses[(r, c)] = ("jackal", 0, True)
                    elif ch == "!":
                        grid[r][c] = "."
                        level.items[(r, c)] = "potion of healing"
                    elif ch == "$":
                        grid[r][c] = "."
                        level.gold[(r, c)] = 25
                    elif ch.isalpha() and ch in sc.monsters:
                        grid[r][c] = "."
                        level.monsters.append(self._make_monster(sc.monsters[ch], (r, c), rng))
            self._levels[number] = level

        self._pending_spawns = []
        for spawn in sc.spawns:
            jitter = rng.randint(0, 2) if spawn.at_turn > 0 else 0
            self._pending_spawns.append(
                (spawn.at_turn + jitter, spawn.level, spawn.char, (spawn.row, spawn.col))
            )
        self._turn = 1
        self._hp = sc.hero_hp
        self._max_hp = sc.hero_hp
        self._nutrition = sc.nutrition_start - rng.randint(0, 30)
        self._gold = sc.starting_gold
        self._inventory: dict[str, tuple[str, int]] = {}
        for slot, text, count in sc.inventory:
            self._inventory[slot] = (text, count)
        self._kills = 0
        self._max_depth = 1
        self._messages: list[str] = []
        self._menu: list[str] | None = None
        self._prompt: tuple | None = None
        self._prompt_text = ""
        self._elbereth: dict[tuple[int, int], int] = {}
        self._last_prayer: int | None = None
        self._last_attacker: str | None = None
        self._last_hunger_token = self._hunger_token()
        self._dead: str | None = None
        self._dead_cause: str | None = None
        self._end_screens: list[str] = []
        self._terminated = False
        self._started = True
        if self.current_level.entry_message:
            self._messages.append(self.current_level.entry_message)
        return self._render()

    def close(self) -> None:
        self._started = False

    @property
    def current_level(self) -> _MockLevel:
        return self._levels[self._hero_level]

    # -- stepping ---------------------------------------------------------

    def step_keys(self, keys: KeySequence) -> StepResult:
        if not self._started:
            raise EnvError("step before reset")
        if self._terminated:
            raise EnvError("episode already terminated")
        for key in keys:
            if self._terminated:
                break
            self._feed_key(key.code)
        return self._render()

    def _feed_key(self, code: int) -> None:
        if self._menu is not None:
            # Any key closes the inventory popup (no multi-select here).
            self._menu = None
            return
        if self._messages and self._prompt is None:
            if len(self._messages) > 1 or self._dead is not None:
                # --More-- paging swallows the key.
                self._messages.pop(0)
                return
            # A single lingering message clears and the key proceeds.
            self._messages.clear()
        if self._dead is not None:
            if self._end_screens:
                if len(self._end_screens) > 1:
                    self._end_screens.pop(0)
                else:
                    # The final screen stays visible once terminated.
                    self._terminated = True
            return
        if self._prompt is not None:
            self._feed_prompt_key(code)
            return
        self._feed_command_key(code)

    # -- command state machine -------------------------------------------

    def _feed_command_key(self, code: int) -> None:
        ch = chr(code) if code < 0x80 else ""
        directions = {
            "k": (-1, 0), "j": (1, 0), "h": (0, -1), "l": (0, 1),
            "u": (-1, 1), "n": (1, 1), "b": (1, -1), "y": (-1, -1),
        }
        if ch in directions:
            self._do_move(directions[ch])
        elif ch == ".":
            self._advance_time()
        elif ch == "s":
            self._advance_time()
        elif ch == ",":
            self._do_pickup()
        elif ch == ">":
            self._do_stairs(down=True)
        elif ch == "<":
            self._do_stairs(down=False)
        elif ch == "e":
            self._begin_eat()
        elif ch == "q":
            self._prompt = ("pick-item", "drink", None)
        elif ch == "t":
            self._prompt = ("pick-item", "throw", None)
        elif ch == "z":
            self._prompt = ("pick-item", "zap", None)
        elif ch == "W":
            self._prompt = ("pick-item", "wear", None)
        elif ch == "w":
            self._prompt = ("pick-item", "wield", None)
        elif ch == "F":
            self._prompt = ("direction", "fight")
        elif code == _KICK:
            self._prompt = ("direction", "kick")
        elif ch == "o":
            self._prompt = ("direction", "open")
        elif ch == "c":
            self._prompt = ("direction", "close")
        elif ch == "E":
            self._prompt = ("engrave-with",)
        elif ch == "#":
            self._prompt = ("extended", "")
        elif code == _ESCAPE:
            pass
        elif ch == "i":
            if self._inventory:
                self._menu = [
                    f" {slot} - {'a ' if count == 1 else f'{count} '}{text}"
                    + ("s" if count > 1 else "")
                    for slot, (text, count) in sorted(self._inventory.items())
                ] + ["   (end)"]
            else:
                self._messages.append("Not carrying anything.")
        # unknown commands are silently ignored, like unbound keys

    def _feed_prompt_key(self, code: int) -> None:
        assert self._prompt is not None
        kind = self._prompt[0]
        ch = chr(code) if code < 0x80 else ""
        if code == _ESCAPE:
            self._prompt = None
            return
        if kind == "extended":
            word = self._prompt[1]
            if code == _ENTER:
                self._prompt = None
                if word == "pray":
                    self._prompt = ("confirm-pray",)
                elif word == "quit":
                    self._prompt = ("confirm-quit",)
                else:
                    self._messages.append(f"{word}: unknown extended command.")
            else:
                self._prompt = ("extended", word + ch)
        elif kind == "confirm-quit":
            self._prompt = None
            if ch == "y":
                self._quit()
        elif kind == "confirm-pray":
            self._prompt = None
            if ch == "y":
                self._do_pray()
        elif kind == "eat-floor":
            self._prompt = None
            if ch == "y":
                self._do_eat_floor()
            elif ch == "n":
                self._prompt = ("pick-item", "eat", None)
            # any other key takes the (q) default: cancel
        elif kind == "pick-item":
            verb = self._prompt[1]
            self._prompt = None
            self._handle_item_verb(verb, ch)
        elif kind == "direction":
            verb = self._prompt[1]
            self._prompt = None
            directions = {
                "k": (-1, 0), "j": (1, 0), "h": (0, -1), "l": (0, 1),
                "u": (-1, 1), "n": (1, 1), "b": (1, -1), "y": (-1, -1),
            }
            if ch in directions:
                self._do_directional(verb, directions[ch])
        elif kind == "direction-item":
            verb, slot = self._prompt[1], self._prompt[2]
            self._prompt = None
            directions = {
                "k": (-1, 0), "j": (1, 0), "h": (0, -1), "l": (0, 1),
                "u": (-1, 1), "n": (1, 1), "b": (1, -1), "y": (-1, -1),
            }
            if ch in directions:
                self._do_directional_item(verb, slot, directions[ch])
        elif kind == "engrave-with":
            self._prompt = None
            if ch == "-":
                self._prompt = ("engrave-text", "")
            else:
                self._messages.append("You can't engrave with that.")
        elif kind == "engrave-text":
            text = self._prompt[1]
            if code == _ENTER:
                self._prompt = None
                self._do_engrave(text)
            else:
                self._prompt = ("engrave-text", text + ch)

    def _consume(self, slot: str) -> None:
        text, count = self._inventory[slot]
        if count <= 1:
            del self._inventory[slot]
        else:
            self._inventory[slot] = (text, count - 1)

    def _handle_item_verb(self, verb: str, slot: str) -> None:
        if slot not in self._inventory:
            self._messages.append("You don't have that object.")
            return
        text, count = self._inventory[slot]
        if verb == "drink":
            if "healing" in text:
                self._hp = min(self._max_hp, self._hp + 10)
                self._messages.append("You feel better.")
            else:
                self._messages.append("This tastes like water.")
            self._consume(slot)
            self._advance_time()
        elif verb == "eat":
            if "ration" in text or "food" in text:
                self._nutrition = min(1300, self._nutrition + 800)
                self._messages.append("This food ration is delicious!")
                self._consume(slot)
            else:
                self._messages.append("You can't eat that.")
            self._advance_time()
        elif verb in ("throw", "zap"):
            self._prompt = ("direction-item", verb, slot)
        elif verb in ("wear", "wield"):
            self._messages.append(f"You are now holding {text}.")
            self._advance_time()

    def _do_directional(self, verb: str, delta: tuple[int, int]) -> None:
        if verb == "fight":
            self._do_attack(delta)
        elif verb == "kick":
            self._messages.append("You kick at empty space.")
            self._advance_time()
        elif verb in ("open", "close"):
            r = self._hero[0] + delta[0]
            c = self._hero[1] + delta[1]
            level = self.current_level
            if 0 <= r < 21 and 0 <= c < COLS and level.grid[r][c] == "+":
                level.mutate((r, c), "." if verb == "open" else "+")
                self._messages.append(f"The door {verb}s.")
            else:
                self._messages.append("You see no door there.")
            self._advance_time()

    def _do_directional_item(
        self, verb: str, slot: str, delta: tuple[int, int]
    ) -> None:
        text, _count = self._inventory.get(slot, ("nothing", 0))
        target = self._first_monster_in_line(delta)
        damage = 3 if verb == "throw" else 6
        if verb == "throw":
            self._consume(slot)
        if target is None:
            self._messages.append(
                f"The {text.split()[-1] if verb == 'throw' else 'ray'} hits nothing."
            )
        else:
            self._hurt_monster(target, damage, ranged=True)
        self._advance_time()

    # -- core actions ----------------------------------------------------

    def _do_move(self, delta: tuple[int, int]) -> None:
        level = self.current_level
        if level.branch is Branch.SOKOBAN and delta[0] != 0 and delta[1] != 0:
            self._messages.append("You cannot move diagonally in Sokoban.")
            return
        r = self._hero[0] + delta[0]
        c = self._hero[1] + delta[1]
        if not (0 <= r < 21 and 0 <= c < COLS):
            return
        target = self._monster_at((r, c))
        if target is not None:
            self._do_attack(delta)
            return
        cell = level.grid[r][c]
        if cell == "0":
            self._push_boulder((r, c), delta)
            return
        if cell == "+":
            self._messages.append("Ouch!  You bump into a door.")
            return
        if cell not in _WALKABLE:
            return  # walls and rock block silently
        if cell == "^" and level.branch is Branch.SOKOBAN:
            self._messages.append("You fall into a hole!")
            self._hp -= 2
        self._hero = (r, c)
        self._advance_time()

    def _push_boulder(self, pos: tuple[int, int], delta: tuple[int, int]) -> None:
        level = self.current_level
        dest = (pos[0] + delta[0], pos[1] + delta[1])
        if not (0 <= dest[0] < 21 and 0 <= dest[1] < COLS):
            self._messages.append("You try to move the boulder, but in vain.")
            return
        cell = level.grid[dest[0]][dest[1]]
        if self._monster_at(dest) is not None:
            self._messages.append("You hear a monster behind the boulder.")
            return
        if cell == "^":
            level.mutate(dest, ".")
            level.mutate(pos, ".")
            self._messages.append("The boulder fills a hole.")
            self._hero = pos
            self._advance_time()
        elif cell in _WALKABLE and cell not in "<>":
            level.mutate(dest, "0")
            level.mutate(pos, ".")
            self._hero = pos
            self._advance_time()
        else:
            self._messages.append("You try to move the boulder, but in vain.")

    def _do_attack(self, delta: tuple[int, int]) -> None:
        pos = (self._hero[0] + delta[0], self._hero[1] + delta[1])
        target = self._monster_at(pos)
        if target is None:
            self._messages.append("You attack thin air.")
            self._advance_time()
            return
        self._hurt_monster(target, self.scenario.hero_damage, ranged=False)
        self._advance_time()

    def _hurt_monster(self, monster: _MockMonster, damage: int, ranged: bool) -> None:
        if monster.spec.passive and not ranged:
            # Touching a passive monster hurts the attacker badly.
            self._hp -= 6
            self._last_attacker = f"a {monster.spec.name}"
            self._messages.append(
                f"You are frozen by the {monster.spec.name}'s retaliation!"
            )
        monster.hp -= damage
        if monster.hp <= 0:
            level = self.current_level
            level.monsters.remove(monster)
            level.corpses[monster.pos] = (
                monster.spec.name,
                self._turn,
                monster.spec.corpse_safe,
            )
            self._kills += 1
            self._messages.append(f"You kill the {monster.spec.name}!")
        else:
            self._messages.append(f"You hit the {monster.spec.name}.")

    def _do_pickup(self) -> None:
        level = self.current_level
        pos = self._hero
        if pos in level.gold:
            amount = level.gold.pop(pos)
            self._gold += amount
            self._messages.append(f"{amount} gold pieces.")
        elif pos in level.items:
            text = level.items.pop(pos)
            slot = self._free_slot()
            self._inventory[slot] = (text, 1)
            self._messages.append(f"{slot} - a {text}.")
        else:
            self._messages.append("There is nothing here to pick up.")
        self._advance_time()

    def _free_slot(self) -> str:
        for code in range(ord("a"), ord("z") + 1):
            if chr(code) not in self._inventory:
                return chr(code)
        return "z"

    def _do_stairs(self, down: bool) -> None:
        level = self.current_level
        cell = level.grid[self._hero[0]][self._hero[1]]
        want = ">" if down else "<"
        if cell != want:
            self._messages.append(
                "You can't go down here." if down else "You can't go up here."
            )
            return
        target = level.number + 1 if down else level.number - 1
        if target not in self._levels:
            self._messages.append("The stairs lead nowhere.")
            return
        self._hero_level = target
        arrival = "<" if down else ">"
        self._hero = self._find_cell(self._levels[target], arrival)
        if down:
            self._max_depth = max(self._max_depth, target)
        if self._levels[target].entry_message:
            self._messages.append(self._levels[target].entry_message)
        self._advance_time()

    def _find_cell(self, level: _MockLevel, char: str) -> tuple[int, int]:
        for r in range(21):
            for c in range(COLS):
                if level.grid[r][c] == char:
                    return (r, c)
        for r in range(21):
            for c in range(COLS):
                if level.grid[r][c] == ".":
                    return (r, c)
        return (1, 1)

    def _begin_eat(self) -> None:
        pos = self._hero
        corpse = self.current_level.corpses.get(pos)
        if corpse is not None:
            self._prompt = (
                "eat-floor",
            )
            self._prompt_text = (
                f"There is a {corpse[0]} corpse here; eat it? [ynq] (q)"
            )
            return
        self._prompt = ("pick-item", "eat", None)

    def _do_eat_floor(self) -> None:
        pos = self._hero
        corpse = self.current_level.corpses.pop(pos, None)
        if corpse is None:
            self._messages.append("You don't see anything here to eat.")
            return
        species, dropped, safe = corpse
        if not safe:
            self._hp -= 8
            self._messages.append("Ecch - that must have been poisonous!")
        elif self._turn - dropped > _CORPSE_DECAY_TURNS:
            self._hp -= 4
            self._messages.append("Ulch!  That corpse was tainted!")
        else:
            self._nutrition = min(1300, self._nutrition + 600)
            self._messages.append(f"This {species} corpse tastes okay.")
        self._advance_time()

    def _do_pray(self) -> None:
        angry = (
            self._last_prayer is not None
            and self._turn - self._last_prayer <= _PRAYER_ANGER_WINDOW
        )
        self._last_prayer = self._turn
        if angry:
            self._hp -= 10
            self._last_attacker = "the wrath of Odin"
            self._messages.append("You feel that Odin is angry.")
        else:
            if self._nutrition < 150:
                self._nutrition = 700
                self._messages.append("Your stomach feels content.")
            elif self._hp <= self._max_hp // 2:
                self._hp = self._max_hp
                self._messages.append("You feel much better.")
            else:
                self._messages.append("You feel that Odin is displeased.")
        self._advance_time()

    def _do_engrave(self, text: str) -> None:
        if text.strip().lower() == "elbereth":
            self._elbereth[self._hero] = self._turn + _ELBERETH_DURATION
            self._messages.append("You write in the dust with your fingertip.")
        else:
            self._messages.append("You write in the dust.")
        self._advance_time()

    # -- world clock -------------------------------------------------------

    def _advance_time(self) -> None:
        self._turn += 1
        self._nutrition -= self.scenario.nutrition_drain
        self._check_hunger_transitions()
        self._process_spawns()
        self._move_monsters()
        self._decay_corpses()
        if self._nutrition <= 0:
            self._die("starvation")
        elif self._hp <= 0 and self._dead is None:
            self._die(self._last_attacker or "something")

    def _check_hunger_transitions(self) -> None:
        token = self._hunger_token()
        if token != self._last_hunger_token:
            notices = {
                "Hungry": "You are beginning to feel hungry.",
                "Weak": "You feel weak now.",
                "Fainting": "You faint from lack of food.",
            }
            if token in notices:
                self._messages.append(notices[token])
            self._last_hunger_token = token

    def _hunger_token(self) -> str:
        for bound, token in _HUNGER_BOUNDS:
            if self._nutrition >= bound:
                return token
        return "Fainting"

    def _process_spawns(self) -> None:
        remaining = []
        rng = random.Random(self.seed ^ 0x5EED)
        for at_turn, level_no, char, pos in self._pending_spawns:
            if self._turn >= at_turn:
                spec = self.scenario.monsters[char]
                level = self._levels[level_no]
                if self._monster_at(pos) is None or level_no != self._hero_level:
                    level.monsters.append(self._make_monster(spec, pos, rng))
            else:
                remaining.append((at_turn, level_no, char, pos))
        self._pending_spawns = remaining

    def _make_monster(
        self, spec: MonsterSpec, pos: tuple[int, int], rng: random.Random
    ) -> _MockMonster:
        return _MockMonster(
            spec=spec,
            pos=pos,
            hp=spec.hp,
            damage=spec.damage + rng.randint(0, 1),
        )

    def _move_monsters(self) -> None:
        level = self.current_level
        for monster in list(level.monsters):
            if not monster.spec.hostile or monster.spec.passive:
                continue
            hr, hc = self._hero
            mr, mc = monster.pos
            dist = max(abs(hr - mr), abs(hc - mc))
            hero_protected = self._elbereth.get(self._hero, -1) >= self._turn
            if dist == 1:
                if hero_protected or monster.scared_until >= self._turn:
                    self._flee_step(monster)
                    continue
                self._hp -= monster.damage
                self._last_attacker = f"a {monster.spec.name}"
                self._messages.append(f"The {monster.spec.name} bites!")
            elif dist <= 12:
                if hero_protected:
                    continue
                self._chase_step(monster)

    def _chase_step(self, monster: _MockMonster) -> None:
        self._step_monster(monster, toward=True)

    def _flee_step(self, monster: _MockMonster) -> None:
        monster.scared_until = max(monster.scared_until, self._turn + 2)
        self._step_monster(monster, toward=False)

    def _step_monster(self, monster: _MockMonster, toward: bool) -> None:
        level = self.current_level
        hr, hc = self._hero
        mr, mc = monster.pos
        sign = 1 if toward else -1
        dr = sign * (1 if hr > mr else -1 if hr < mr else 0)
        dc = sign * (1 if hc > mc else -1 if hc < mc else 0)
        candidates = [(dr, dc), (dr, 0), (0, dc)]
        if level.branch is Branch.SOKOBAN:
            candidates = [(d, e) for d, e in candidates if d == 0 or e == 0]
        for d, e in candidates:
            if d == 0 and e == 0:
                continue
            npos = (mr + d, mc + e)
            if not (0 <= npos[0] < 21 and 0 <= npos[1] < COLS):
                continue
            if npos == self._hero:
                continue
            if level.grid[npos[0]][npos[1]] in _WALKABLE and self._monster_at(npos) is None:
                monster.pos = npos
                return

    def _decay_corpses(self) -> None:
        for level in self._levels.values():
            stale = [
                pos
                for pos, (_s, dropped, _safe) in level.corpses.items()
                if self._turn - dropped > 2 * _CORPSE_DECAY_TURNS
            ]
            for pos in stale:
                del level.corpses[pos]

    def _monster_at(self, pos: tuple[int, int]) -> _MockMonster | None:
        for monster in self.current_level.monsters:
            if monster.pos == pos:
                return monster
        return None

    def _first_monster_in_line(self, delta: tuple[int, int]) -> _MockMonster | None:
        level = self.current_level
        pos = self._hero
        for _ in range(10):
            pos = (pos[0] + delta[0], pos[1] + delta[1])
            if not (0 <= pos[0] < 21 and 0 <= pos[1] < COLS):
                return None
            m = self._monster_at(pos)
            if m is not None:
                return m
            if level.grid[pos[0]][pos[1]] not in _WALKABLE and level.grid[pos[0]][pos[1]] != "0":
                return None
        return None

    # -- death and scoring -------------------------------------------------

    @property
    def score(self) -> int:
        return (
            30 * self._kills
            + 100 * (self._max_depth - 1)
            + self._gold
            + self._turn // 10
        )

    def _quit(self) -> None:
        if self._dead is not None:
            return
        self._dead = "quit"
        rank = _ROLE_RANKS.get(self.character.role, "Adventurer")
        self._end_screens = [
            (
                f"Goodbye agent the {rank}...\n\n"
                f"You quit in The Dungeons of Doom on dungeon level "
                f"{self.current_level.number} with {self.score} points,\n"
                f"and {self._gold} pieces of gold, after {self._turn} moves."
            )
        ]

    def _die(self, killer: str) -> None:
        if self._dead is not None:
            return
        self._dead = killer
        fainting = self._hunger_token() in ("Fainting",) and killer != "starvation"
        self._dead_cause = "fainted from lack of food" if fainting else None
        self._messages.append("You die...")
        rank = _ROLE_RANKS.get(self.character.role, "Adventurer")
        death_line = (
            "Starved to death in The Dungeons of Doom"
            if killer == "starvation"
            else f"Killed by {killer}"
        )
        if self._dead_cause:
            death_line += f", while {self._dead_cause}"
        self._end_screens = [
            (
                f"Goodbye agent the {rank}...\n\n"
                f"You died in The Dungeons of Doom on dungeon level "
                f"{self.current_level.number} with {self.score} points,\n"
                f"and {self._gold} pieces of gold, after {self._turn} moves.\n"
                f"{death_line}."
            )
        ]

    # -- rendering -----------------------------------------------------------

    def _render(self) -> StepResult:
        payload = self._render_bytes()
        self._emu.feed(payload)
        if self._recorder is not None:
            self._recorder.record(payload)
        return StepResult(
            snapshot=self._emu.snapshot(),
            terminated=self._terminated,
            raw_bytes_len=len(payload),
        )

    def _render_bytes(self) -> bytes:
        out = bytearray()
        out += b"\x1b[m\x1b[2J\x1b[H"
        if self._end_screens and not self._messages:
            body = self._end_screens[0]
            for i, line in enumerate(body.split("\n")):
                out += f"\x1b[{i + 2};10H".encode()
                out += line.encode("ascii", "replace")
            out += b"\x1b[23;1H"
            return bytes(out)

        # message line
        if self._prompt is not None:
            text = self._prompt_line()
        elif self._messages:
            text = self._messages[0]
            if len(self._messages) > 1 or self._dead is not None:
                text += "  --More--"
        else:
            text = ""
        out += b"\x1b[1;1H" + text[:COLS].encode("ascii", "replace")

        level = self.current_level
        out += self._terrain_bytes(level)
        # Dynamic overlays drawn over the cached terrain; hero last.
        for pos, _corpse in level.corpses.items():
            out += _cell(pos, b"\x1b[m", "%")
        for pos in level.items:
            out += _cell(pos, b"\x1b[m", "!")
        for pos in level.gold:
            out += _cell(pos, b"\x1b[33m", "$")
        for monster in level.monsters:
            out += _cell(
                monster.pos, _sgr_for_color(monster.spec.color), monster.spec.char
            )
        out += _cell(self._hero, b"\x1b[m", "@")

        if self._menu is not None:
            for i, entry in enumerate(self._menu):
                out += f"\x1b[{i + 1};45H".encode()
                out += b"\x1b[m" + entry[: COLS - 45].encode("ascii", "replace")

        out += self._status_bytes()
        hr, hc = self._hero
        out += f"\x1b[{hr + 2};{hc + 1}H".encode()
        return bytes(out)

    def _prompt_line(self) -> str:
        assert self._prompt is not None
        kind = self._prompt[0]
        if kind == "eat-floor":
            return self._prompt_text
        if kind == "pick-item":
            verb = self._prompt[1]
            letters = "".join(sorted(self._inventory)) or "*"
            return f"What do you want to {verb}? [{letters} or ?*]"
        if kind in ("direction", "direction-item"):
            return "In what direction?"
        if kind == "engrave-with":
            return "What do you want to write with? [- or ?*]"
        if kind == "engrave-text":
            return f"What do you want to write in the dust here? {self._prompt[1]}"
        if kind == "extended":
            return f"# {self._prompt[1]}"
        if kind == "confirm-pray":
            return "Are you sure you want to pray? [yn] (n)"
        return ""

    def _status_bytes(self) -> bytes:
        rank = _ROLE_RANKS.get(self.character.role, "Adventurer")
        line1 = (
            f"agent the {rank}          St:16 Dx:12 Co:14 In:9 Wi:10 Ch:8"
            f"  {self.character.alignment.title()}"
        )
        hunger = self._hunger_token()
        exp_level = 1 + self._kills // 3
        line2 = (
            f"Dlvl:{self.current_level.number}  $:{self._gold}  "
            f"HP:{max(self._hp, 0)}({self._max_hp}) Pw:5(5) AC:6  Exp:{exp_level}  "
            f"T:{self._turn}  S:{self.score}"
        )
        if hunger:
            line2 += f" {hunger}"
        return (
            f"\x1b[23;1H{line1[:COLS]}".encode("ascii", "replace")
            + f"\x1b[24;1H{line2[:COLS]}".encode("ascii", "replace")
        )


    def _terrain_bytes(self, level: _MockLevel) -> bytes:
        if level.row_cache is None:
            colors = {"+": b"\x1b[33m", "^": b"\x1b[35m"}
            cache = []
            for r in range(21):
                line = bytearray(f"\x1b[{r + 2};1H".encode())
                current = b""
                for char in level.grid[r]:
                    color = colors.get(char, b"\x1b[m")
                    if color != current:
                        line += color
                        current = color
                    line += char.encode("ascii", "replace")
                line += b"\x1b[m"
                cache.append(bytes(line))
            level.row_cache = cache
        return b"".join(level.row_cache)


def _cell(pos: tuple[int, int], color: bytes, char: str) -> bytes:
    return (
        f"\x1b[{pos[0] + 2};{pos[1] + 1}H".encode()
        + color
        + char.encode("ascii", "replace")
        + b"\x1b[m"
    )


def _sgr_for_color(color: int) -> bytes:
    if color == 7 or color == 0:
        return b"\x1b[m"
    if color < 8:
        return f"\x1b[3{color}m".encode()
    return f"\x1b[1;3{color - 8}m".encode()


def mock_scenario(
    text: str,
    character: CharacterSpec | None = None,
    seed: int = 0,
    record_to=None,
) -> MockEnv:
    """Build a MockEnv from scenario text (parse errors carry line numbers)."""
    return MockEnv(
        parse_scenario(text), character=character, seed=seed, record_to=record_to
    )
