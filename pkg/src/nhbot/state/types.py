"""Domain types for the agent's world model.

The dungeon map occupies screen rows 1-21; row 0 is the message line and
rows 22-23 the status lines. Memory is persistent: tiles keep whatever
was last seen, search counts only grow, and levels survive leaving them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from ..term.screen import COLS

MAP_ROWS = 21
MAP_TOP = 1  # first screen row of the dungeon map

# Exclusive upper bound for display glyph identifiers.
GLYPH_LIMIT = 5976

ASCENSION_MIN_SCORE = 12_200


class Hunger(enum.Enum):
    SATIATED = "Satiated"
    NOT_HUNGRY = "NotHungry"
    HUNGRY = "Hungry"
    WEAK = "Weak"
    FAINTING = "Fainting"
    FAINTED = "Fainted"
    STARVED = "Starved"


class Condition(enum.Enum):
    BLIND = "Blind"
    CONFUSED = "Confused"
    STUNNED = "Stunned"
    HALLUCINATING = "Hallucinating"
    LYCANTHROPIC = "Lycanthropic"
    FOOD_POISONED = "FoodPoisoned"
    ILL = "Ill"


class UiMode(enum.Enum):
    MAP = "Map"
    MORE_PROMPT = "MorePrompt"
    MENU = "Menu"
    DIRECTION_PROMPT = "DirectionPrompt"
    YES_NO_PROMPT = "YesNoPrompt"
    TEXT_ENTRY = "TextEntry"
    END_SCREEN = "EndScreen"


class Feature(enum.Enum):
    UNKNOWN = "Unknown"
    FLOOR = "Floor"
    CORRIDOR = "Corridor"
    WALL_OR_ROCK = "WallOrRock"
    OPEN_DOOR = "OpenDoor"
    CLOSED_DOOR = "ClosedDoor"
    STAIRS_UP = "StairsUp"
    STAIRS_DOWN = "StairsDown"
    ALTAR = "Altar"
    FOUNTAIN = "Fountain"
    TRAP = "Trap"
    BOULDER = "Boulder"
    HOLE = "Hole"


class Branch(enum.Enum):
    MAIN = "Main"
    MINES = "Mines"
    SOKOBAN = "Sokoban"
    UNKNOWN = "Unknown"


class Outcome(enum.Enum):
    DEATH = "Death"
    ASCENSION = "Ascension"
    QUIT = "Quit"
    ESCAPE = "Escape"
    TIME_LIMIT = "TimeLimit"


@dataclass
class Blstats:
    hp: int
    max_hp: int
    power: int
    max_power: int
    armor_class: int
    gold: int
    experience_level: int
    dungeon_level: int
    turn: int
    hunger: Hunger = Hunger.NOT_HUNGRY
    conditions: frozenset[Condition] = frozenset()
    strength: int = 0
    dexterity: int = 0
    constitution: int = 0
    intelligence: int = 0
    wisdom: int = 0
    charisma: int = 0
    # Present only when the game runs with the showscore option.
    score: int | None = None


@dataclass
class TileMemory:
    appearance: tuple[str, int] = (" ", 0)
    feature: Feature = Feature.UNKNOWN
    search_count: int = 0
    items_seen: list[str] = field(default_factory=list)
    corpse_age: int | None = None
    last_seen_turn: int = -1
    glyph_id: int | None = None

    def bump_search(self) -> None:
        self.search_count += 1

    def set_glyph(self, glyph_id: int) -> None:
        if not (0 <= glyph_id < GLYPH_LIMIT):
            raise ValueError(f"glyph id {glyph_id} outside [0, {GLYPH_LIMIT})")
        self.glyph_id = glyph_id


@dataclass
class LevelMemory:
    dungeon_level: int
    branch: Branch = Branch.UNKNOWN
    tiles: list[list[TileMemory]] = field(default_factory=lambda: _blank_tiles())
    stairs_links: dict[tuple[int, int], tuple[Branch, int]] = field(
        default_factory=dict
    )
    # Tiles the hero has stood on; drives "unexplored pile" bookkeeping.
    stepped: set[tuple[int, int]] = field(default_factory=set)

    def tile(self, pos: tuple[int, int]) -> TileMemory:
        return self.tiles[pos[0]][pos[1]]

    def find_feature(self, feature: Feature) -> list[tuple[int, int]]:
        return [
            (r, c)
            for r in range(MAP_ROWS)
            for c in range(COLS)
            if self.tiles[r][c].feature is feature
        ]


def _blank_tiles() -> list[list[TileMemory]]:
    return [[TileMemory() for _ in range(COLS)] for _ in range(MAP_ROWS)]


@dataclass(frozen=True)
class Monster:
    pos: tuple[int, int]  # map coordinates (row 0 = screen row 1)
    char: str
    color: int
    hostile_guess: bool = True


@dataclass(frozen=True)
class InventoryItem:
    slot: str
    text: str
    count: int = 1
    worn: bool = False
    wielded: bool = False


@dataclass
class GameState:
    blstats: Blstats
    levels: dict[tuple[Branch, int], LevelMemory] = field(default_factory=dict)
    current_key: tuple[Branch, int] = (Branch.UNKNOWN, 1)
    inventory: list[InventoryItem] = field(default_factory=list)
    hero_pos: tuple[int, int] = (0, 0)  # map coordinates
    message: str = ""
    ui_mode: UiMode = UiMode.MAP
    monsters: list[Monster] = field(default_factory=list)
    last_prayer_turn: int | None = None

    @property
    def current_level(self) -> LevelMemory:
        return self.levels[self.current_key]

    @staticmethod
    def new(dungeon_level: int = 1, branch: Branch = Branch.UNKNOWN) -> "GameState":
        state = GameState(
            blstats=Blstats(
                hp=1,
                max_hp=1,
                power=0,
                max_power=0,
                armor_class=10,
                gold=0,
                experience_level=1,
                dungeon_level=dungeon_level,
                turn=0,
            )
        )
        key = (branch, dungeon_level)
        state.levels[key] = LevelMemory(dungeon_level=dungeon_level, branch=branch)
        state.current_key = key
        return state

    def switch_level(self, branch: Branch, dungeon_level: int) -> LevelMemory:
        key = (branch, dungeon_level)
        if key not in self.levels:
            self.levels[key] = LevelMemory(dungeon_level=dungeon_level, branch=branch)
        self.current_key = key
        return self.levels[key]


@dataclass(frozen=True)
class DeathRecord:
    death: str
    cause: str | None
    final_score: int
    final_turn: int
    outcome: Outcome
    score_missing: bool = False

    def __post_init__(self) -> None:
        if self.final_score < 0:
            raise ValueError("final_score must be non-negative")
        if self.outcome is Outcome.ASCENSION and self.final_score < ASCENSION_MIN_SCORE:
            raise ValueError(
                f"ascension with score {self.final_score} below the"
                f" {ASCENSION_MIN_SCORE} minimum is a parse inconsistency"
            )
