"""Parsed game state: status line, dungeon memory, screens, end screens."""

from .types import (
    MAP_ROWS,
    GLYPH_LIMIT,
    Blstats,
    Branch,
    Condition,
    DeathRecord,
    Feature,
    GameState,
    Hunger,
    InventoryItem,
    LevelMemory,
    Monster,
    Outcome,
    TileMemory,
    UiMode,
)
from .blstats import StatusParseError, parse_status_line
from .classify import classify_screen
from .mapparse import monster_distance, parse_map
from .menus import MenuEntry, MenuPage, MenuParseError, parse_menu
from .endscreen import EndScreenParseError, parse_end_screen

__all__ = [
    "MAP_ROWS",
    "GLYPH_LIMIT",
    "Blstats",
    "Branch",
    "Condition",
    "DeathRecord",
    "Feature",
    "GameState",
    "Hunger",
    "InventoryItem",
    "LevelMemory",
    "Monster",
    "Outcome",
    "TileMemory",
    "UiMode",
    "StatusParseError",
    "parse_status_line",
    "classify_screen",
    "parse_map",
    "monster_distance",
    "MenuEntry",
    "MenuPage",
    "MenuParseError",
    "parse_menu",
    "EndScreenParseError",
    "parse_end_screen",
]
