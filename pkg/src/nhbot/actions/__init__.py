"""Keystroke universe and intent-to-keys compilation."""

from .keys import KeyAction, KeySequence, UnknownKeyError, key_for, key_universe
from .codec import (
    AbstractAction,
    Answer,
    Close,
    CompileError,
    DismissMore,
    Direction,
    Eat,
    Engrave,
    GoDown,
    GoUp,
    Kick,
    MeleeAttack,
    MenuSelect,
    Move,
    Open,
    PickUp,
    Pray,
    Quaff,
    Search,
    Throw,
    Wait,
    Wear,
    Wield,
    ZapWand,
    compile_action,
    decompile,
)

__all__ = [
    "KeyAction",
    "KeySequence",
    "UnknownKeyError",
    "key_for",
    "key_universe",
    "AbstractAction",
    "Answer",
    "Close",
    "CompileError",
    "DismissMore",
    "Direction",
    "Eat",
    "Engrave",
    "GoDown",
    "GoUp",
    "Kick",
    "MeleeAttack",
    "MenuSelect",
    "Move",
    "Open",
    "PickUp",
    "Pray",
    "Quaff",
    "Search",
    "Throw",
    "Wait",
    "Wear",
    "Wield",
    "ZapWand",
    "compile_action",
    "decompile",
]
