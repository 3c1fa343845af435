"""Abstract agent intents and their compilation to keystroke sequences.

One intent can span several keystrokes (throwing is 't', an inventory
letter, then a direction). Compilation is deterministic, validates the
intent against the current screen mode and inventory, and only ever
emits keys from the challenge universe. Movement uses the hjklyubn
convention throughout; menu/prompt confirmations are baked into the
sequence that needs them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

from ..state.types import UiMode
from .keys import KeySequence, key_for

ESC = 0x1B
ENTER = 0x0D  # the carriage-return key doubles as line terminator
KICK_KEY = 0x04  # Ctrl-D


class CompileError(ValueError):
    """Intent illegal in the given mode or referencing an unknown slot."""


class Direction(enum.Enum):
    N = ("k", (-1, 0))
    S = ("j", (1, 0))
    E = ("l", (0, 1))
    W = ("h", (0, -1))
    NE = ("u", (-1, 1))
    SE = ("n", (1, 1))
    SW = ("b", (1, -1))
    NW = ("y", (-1, -1))

    @property
    def key(self) -> str:
        return self.value[0]

    @property
    def delta(self) -> tuple[int, int]:
        return self.value[1]

    @property
    def diagonal(self) -> bool:
        dr, dc = self.delta
        return dr != 0 and dc != 0

    @staticmethod
    def between(src: tuple[int, int], dst: tuple[int, int]) -> "Direction | None":
        dr = dst[0] - src[0]
        dc = dst[1] - src[1]
        step = (max(-1, min(1, dr)), max(-1, min(1, dc)))
        for d in Direction:
            if d.delta == step and step != (0, 0):
                return d
        return None


DIRECTIONS = tuple(Direction)


@dataclass(frozen=True)
class Move:
    direction: Direction


@dataclass(frozen=True)
class MeleeAttack:
    direction: Direction


@dataclass(frozen=True)
class Throw:
    slot: str
    direction: Direction


@dataclass(frozen=True)
class ZapWand:
    slot: str
    direction: Direction


@dataclass(frozen=True)
class Eat:
    slot: str | None = None  # None: eat from the floor


@dataclass(frozen=True)
class Pray:
    pass


@dataclass(frozen=True)
class Engrave:
    text: str = "Elbereth"


@dataclass(frozen=True)
class Search:
    pass


@dataclass(frozen=True)
class Kick:
    direction: Direction


@dataclass(frozen=True)
class Open:
    direction: Direction


@dataclass(frozen=True)
class Close:
    direction: Direction


@dataclass(frozen=True)
class GoUp:
    pass


@dataclass(frozen=True)
class GoDown:
    pass


@dataclass(frozen=True)
class PickUp:
    pass


@dataclass(frozen=True)
class Wait:
    pass


@dataclass(frozen=True)
class Quaff:
    slot: str


@dataclass(frozen=True)
class Wear:
    slot: str


@dataclass(frozen=True)
class Wield:
    slot: str


@dataclass(frozen=True)
class MenuSelect:
    letters: str


@dataclass(frozen=True)
class DismissMore:
    pass


@dataclass(frozen=True)
class Answer:
    value: Union[str, Direction]  # "yes", "no", a Direction, or free text


AbstractAction = Union[
    Move, MeleeAttack, Throw, ZapWand, Eat, Pray, Engrave, Search, Kick,
    Open, Close, GoUp, GoDown, PickUp, Wait, Quaff, Wear, Wield,
    MenuSelect, DismissMore, Answer,
]

# Which screen modes each intent is legal in.
_MAP_ONLY = (
    Move, MeleeAttack, Throw, ZapWand, Eat, Pray, Engrave, Search, Kick,
    Open, Close, GoUp, GoDown, PickUp, Wait, Quaff, Wear, Wield,
)
_SLOTTED = (Throw, ZapWand, Quaff, Wear, Wield)


def _check_slot(slot: str, inventory_slots) -> None:
    if not (len(slot) == 1 and slot.isalpha()):
        raise CompileError(f"invalid inventory slot {slot!r}")
    if inventory_slots is not None and slot not in inventory_slots:
        raise CompileError(f"slot {slot!r} not in inventory")


def compile_action(
    action: AbstractAction,
    ui_mode: UiMode = UiMode.MAP,
    inventory_slots=None,
) -> KeySequence:
    """Compile an intent into keystrokes for the given screen mode.

    ``inventory_slots`` is an optional iterable of letters used to reject
    references to items the hero does not carry.
    """
    if isinstance(action, _MAP_ONLY) and ui_mode is not UiMode.MAP:
        raise CompileError(f"{type(action).__name__} is only legal on the map")
    if isinstance(action, MenuSelect) and ui_mode is not UiMode.MENU:
        raise CompileError("MenuSelect is only legal in a menu")
    if isinstance(action, DismissMore) and ui_mode is not UiMode.MORE_PROMPT:
        raise CompileError("DismissMore is only legal at a --More-- prompt")
    if isinstance(action, Answer) and ui_mode not in (
        UiMode.YES_NO_PROMPT,
        UiMode.DIRECTION_PROMPT,
        UiMode.TEXT_ENTRY,
    ):
        raise CompileError("Answer is only legal at a prompt")
    if isinstance(action, _SLOTTED):
        _check_slot(action.slot, inventory_slots)
    if isinstance(action, Eat) and action.slot is not None:
        _check_slot(action.slot, inventory_slots)

    if isinstance(action, Move):
        return _seq(action.direction.key)
    if isinstance(action, MeleeAttack):
        # 'F' forces the attack so a move never silently displaces a peaceful.
        return _seq("F", action.direction.key)
    if isinstance(action, Throw):
        return _seq("t", action.slot, action.direction.key)
    if isinstance(action, ZapWand):
        return _seq("z", action.slot, action.direction.key)
    if isinstance(action, Eat):
        if action.slot is None:
            return _seq("e", "y")  # confirm "There is a corpse here; eat it?"
        return _seq("e", action.slot)
    if isinstance(action, Pray):
        return _seq("#", "p", "r", "a", "y", ENTER, "y")
    if isinstance(action, Engrave):
        if not action.text or any(not (0x20 <= ord(ch) <= 0x7E) for ch in action.text):
            raise CompileError("engrave text must be printable and non-empty")
        return _seq("E", "-", *action.text, ENTER)
    if isinstance(action, Search):
        return _seq("s")
    if isinstance(action, Kick):
        return _seq(KICK_KEY, action.direction.key)
    if isinstance(action, Open):
        return _seq("o", action.direction.key)
    if isinstance(action, Close):
        return _seq("c", action.direction.key)
    if isinstance(action, GoUp):
        return _seq("<")
    if isinstance(action, GoDown):
        return _seq(">")
    if isinstance(action, PickUp):
        return _seq(",")
    if isinstance(action, Wait):
        return _seq(".")
    if isinstance(action, Quaff):
        return _seq("q", action.slot)
    if isinstance(action, Wear):
        return _seq("W", action.slot)
    if isinstance(action, Wield):
        return _seq("w", action.slot)
    if isinstance(action, MenuSelect):
        if not action.letters:
            raise CompileError("empty menu selection")
        return _seq(*action.letters, ENTER)
    if isinstance(action, DismissMore):
        return _seq(" ")
    if isinstance(action, Answer):
        return _compile_answer(action, ui_mode)
    raise CompileError(f"unknown action {action!r}")


def _compile_answer(action: Answer, ui_mode: UiMode) -> KeySequence:
    value = action.value
    if isinstance(value, Direction):
        return _seq(value.key)
    if value == "yes":
        return _seq("y")
    if value == "no":
        return _seq("n")
    if ui_mode is UiMode.TEXT_ENTRY:
        if not value:
            return _seq(ESC)
        return _seq(*value, ENTER)
    raise CompileError(f"cannot answer {value!r} in {ui_mode.value}")


def _seq(*keys: int | str) -> KeySequence:
    return KeySequence(tuple(key_for(k) for k in keys))


_DIR_NAMES = {
    "k": "north", "j": "south", "l": "east", "h": "west",
    "u": "northeast", "n": "southeast", "b": "southwest", "y": "northwest",
}

_LEADER_VERBS = {
    "t": "throw", "z": "zap", "q": "quaff", "e": "eat", "W": "wear",
    "w": "wield", "o": "open", "c": "close", "F": "attack", "E": "engrave",
}


def decompile(keys: KeySequence) -> str:
    """Human-readable rendering of a key sequence for logs and replays."""
    first = keys.keys[0]
    ch = chr(first.code) if first.code < 0x80 else ""
    rest = keys.keys[1:]
    if first.code == ESC:
        return "cancel"
    if first.code == KICK_KEY:
        return _with_dir("kick", rest)
    if ch == "#":
        word = ""
        for k in rest:
            if not (0x20 < k.code < 0x7F):
                break  # stop at the terminating ENTER
            word += chr(k.code)
        return f"extended command #{word}"
    if ch in _LEADER_VERBS:
        verb = _LEADER_VERBS[ch]
        if ch in ("t", "z") and len(rest) >= 2:
            d = _DIR_NAMES.get(chr(rest[1].code), "?")
            return f"{verb} slot {chr(rest[0].code)} {d}"
        if ch in ("q", "W", "w") and rest:
            return f"{verb} slot {chr(rest[0].code)}"
        if ch == "e":
            if rest and chr(rest[0].code) == "y":
                return "eat from floor"
            if rest:
                return f"eat slot {chr(rest[0].code)}"
            return "eat"
        if ch == "E":
            text = "".join(
                chr(k.code) for k in rest[1:] if 0x20 <= k.code <= 0x7E
            )
            return f'engrave "{text}"'
        return _with_dir(verb, rest)
    if ch in _DIR_NAMES and not rest:
        # y and n double as prompt answers; without mode context say both.
        if ch == "y":
            return "move northwest or answer yes"
        if ch == "n":
            return "move southeast or answer no"
        return f"move {_DIR_NAMES[ch]}"
    if ch == "s" and not rest:
        return "search"
    if ch == "." and not rest:
        return "wait"
    if ch == "<":
        return "go up"
    if ch == ">":
        return "go down"
    if ch == ",":
        return "pick up"
    if ch == " ":
        return "dismiss more"
    if ch == "y" and not rest:
        return "answer yes"
    if ch == "n" and not rest:
        return "answer no"
    if keys.keys[-1].code == ENTER and all(
        0x20 <= k.code <= 0x7E for k in keys.keys[:-1]
    ):
        typed = "".join(chr(k.code) for k in keys.keys[:-1])
        return f'select or type "{typed}"'
    mnemonics = " ".join(k.mnemonic for k in keys.keys)
    return mnemonics


def _with_dir(verb: str, rest: tuple) -> str:
    if rest:
        d = _DIR_NAMES.get(chr(rest[0].code), "?")
        return f"{verb} {d}"
    return verb
