"""The fixed 113-key action universe.

Loaded from the versioned keymap table; every keystroke the agent ever
sends must come from this set.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..datafiles import read_table


class UnknownKeyError(ValueError):
    """Byte value outside the keymap."""


@dataclass(frozen=True)
class KeyAction:
    code: int
    mnemonic: str

    @property
    def char(self) -> str:
        """Printable form, or a caret/meta rendering for control keys."""
        if 0x20 <= self.code <= 0x7E:
            return chr(self.code)
        if self.code == 0x1B:
            return "^["
        if self.code < 0x20:
            return "^" + chr(self.code + 0x40)
        return "M-" + chr(self.code & 0x7F)

    def __bytes__(self) -> bytes:
        return bytes([self.code])


@dataclass(frozen=True)
class KeySequence:
    keys: tuple[KeyAction, ...]

    def __post_init__(self) -> None:
        if not self.keys:
            raise ValueError("key sequences must be non-empty")

    def __bytes__(self) -> bytes:
        return bytes(k.code for k in self.keys)

    def __len__(self) -> int:
        return len(self.keys)

    def __iter__(self):
        return iter(self.keys)

    def display(self) -> str:
        return "".join(k.char for k in self.keys)


@lru_cache(maxsize=1)
def _universe() -> tuple[tuple[KeyAction, ...], dict[int, KeyAction]]:
    keys = tuple(
        KeyAction(code=int(code), mnemonic=name)
        for code, name in read_table("keymap.txt")
    )
    return keys, {k.code: k for k in keys}


def key_universe() -> tuple[KeyAction, ...]:
    """All 113 challenge keys in stable table order."""
    return _universe()[0]


def key_for(key: int | str) -> KeyAction:
    """Look up a key by byte value or single character."""
    code = ord(key) if isinstance(key, str) else key
    try:
        return _universe()[1][code]
    except KeyError:
        raise UnknownKeyError(f"byte {code:#x} is not a challenge key") from None


def sequence(*keys: int | str) -> KeySequence:
    return KeySequence(tuple(key_for(k) for k in keys))
