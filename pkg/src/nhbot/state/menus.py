"""ASCII popup menu parsing.

NetHack menus render as right-side popups with one selector letter per
line ("a - a blessed +1 quarterstaff (weapon in hands)") and a footer of
either "(end)" or "(2 of 3)". A '+' separator marks a selected entry.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..term.screen import ScreenSnapshot

_ENTRY = re.compile(r"^\s*([a-zA-Z])\s([-+#])\s(.+?)\s*$")
_FOOTER = re.compile(r"\((?:end|(\d+) of (\d+))\)")


class MenuParseError(ValueError):
    """The screen does not contain a recognizable menu popup."""


@dataclass(frozen=True)
class MenuEntry:
    selector: str
    text: str
    selected: bool = False


@dataclass(frozen=True)
class MenuPage:
    entries: tuple[MenuEntry, ...]
    page: int = 1
    pages: int = 1


def parse_menu(snapshot: ScreenSnapshot) -> MenuPage:
    """Extract menu entries in screen order plus page info."""
    entries: list[MenuEntry] = []
    footer: tuple[int, int] | None = None
    for raw in snapshot.lines():
        m = _FOOTER.search(raw)
        if m:
            if m.group(1):
                footer = (int(m.group(1)), int(m.group(2)))
            else:
                footer = (1, 1)
            continue
        e = _ENTRY.match(raw)
        if e:
            entries.append(
                MenuEntry(
                    selector=e.group(1),
                    text=e.group(3),
                    selected=e.group(2) in "+#",
                )
            )
    if footer is None:
        raise MenuParseError("no menu footer ('(end)' or '(N of M)') on screen")
    return MenuPage(entries=tuple(entries), page=footer[0], pages=footer[1])
