"""Screen-kind classification from raw snapshot text.

Total and deterministic: every snapshot classifies, with Map as the
fallback. Cue precedence matters -- a "--More--" wins over anything
behind it, menus win over prompts, and end screens are only recognized
once the interactive cues are ruled out.
"""

from __future__ import annotations

import re

from ..term.screen import ScreenSnapshot
from .types import UiMode

_MENU_PAGE = re.compile(r"\((\d+) of (\d+)\)")
_POINTS = re.compile(r"with \d+ points?")
_YN = re.compile(r"\[[yn]")
_END_CUES = ("Final Attributes", "You die")


def classify_screen(snapshot: ScreenSnapshot) -> UiMode:
    lines = snapshot.lines()
    text = "\n".join(lines)
    if "--More--" in text:
        return UiMode.MORE_PROMPT
    if "(end)" in text or _MENU_PAGE.search(text):
        return UiMode.MENU
    top = lines[0].rstrip()
    if _YN.search(top):
        return UiMode.YES_NO_PROMPT
    if "In what direction" in top or "Which direction" in top:
        return UiMode.DIRECTION_PROMPT
    if top.endswith("?") or "? [" in top:
        # Free-text and pick-an-item prompts both want typed input.
        return UiMode.TEXT_ENTRY
    if any(cue in text for cue in _END_CUES) or _POINTS.search(text):
        return UiMode.END_SCREEN
    return UiMode.MAP
