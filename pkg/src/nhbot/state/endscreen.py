"""End-of-game screen parsing into a DeathRecord.

The score comes from the "...with N points" sentence; the death text
follows "Killed by " with an optional ", while <cause>" tail. Ascension,
quits and escapes are recognized by their own sentence forms.
"""

from __future__ import annotations

import re
from typing import Sequence

from ..term.screen import ScreenSnapshot
from .types import DeathRecord, Outcome

_POINTS = re.compile(r"with (\d+) points?")
_KILLED = re.compile(r"Killed by (.+?)(?:,? while (.+?))?\s*[.]?$")
_DEATH_PREFIXES = (
    "Poisoned by ",
    "Choked on ",
    "Drowned in ",
    "Burned by ",
    "Fell into ",
    "Petrified by ",
    "Zapped ",
    "Caught ",
)
_STARVED = re.compile(r"(Starved to death|Died of starvation)")


class EndScreenParseError(ValueError):
    pass


def _texts(snapshots: Sequence[ScreenSnapshot]) -> list[str]:
    lines: list[str] = []
    for snap in snapshots:
        for line in snap.lines():
            stripped = line.strip()
            if stripped:
                lines.append(stripped)
    return lines


def parse_end_screen(
    snapshots: Sequence[ScreenSnapshot],
    final_turn: int = 0,
    fallback_score: int | None = None,
) -> DeathRecord:
    """Build a DeathRecord from the sequence of end screens.

    When no score sentence is present, ``fallback_score`` (the last known
    score source, e.g. a showscore status token) is used and the record
    is flagged ``score_missing``.
    """
    if not snapshots:
        raise EndScreenParseError("no end screens captured")
    lines = _texts(snapshots)
    joined = " ".join(lines)

    score: int | None = None
    for m in _POINTS.finditer(joined):
        score = int(m.group(1))  # last occurrence wins (final screen)
    score_missing = score is None
    if score is None:
        score = fallback_score if fallback_score is not None else 0

    death = ""
    cause: str | None = None
    outcome = Outcome.DEATH
    if "ascend" in joined.lower() or "went to your reward" in joined.lower():
        outcome = Outcome.ASCENSION
        death = "ascended"
    elif re.search(r"\b[Qq]uit\b", joined):
        outcome = Outcome.QUIT
        death = "quit"
    elif "escaped" in joined.lower():
        outcome = Outcome.ESCAPE
        death = "escaped"
    else:
        for line in lines:
            m = _KILLED.search(line)
            if m:
                death = m.group(1)
                cause = m.group(2)
                break
        else:
            for line in lines:
                sm = _STARVED.search(line)
                if sm:
                    death = sm.group(1).lower()
                    break
                for prefix in _DEATH_PREFIXES:
                    if line.startswith(prefix):
                        death = line.rstrip(".")
                        break
                if death:
                    break
    if not death:
        death = "unknown"

    return DeathRecord(
        death=death,
        cause=cause,
        final_score=score,
        final_turn=final_turn,
        outcome=outcome,
        score_missing=score_missing,
    )
