"""Status-line grammar for the two bottom screen rows.

Token patterns follow the stock 3.6.6 tty layout: "Dlvl:n $:n HP:c(m)
Pw:c(m) AC:n Exp:n T:n" plus trailing hunger/condition keywords, with
attributes ("St: Dx: Co: In: Wi: Ch:") on the row above. HP, Dlvl and T
are mandatory; everything else degrades to a default.
"""

from __future__ import annotations

import re

from ..datafiles import read_table
from ..term.screen import ScreenSnapshot
from .types import Blstats, Condition, Hunger

_HP = re.compile(r"HP:(-?\d+)\((\d+)\)")
_PW = re.compile(r"Pw:(-?\d+)\((\d+)\)")
_AC = re.compile(r"AC:(-?\d+)")
_GOLD = re.compile(r"\$:(\d+)")
_DLVL = re.compile(r"Dlvl:(\d+)")
_EXP = re.compile(r"(?:Exp|Xp):(\d+)")
_TURN = re.compile(r"\bT:(\d+)")
_SCORE = re.compile(r"\bS:(\d+)")
_ATTR = re.compile(
    r"St:(\d+)(?:/(?:\d+|\*\*))?\s+Dx:(\d+)\s+Co:(\d+)\s+In:(\d+)\s+Wi:(\d+)\s+Ch:(\d+)"
)


class StatusParseError(ValueError):
    """A mandatory status token is missing; carries the raw line."""

    def __init__(self, message: str, raw: str) -> None:
        super().__init__(f"{message}: {raw.rstrip()!r}")
        self.raw = raw


def _keyword_tables() -> tuple[dict[str, Hunger], dict[str, Condition]]:
    hunger: dict[str, Hunger] = {}
    conditions: dict[str, Condition] = {}
    for kind, token, name in read_table("hunger_conditions.txt"):
        if kind == "hunger":
            hunger[token] = Hunger[name]
        else:
            conditions[token] = Condition[name]
    return hunger, conditions


def parse_status_line(snapshot: ScreenSnapshot) -> Blstats:
    """Parse the bottom two rows into Blstats."""
    attr_line = snapshot.line(snapshot.rows - 2)
    line = snapshot.line(snapshot.rows - 1)
    return parse_status_text(line, attr_line)


def parse_status_text(line: str, attr_line: str = "") -> Blstats:
    """Parse raw status text (bottom row, optionally the attribute row)."""
    hp = _HP.search(line)
    dlvl = _DLVL.search(line)
    turn = _TURN.search(line)
    if hp is None or dlvl is None or turn is None:
        raise StatusParseError("missing mandatory HP/Dlvl/T token", line)

    max_hp = max(int(hp.group(2)), 1)
    cur_hp = min(max(int(hp.group(1)), 0), max_hp)
    pw = _PW.search(line)
    ac = _AC.search(line)
    gold = _GOLD.search(line)
    exp = _EXP.search(line)
    score = _SCORE.search(line)

    hunger_words, condition_words = _keyword_tables()
    hunger = Hunger.NOT_HUNGRY
    conditions: set[Condition] = set()
    # Keywords trail the numeric tokens; scan word-wise so e.g. a status
    # row can hold "Hungry Conf Blind" in any order.
    for word in line.split():
        if word in hunger_words:
            hunger = hunger_words[word]
        elif word in condition_words:
            conditions.add(condition_words[word])

    attrs = _ATTR.search(attr_line)
    st = dx = co = iq = wi = ch = 0
    if attrs:
        st, dx, co, iq, wi, ch = (int(g) for g in attrs.groups())

    return Blstats(
        hp=cur_hp,
        max_hp=max_hp,
        power=int(pw.group(1)) if pw else 0,
        max_power=int(pw.group(2)) if pw else 0,
        armor_class=int(ac.group(1)) if ac else 10,
        gold=int(gold.group(1)) if gold else 0,
        experience_level=int(exp.group(1)) if exp else 1,
        dungeon_level=int(dlvl.group(1)),
        turn=int(turn.group(1)),
        hunger=hunger,
        conditions=frozenset(conditions),
        strength=st,
        dexterity=dx,
        constitution=co,
        intelligence=iq,
        wisdom=wi,
        charisma=ch,
        score=int(score.group(1)) if score else None,
    )
