"""xlogfile ingestion (stock 3.6.6 field layout).

One game per line, colon-separated key=value fields. When present, the
game's own log overrides end-screen parsing for score and death text.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class XlogEntry:
    points: int
    deathlev: int
    maxlvl: int
    deaths: int
    death: str
    turns: int
    role: str
    race: str
    gender: str
    align: str
    raw: dict[str, str]


def parse_xlogfile_line(line: str) -> XlogEntry:
    fields: dict[str, str] = {}
    for part in line.rstrip("\n").split(":"):
        if "=" in part:
            key, value = part.split("=", 1)
            fields[key] = value
    return XlogEntry(
        points=int(fields.get("points", 0)),
        deathlev=int(fields.get("deathlev", 1)),
        maxlvl=int(fields.get("maxlvl", 1)),
        deaths=int(fields.get("deaths", 0)),
        death=fields.get("death", ""),
        turns=int(fields.get("turns", 0)),
        role=fields.get("role", ""),
        race=fields.get("race", ""),
        gender=fields.get("gender", ""),
        align=fields.get("align", ""),
        raw=fields,
    )


def read_xlogfile(path: str) -> list[XlogEntry]:
    out = []
    with open(path) as f:
        for line in f:
            if line.strip():
                out.append(parse_xlogfile_line(line))
    return out


def apply_xlog_overrides(records, entries: list[XlogEntry]) -> int:
    """Overwrite end-screen-derived fields with the game's own log.

    Entries pair with records in order (an xlogfile appends one line per
    finished game). Returns how many records were overridden; a length
    mismatch overrides the common prefix only.
    """
    n = 0
    for record, entry in zip(records, entries):
        record.score = max(entry.points, 0)
        record.turns = entry.turns or record.turns
        record.max_dungeon_level = max(entry.maxlvl, 1)
        if entry.death:
            death = entry.death
            cause = None
            if ", while " in death:
                death, cause = death.split(", while ", 1)
            for prefix in ("killed by ", "died of "):
                if death.startswith(prefix) and prefix == "killed by ":
                    death = death[len(prefix):]
                    break
            record.death = death
            record.cause = cause
        n += 1
    return n
