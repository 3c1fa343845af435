"""Report emission: one JSON summary plus per-figure CSVs.

Everything written here is a pure function of the records (wallclock
excluded), so identical seeds produce byte-identical report files.
"""

from __future__ import annotations

import csv
import json
import os
from typing import Sequence

from .metrics import death_tables, depth_frequencies, metric_tuple, role_stats
from .records import EpisodeRecord

BEGINNER_THRESHOLD = 2000
BEGINNER_THRESHOLD_WIZARD = 1000
TAIL_SCORE = 30_000

SUMMARY_FILE = "summary.json"
CSV_FILES = (
    "role_stats.csv",
    "depth_frequencies.csv",
    "deaths.csv",
    "causes.csv",
    "events.csv",
    "distributions.csv",
)


def _beginner(record: EpisodeRecord) -> bool:
    threshold = (
        BEGINNER_THRESHOLD_WIZARD
        if record.character.role == "Wizard"
        else BEGINNER_THRESHOLD
    )
    return record.score < threshold


def emit_report(records: Sequence[EpisodeRecord], destination: str) -> list[str]:
    """Write the summary and CSVs into ``destination``; returns the paths."""
    if not records:
        raise ValueError("cannot report on zero episodes")
    os.makedirs(destination, exist_ok=True)
    written: list[str] = []

    metric = metric_tuple(records)
    stats = role_stats(records)
    depths = depth_frequencies(records)
    deaths, causes, events = death_tables(records)

    roles = sorted({r.character.role for r in records})
    tail_fractions = {}
    for role in roles:
        role_records = [r for r in records if r.character.role == role]
        tail_fractions[role] = sum(
            1 for r in role_records if r.score > TAIL_SCORE
        ) / len(role_records)

    summary = {
        "episodes": len(records),
        "metric_tuple": {
            "ascensions": metric.ascensions,
            "median_score": metric.median_score,
            "mean_score": metric.mean_score,
        },
        "beginner_fraction": sum(1 for r in records if _beginner(r)) / len(records),
        "tail_fraction_over_30000": tail_fractions,
        "outcomes": {
            outcome: sum(1 for r in records if r.outcome.value == outcome)
            for outcome in sorted({r.outcome.value for r in records})
        },
        "statuses_seen": {
            status: sum(1 for r in records if any(s.value == status for s in r.statuses_seen))
            for status in sorted(
                {s.value for r in records for s in r.statuses_seen}
            )
        },
    }
    path = os.path.join(destination, SUMMARY_FILE)
    with open(path, "w") as f:
        json.dump(summary, f, indent=2, sort_keys=True)
        f.write("\n")
    written.append(path)

    def write_csv(name: str, header: list[str], rows: list[list]) -> None:
        p = os.path.join(destination, name)
        with open(p, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(header)
            writer.writerows(rows)
        written.append(p)

    write_csv(
        "role_stats.csv",
        ["role", "median", "q1", "q3", "p5", "p95", "n_outliers"],
        [
            [s.role, s.median, s.q1, s.q3, s.p5, s.p95, len(s.outliers)]
            for s in stats.values()
        ],
    )
    write_csv(
        "depth_frequencies.csv",
        ["dungeon_level", "fraction_reached"],
        [[d, depths[d]] for d in sorted(depths)],
    )
    write_csv(
        "deaths.csv",
        ["death", "count"],
        [[death, count] for death, count in deaths.most_common()],
    )
    write_csv(
        "causes.csv",
        ["cause", "count"],
        [[cause, count] for cause, count in causes.most_common()],
    )
    write_csv(
        "events.csv",
        ["event", "count"],
        [[event, count] for event, count in events.most_common()],
    )
    write_csv(
        "distributions.csv",
        ["episode", "role", "score", "turns", "max_dungeon_level", "gold",
         "max_ac_change", "experience_level", "outcome"],
        [
            [
                i,
                r.character.role,
                r.score,
                r.turns,
                r.max_dungeon_level,
                r.gold,
                r.max_ac_change,
                r.experience_level_at_end,
                r.outcome.value,
            ]
            for i, r in enumerate(records)
        ],
    )
    return written


def write_records_jsonl(
    records: Sequence[EpisodeRecord], path: str, include_wallclock: bool = False
) -> None:
    with open(path, "w") as f:
        for record in records:
            json.dump(
                record.to_json_dict(include_wallclock=include_wallclock),
                f,
                sort_keys=True,
            )
            f.write("\n")


def read_records_jsonl(path: str) -> list[EpisodeRecord]:
    out = []
    with open(path) as f:
        for line in f:
            if line.strip():
                out.append(EpisodeRecord.from_json_dict(json.loads(line)))
    return out
