"""Scoring statistics.

Median for even counts is the midpoint of the two middle values;
quantiles use linear interpolation over (n-1) intervals, i.e. the
percentile p sits at index (n-1)*p/100 with fractional interpolation.
Both estimators are deliberately simple so rankings stay auditable.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Sequence

from ..state.types import Outcome
from .records import EpisodeEvent, EpisodeRecord, MetricTuple, RoleStats


def metric_tuple(records: Sequence[EpisodeRecord]) -> MetricTuple:
    if not records:
        raise ValueError("metric tuple needs at least one episode")
    scores = sorted(r.score for r in records)
    return MetricTuple(
        ascensions=sum(1 for r in records if r.outcome is Outcome.ASCENSION),
        median_score=_median(scores),
        mean_score=sum(scores) / len(scores),
    )


def _median(sorted_scores: list[int]) -> float:
    n = len(sorted_scores)
    mid = n // 2
    if n % 2 == 1:
        return float(sorted_scores[mid])
    return (sorted_scores[mid - 1] + sorted_scores[mid]) / 2


def compare(a: MetricTuple, b: MetricTuple) -> int:
    """-1, 0 or 1 in strict lexicographic order."""
    if a.as_tuple() < b.as_tuple():
        return -1
    if a.as_tuple() > b.as_tuple():
        return 1
    return 0


def percentile_linear(sorted_values: Sequence[float], p: float) -> float:
    """Linear-interpolation percentile on pre-sorted values."""
    if not sorted_values:
        raise ValueError("empty sample")
    if len(sorted_values) == 1:
        return float(sorted_values[0])
    rank = (len(sorted_values) - 1) * p / 100.0
    low = int(rank)
    frac = rank - low
    if low + 1 >= len(sorted_values):
        return float(sorted_values[-1])
    return sorted_values[low] + frac * (sorted_values[low + 1] - sorted_values[low])


def role_stats(records: Iterable[EpisodeRecord]) -> dict[str, RoleStats]:
    by_role: dict[str, list[int]] = {}
    for r in records:
        by_role.setdefault(r.character.role, []).append(r.score)
    out: dict[str, RoleStats] = {}
    for role, scores in sorted(by_role.items()):
        scores.sort()
        p5 = percentile_linear(scores, 5)
        p95 = percentile_linear(scores, 95)
        out[role] = RoleStats(
            role=role,
            median=percentile_linear(scores, 50),
            q1=percentile_linear(scores, 25),
            q3=percentile_linear(scores, 75),
            p5=p5,
            p95=p95,
            outliers=tuple(s for s in scores if s < p5 or s > p95),
        )
    return out


def depth_frequencies(records: Sequence[EpisodeRecord]) -> dict[int, float]:
    """Fraction of episodes whose max depth reached at least each level."""
    if not records:
        return {}
    deepest = max(r.max_dungeon_level for r in records)
    n = len(records)
    return {
        d: sum(1 for r in records if r.max_dungeon_level >= d) / n
        for d in range(1, deepest + 1)
    }


def death_tables(
    records: Iterable[EpisodeRecord],
) -> tuple[Counter, Counter, Counter]:
    """(death text, cause text, event) frequency tables."""
    deaths: Counter = Counter()
    causes: Counter = Counter()
    events: Counter = Counter()
    for r in records:
        if r.death:
            deaths[r.death] += 1
        if r.cause:
            causes[r.cause] += 1
        for event in r.events:
            events[event.value] += 1
    return deaths, causes, events


def detect_events(
    death: str, cause: str | None, messages: Iterable[str], hallucinating_kills: int
) -> set[EpisodeEvent]:
    """Pattern-table event detection over death/cause text and messages."""
    from ..datafiles import read_table

    death_l = death.lower()
    cause_l = (cause or "").lower()
    messages_l = [m.lower() for m in messages]
    found: set[EpisodeEvent] = set()
    for row in read_table("death_events.txt"):
        event_name, source, pattern = row[0], row[1], row[2].lower()
        event = EpisodeEvent[event_name]
        if source == "death" and pattern in death_l:
            found.add(event)
        elif source == "cause" and pattern in cause_l:
            found.add(event)
        elif source == "message":
            if len(row) > 3 and row[3] == "regex":
                import re

                if any(re.search(pattern, m) for m in messages_l):
                    found.add(event)
            elif len(row) > 3 and row[3] == "hallucinating":
                if hallucinating_kills > 0 and any(pattern in m for m in messages_l):
                    found.add(event)
            elif any(pattern in m for m in messages_l):
                found.add(event)
    return found
