"""Parallel episode execution under wall-clock budgets.

Episodes are independent; a worker pool runs them and results are
collected by episode index so output order never depends on scheduling.
Per-episode budget overruns are recorded as TimeLimit outcomes rather
than failures, and an exhausted total window cancels the remainder while
keeping every finished record.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from dataclasses import dataclass
from typing import Callable

from ..envs.base import CharacterSpec
from ..state.types import Outcome
from .records import EpisodeRecord
from .rotation import rotation_schedule

logger = logging.getLogger(__name__)

# An episode factory gets (character, seed, index) and returns a record.
EpisodeRunner = Callable[[CharacterSpec, int, int], EpisodeRecord]


@dataclass(frozen=True)
class EvalBudgets:
    episode_seconds: float | None = None
    total_seconds: float | None = None


def run_eval(
    episode_runner: EpisodeRunner,
    n_episodes: int,
    seed: int = 0,
    parallelism: int = 1,
    budgets: EvalBudgets = EvalBudgets(),
) -> list[EpisodeRecord]:
    """Run the rotation schedule; returns records in episode order.

    Individual crashes are logged and recorded as zero-score TimeLimit
    entries so one bad episode never aborts an evaluation.
    """
    schedule = rotation_schedule(n_episodes, seed=seed)
    start = time.monotonic()
    results: dict[int, EpisodeRecord] = {}

    def guarded(index: int) -> tuple[int, EpisodeRecord]:
        character = schedule[index]
        episode_seed = seed * 100_003 + index
        try:
            record = episode_runner(character, episode_seed, index)
        except Exception:
            logger.exception("episode %d (%s) crashed", index, character)
            record = EpisodeRecord(
                character=character,
                score=0,
                turns=0,
                max_dungeon_level=1,
                experience_level_at_end=1,
                gold=0,
                max_ac_change=0,
                outcome=Outcome.TIME_LIMIT,
                death="crashed",
                seed=episode_seed,
            )
        return index, record

    with ThreadPoolExecutor(max_workers=max(parallelism, 1)) as pool:
        pending = {pool.submit(guarded, i) for i in range(n_episodes)}
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for future in done:
                index, record = future.result()
                results[index] = record
            if (
                budgets.total_seconds is not None
                and time.monotonic() - start > budgets.total_seconds
            ):
                for future in pending:
                    future.cancel()
                logger.warning(
                    "evaluation window exhausted with %d/%d episodes done",
                    len(results),
                    n_episodes,
                )
                pending = set()
    return [results[i] for i in sorted(results)]
