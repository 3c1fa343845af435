"""Episode outcomes and the lexicographic competition metric."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from ..envs.base import CharacterSpec
from ..state.types import Condition, Outcome


class EpisodeEvent(enum.Enum):
    ANGERED_GOD = "AngeredGod"
    FOOD_POISONING_DEATH = "FoodPoisoningDeath"
    FOOD_POISONED_STATUS = "FoodPoisonedStatus"
    STARVED = "Starved"
    CHOKED = "Choked"
    KILLED_PET = "KilledPet"
    KILLED_PET_HALLUCINATING = "KilledPetHallucinating"


@dataclass
class EpisodeRecord:
    character: CharacterSpec
    score: int
    turns: int
    max_dungeon_level: int
    experience_level_at_end: int
    gold: int
    max_ac_change: int
    outcome: Outcome
    death: str = ""
    cause: str | None = None
    events: set[EpisodeEvent] = field(default_factory=set)
    statuses_seen: set[Condition] = field(default_factory=set)
    wallclock: float = 0.0
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.score < 0:
            raise ValueError("score must be non-negative")
        if self.max_dungeon_level < 1:
            raise ValueError("max_dungeon_level must be at least 1")

    def to_json_dict(self, include_wallclock: bool = True) -> dict:
        out = {
            "character": {
                "role": self.character.role,
                "race": self.character.race,
                "alignment": self.character.alignment,
                "gender": self.character.gender,
            },
            "score": self.score,
            "turns": self.turns,
            "max_dungeon_level": self.max_dungeon_level,
            "experience_level_at_end": self.experience_level_at_end,
            "gold": self.gold,
            "max_ac_change": self.max_ac_change,
            "outcome": self.outcome.value,
            "death": self.death,
            "cause": self.cause,
            "events": sorted(e.value for e in self.events),
            "statuses_seen": sorted(s.value for s in self.statuses_seen),
            "seed": self.seed,
        }
        if include_wallclock:
            out["wallclock"] = self.wallclock
        return out

    @staticmethod
    def from_json_dict(data: dict) -> "EpisodeRecord":
        return EpisodeRecord(
            character=CharacterSpec(**data["character"]),
            score=data["score"],
            turns=data["turns"],
            max_dungeon_level=data["max_dungeon_level"],
            experience_level_at_end=data["experience_level_at_end"],
            gold=data["gold"],
            max_ac_change=data["max_ac_change"],
            outcome=Outcome(data["outcome"]),
            death=data.get("death", ""),
            cause=data.get("cause"),
            events={EpisodeEvent(e) for e in data.get("events", [])},
            statuses_seen={Condition(s) for s in data.get("statuses_seen", [])},
            wallclock=data.get("wallclock", 0.0),
            seed=data.get("seed"),
        )


@dataclass(frozen=True, order=False)
class MetricTuple:
    """Competition standing: compared lexicographically, ascensions first."""

    ascensions: int
    median_score: float
    mean_score: float

    def as_tuple(self) -> tuple[int, float, float]:
        return (self.ascensions, self.median_score, self.mean_score)

    def __lt__(self, other: "MetricTuple") -> bool:
        return self.as_tuple() < other.as_tuple()

    def __le__(self, other: "MetricTuple") -> bool:
        return self.as_tuple() <= other.as_tuple()

    def __gt__(self, other: "MetricTuple") -> bool:
        return self.as_tuple() > other.as_tuple()

    def __ge__(self, other: "MetricTuple") -> bool:
        return self.as_tuple() >= other.as_tuple()


@dataclass(frozen=True)
class RoleStats:
    role: str
    median: float
    q1: float
    q3: float
    p5: float
    p95: float
    outliers: tuple[int, ...]

    def __post_init__(self) -> None:
        if not (self.p5 <= self.q1 <= self.median <= self.q3 <= self.p95):
            raise ValueError("quantiles out of order")
