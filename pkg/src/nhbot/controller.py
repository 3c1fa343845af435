"""Top-level episode loop.

Per step: answer pending UI (prompts, menus, --More--) first and loop;
otherwise parse the dungeon and dispatch by monster distance -- the
combat policy inside the view gate, the first-fit strategy engine
outside it. Every step emits one key sequence and one trace line; a
no-progress detector breaks identical-screen loops with ESC + search.
"""

from __future__ import annotations

import json
import re
import time
from dataclasses import dataclass
from typing import IO

from .actions import codec
from .actions.keys import KeySequence, key_for
from .datafiles import read_table
from .engine import BehaviorEngine
from .envs.base import CharacterSpec, EnvHandle
from .evaluation.metrics import detect_events
from .evaluation.records import EpisodeRecord
from .state.blstats import StatusParseError, parse_status_line
from .state.classify import classify_screen
from .state.endscreen import parse_end_screen
from .state.mapparse import monster_distance, parse_map
from .state.menus import MenuParseError, parse_menu
from .state.types import (
    Branch,
    Condition,
    GameState,
    InventoryItem,
    Outcome,
    UiMode,
)
from .strategies import combat as combat_mod
from .strategies.library import default_strategies
from .strategies.nutrition import record_corpse
from .term.screen import ScreenSnapshot


@dataclass(frozen=True)
class ControllerConfig:
    view_distance: int = 8
    max_steps: int = 2000
    step_time_budget: float = 2.0
    episode_time_budget: float | None = None
    score_cutoff: int | None = None  # optional early termination
    no_progress_limit: int = 5
    stack_depth: int = 32


@dataclass
class StepTrace:
    step: int
    turn: int
    ui_mode: str
    dispatched_by: str
    action: str
    keys: str
    strategy_stack: tuple[str, ...] = ()

    def to_json(self) -> str:
        return json.dumps(
            {
                "step": self.step,
                "turn": self.turn,
                "ui_mode": self.ui_mode,
                "dispatched_by": self.dispatched_by,
                "action": self.action,
                "keys": self.keys,
                "strategy_stack": list(self.strategy_stack),
            },
            sort_keys=True,
        )


_ANSWER_TABLE = None


def _answer_table() -> tuple[tuple[str, str], ...]:
    global _ANSWER_TABLE
    if _ANSWER_TABLE is None:
        _ANSWER_TABLE = tuple(
            (pattern.lower(), key) for pattern, key in read_table("prompt_answers.txt")
        )
    return _ANSWER_TABLE


def handle_prompts(state: GameState) -> KeySequence | None:
    """Dismissal/answer keys for unsolicited UI; None on the plain map."""
    mode = state.ui_mode
    if mode is UiMode.MAP:
        return None
    if mode is UiMode.MORE_PROMPT:
        return KeySequence((key_for(" "),))
    if mode is UiMode.MENU:
        return KeySequence((key_for(0x1B),))
    if mode is UiMode.YES_NO_PROMPT:
        lowered = state.message.lower()
        for pattern, answer in _answer_table():
            if pattern in lowered:
                return KeySequence((key_for(answer),))
        return KeySequence((key_for("n"),))
    # Direction or free-text prompts the agent did not ask for: bail out.
    return KeySequence((key_for(0x1B),))


_PICKUP_MSG = re.compile(r"^([a-zA-Z]) - (?:an? |\d+ )?(.+?)\.?$")
_KILL_MSG = re.compile(r"You (?:kill|destroy) the (?:poor )?(.+?)!")
# Eating resolved one way or another: the corpse under the hero is gone.
_CORPSE_GONE = (
    "corpse tastes",
    "you finish eating",
    "ecch",
    "ulch",
    "don't see anything here to eat",
)


class Agent:
    """Per-episode decision core usable against any snapshot source."""

    def __init__(
        self,
        config: ControllerConfig | None = None,
        engine: BehaviorEngine | None = None,
    ) -> None:
        self.config = config or ControllerConfig()
        if engine is None:
            engine = BehaviorEngine(max_stack_depth=self.config.stack_depth)
            engine.register_all(default_strategies())
        self.engine = engine
        self.state = GameState.new()
        self.traces: list[StepTrace] = []
        self.messages_log: list[str] = []
        self.end_snapshots: list[ScreenSnapshot] = []
        self.finished = False
        self._step = 0
        self._inventory_dirty = True
        self._expecting_menu = False
        self._last_action: codec.AbstractAction | None = None
        self._pending_prayer = False
        self._repeat_key: tuple | None = None
        self._repeats = 0
        self._turn_change_step = 0
        self._min_ac: int | None = None
        self._max_ac: int | None = None
        self._max_depth = 1
        self._last_score: int | None = None
        self._hallucinating_kills = 0
        self._statuses: set[Condition] = set()
        self._parse_failures = 0
        self._quitting = False
        self._trace_sink: IO[str] | None = None

    def set_trace_sink(self, sink: IO[str]) -> None:
        self._trace_sink = sink

    # -- per-step decision --------------------------------------------------

    def observe(self, snapshot: ScreenSnapshot) -> KeySequence:
        """Decide the next key sequence for this screen."""
        self._step += 1
        mode = classify_screen(snapshot)
        self.state.ui_mode = mode
        self._note_message(snapshot, mode)

        keys, dispatched, action_desc, stack = self._decide(snapshot, mode)
        keys = self._no_progress_guard(snapshot, keys)

        trace = StepTrace(
            step=self._step,
            turn=self.state.blstats.turn,
            ui_mode=mode.value,
            dispatched_by=dispatched,
            action=action_desc,
            keys=keys.display(),
            strategy_stack=stack,
        )
        self.traces.append(trace)
        if self._trace_sink is not None:
            self._trace_sink.write(trace.to_json() + "\n")
        return keys

    def _decide(
        self, snapshot: ScreenSnapshot, mode: UiMode
    ) -> tuple[KeySequence, str, str, tuple[str, ...]]:
        if mode is UiMode.END_SCREEN:
            self.end_snapshots.append(snapshot)
            self.finished = True
            return (
                KeySequence((key_for(" "),)),
                "PromptHandler",
                "page end screen",
                (),
            )
        if mode is UiMode.MENU and self._expecting_menu:
            self._consume_inventory_menu(snapshot)
            return (
                KeySequence((key_for(0x1B),)),
                "PromptHandler",
                "read inventory",
                (),
            )
        if self._expecting_menu:
            # 'i' produced no menu: the pack is empty (or the mode drifted).
            self._expecting_menu = False
            if "not carrying anything" in snapshot.line(0).lower():
                self.state.inventory = []
        if mode is not UiMode.MAP:
            keys = handle_prompts(self.state)
            assert keys is not None
            return keys, "PromptHandler", f"dismiss {mode.value}", ()

        self._parse_map_screen(snapshot)

        if self._quitting or (
            self.config.score_cutoff is not None
            and self._last_score is not None
            and self._last_score >= self.config.score_cutoff
        ):
            # Score-maximizing early termination (optional behavior).
            self._quitting = True
            return (
                KeySequence(
                    tuple(key_for(c) for c in "#quit") + (key_for(0x0D), key_for("y"))
                ),
                "PromptHandler",
                "early quit at score cutoff",
                (),
            )

        if self._inventory_dirty and monster_distance(self.state) is None:
            self._expecting_menu = True
            self._inventory_dirty = False
            return (
                KeySequence((key_for("i"),)),
                "PromptHandler",
                "open inventory",
                (),
            )

        distance = monster_distance(self.state)
        if distance is not None and distance < self.config.view_distance:
            combat_action = combat_mod.combat_policy(self.state)
            action = combat_mod.to_abstract(self.state, combat_action)
            keys = self._compile(action)
            self._after_action(action)
            return keys, "CombatPolicy", repr(combat_action.kind.value), ()
        action = self.engine.tick(self.state)
        stack = self.engine.last_trace.stack
        keys = self._compile(action)
        self._after_action(action)
        return keys, f"FirstFitSkill({stack[0] if stack else '?'})", repr(action), stack

    def _compile(self, action: codec.AbstractAction) -> KeySequence:
        slots = {item.slot for item in self.state.inventory}
        try:
            return codec.compile_action(action, UiMode.MAP, slots or None)
        except codec.CompileError:
            # Stale slot or mode mismatch: fall back to a harmless search.
            return codec.compile_action(codec.Search(), UiMode.MAP)

    def _after_action(self, action: codec.AbstractAction) -> None:
        self._last_action = action
        if isinstance(action, codec.Pray):
            self._pending_prayer = True
        if isinstance(action, (codec.Eat, codec.Quaff, codec.Throw, codec.PickUp)):
            self._inventory_dirty = True

    # -- bookkeeping ----------------------------------------------------------

    def _note_message(self, snapshot: ScreenSnapshot, mode: UiMode) -> None:
        if mode is UiMode.END_SCREEN:
            return
        text = snapshot.line(0).replace("--More--", "").strip()
        if text and (not self.messages_log or self.messages_log[-1] != text):
            self.messages_log.append(text)
            kill = _KILL_MSG.search(text)
            if kill:
                self._record_kill(kill.group(1))
            lowered = text.lower()
            if any(cue in lowered for cue in _CORPSE_GONE):
                self._clear_corpse_here()
            pickup = _PICKUP_MSG.match(text)
            if pickup and mode is UiMode.MAP:
                self._merge_item(pickup.group(1), pickup.group(2))

    def _clear_corpse_here(self) -> None:
        level = self.state.current_level
        pos = self.state.hero_pos
        tile = level.tile(pos)
        tile.corpse_age = None
        tile.items_seen = [i for i in tile.items_seen if "corpse" not in i]

    def _record_kill(self, species: str) -> None:
        if Condition.HALLUCINATING in self.state.blstats.conditions:
            self._hallucinating_kills += 1
        direction = None
        if isinstance(self._last_action, (codec.MeleeAttack, codec.Move)):
            direction = self._last_action.direction
        if direction is not None:
            pos = (
                self.state.hero_pos[0] + direction.delta[0],
                self.state.hero_pos[1] + direction.delta[1],
            )
            record_corpse(self.state, pos, species)

    def _merge_item(self, slot: str, text: str) -> None:
        others = [item for item in self.state.inventory if item.slot != slot]
        others.append(InventoryItem(slot=slot, text=text))
        self.state.inventory = others

    def _consume_inventory_menu(self, snapshot: ScreenSnapshot) -> None:
        self._expecting_menu = False
        try:
            page = parse_menu(snapshot)
        except MenuParseError:
            return
        items = []
        for entry in page.entries:
            count = 1
            m = re.match(r"(\d+)\s", entry.text)
            if m:
                count = int(m.group(1))
            text = re.sub(r"^(an?|\d+)\s+", "", entry.text)
            items.append(
                InventoryItem(
                    slot=entry.selector,
                    text=text,
                    count=count,
                    worn="(being worn" in entry.text,
                    wielded="(weapon in hand" in entry.text
                    or "(wielded" in entry.text,
                )
            )
        self.state.inventory = items

    def _parse_map_screen(self, snapshot: ScreenSnapshot) -> None:
        try:
            blstats = parse_status_line(snapshot)
        except StatusParseError:
            self._parse_failures += 1
            return
        previous_level = self.state.blstats.dungeon_level
        turn_before = self.state.blstats.turn
        self.state.blstats = blstats
        if blstats.turn < turn_before:
            # Turns never run backwards inside an episode; keep the max.
            self.state.blstats.turn = turn_before
        elif blstats.turn > turn_before:
            self._turn_change_step = self._step
        if self._pending_prayer and blstats.turn > turn_before:
            self.state.last_prayer_turn = blstats.turn
            self._pending_prayer = False
        if blstats.dungeon_level != previous_level:
            branch = self._guess_branch(snapshot)
            self.state.switch_level(branch, blstats.dungeon_level)
            self.state.monsters = []
        parse_map(snapshot, self.state)
        self._max_depth = max(self._max_depth, blstats.dungeon_level)
        self._statuses |= blstats.conditions
        if blstats.score is not None:
            self._last_score = blstats.score
        if self._min_ac is None or blstats.armor_class < self._min_ac:
            self._min_ac = blstats.armor_class
        if self._max_ac is None or blstats.armor_class > self._max_ac:
            self._max_ac = blstats.armor_class

    def _guess_branch(self, snapshot: ScreenSnapshot) -> Branch:
        lowered = snapshot.line(0).lower()
        if "sokoban" in lowered:
            return Branch.SOKOBAN
        if "mine" in lowered:
            return Branch.MINES
        return Branch.UNKNOWN

    def _no_progress_guard(
        self, snapshot: ScreenSnapshot, keys: KeySequence
    ) -> KeySequence:
        fingerprint = (hash(snapshot.text()), bytes(keys))
        if fingerprint == self._repeat_key:
            self._repeats += 1
        else:
            self._repeat_key = fingerprint
            self._repeats = 0
        if self._repeats >= self.config.no_progress_limit:
            self._repeats = 0
            return KeySequence((key_for(0x1B), key_for("s")))
        # Multi-screen loops evade the identical-step check; a long stretch
        # of steps with a frozen game clock gets the same escape hatch.
        if (
            self.state.ui_mode is UiMode.MAP
            and self._step - self._turn_change_step > 12 * self.config.no_progress_limit
        ):
            self._turn_change_step = self._step
            return KeySequence((key_for(0x1B), key_for("s")))
        return keys

    # -- episode summary -------------------------------------------------------

    def note_final_snapshot(self, snapshot: ScreenSnapshot) -> None:
        if classify_screen(snapshot) is UiMode.END_SCREEN or not self.end_snapshots:
            self.end_snapshots.append(snapshot)

    def build_record(
        self,
        character: CharacterSpec,
        outcome_override: Outcome | None = None,
        wallclock: float = 0.0,
        seed: int | None = None,
    ) -> EpisodeRecord:
        turn = self.state.blstats.turn
        death_record = None
        if self.end_snapshots:
            death_record = parse_end_screen(
                self.end_snapshots, final_turn=turn, fallback_score=self._last_score
            )
        if death_record is not None:
            outcome = death_record.outcome
            score = death_record.final_score
            death = death_record.death
            cause = death_record.cause
        else:
            outcome = Outcome.TIME_LIMIT
            score = self._last_score or 0
            death = ""
            cause = None
        if outcome_override is not None:
            outcome = outcome_override
        events = detect_events(
            death, cause, self.messages_log, self._hallucinating_kills
        )
        ac_change = 0
        if self._min_ac is not None and self._max_ac is not None:
            ac_change = self._max_ac - self._min_ac
        return EpisodeRecord(
            character=character,
            score=max(score, 0),
            turns=turn,
            max_dungeon_level=self._max_depth,
            experience_level_at_end=self.state.blstats.experience_level,
            gold=self.state.blstats.gold,
            max_ac_change=ac_change,
            outcome=outcome,
            death=death,
            cause=cause,
            events=events,
            statuses_seen=set(self._statuses),
            wallclock=wallclock,
            seed=seed,
        )


def run_episode(
    env: EnvHandle,
    agent: Agent | None = None,
    config: ControllerConfig | None = None,
    trace_sink: IO[str] | None = None,
    seed: int | None = None,
) -> EpisodeRecord:
    """Drive one episode to its end screen or budget and summarize it."""
    config = config or ControllerConfig()
    if agent is None:
        agent = Agent(config=config)
    if trace_sink is not None:
        agent.set_trace_sink(trace_sink)
    start = time.monotonic()
    outcome_override: Outcome | None = None

    result = env.reset()
    steps = 0
    while True:
        if result.terminated:
            agent.note_final_snapshot(result.snapshot)
            break
        if steps >= config.max_steps:
            outcome_override = Outcome.TIME_LIMIT
            break
        if (
            config.episode_time_budget is not None
            and time.monotonic() - start > config.episode_time_budget
        ):
            outcome_override = Outcome.TIME_LIMIT
            break
        keys = agent.observe(result.snapshot)
        result = env.step_keys(keys)
        steps += 1

    return agent.build_record(
        character=env.character,
        outcome_override=outcome_override,
        wallclock=time.monotonic() - start,
        seed=seed,
    )
