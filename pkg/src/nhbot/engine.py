"""Interruptible strategy engine with dynamic tree expansion.

Strategies are resumable bodies (generator functions) stacked in frames.
Each tick selects the highest-priority active strategy; the running top
frame is preempted only if it names the winner in ``interruptible_by``,
and only between emitted actions. A body may yield :class:`Subtree` to
push a dynamically built child strategy (the recursion the tree allows),
and finishing bodies pop back to their parent's resume point. A wait
fallback keeps ``tick`` total.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Generator, Iterable, Union

from .actions.codec import AbstractAction, Wait
from .state.types import GameState

DEFAULT_STACK_LIMIT = 32
_FALLBACK_PRIORITY = -(10**9)


class EngineError(RuntimeError):
    pass


class RegistrationError(ValueError):
    pass


@dataclass
class StateRef:
    """Mutable handle through which a running body sees the latest state."""

    state: GameState


@dataclass(frozen=True)
class Subtree:
    """Yielded by a body to expand the tree with a child strategy."""

    strategy: "Strategy"


StepOutput = Union[AbstractAction, Subtree]
Body = Callable[[StateRef], Generator[StepOutput, None, None]]


@dataclass(frozen=True)
class Strategy:
    id: str
    priority: int
    activation: Callable[[GameState], bool]
    body: Body
    interruptible_by: frozenset[str] = frozenset()

    def interruptible(self, other_id: str) -> bool:
        return other_id in self.interruptible_by


def _wait_body(ref: StateRef) -> Generator[StepOutput, None, None]:
    while True:
        yield Wait()


def wait_fallback() -> Strategy:
    return Strategy(
        id="wait",
        priority=_FALLBACK_PRIORITY,
        activation=lambda state: True,
        body=_wait_body,
    )


@dataclass
class _Frame:
    strategy: Strategy
    gen: Generator[StepOutput, None, None]


@dataclass
class TickTrace:
    """What one tick did: final stack (base first) and the emitted action."""

    stack: tuple[str, ...] = ()
    action: AbstractAction | None = None
    preempted: str | None = None  # strategy that was interrupted this tick


class BehaviorEngine:
    """One engine per episode; deterministic given the state sequence."""

    def __init__(self, max_stack_depth: int = DEFAULT_STACK_LIMIT) -> None:
        self._strategies: dict[str, Strategy] = {}
        self._stack: list[_Frame] = []
        self._ref: StateRef | None = None
        self.max_stack_depth = max_stack_depth
        self.last_trace = TickTrace()
        self.register(wait_fallback())

    def register(self, strategy: Strategy) -> "BehaviorEngine":
        if strategy.id in self._strategies:
            raise RegistrationError(f"duplicate strategy id {strategy.id!r}")
        self._strategies[strategy.id] = strategy
        return self

    def register_all(self, strategies: Iterable[Strategy]) -> "BehaviorEngine":
        for s in strategies:
            self.register(s)
        return self

    @property
    def stack_ids(self) -> tuple[str, ...]:
        return tuple(f.strategy.id for f in self._stack)

    def select(self, state: GameState) -> str:
        """Highest-priority active strategy; ties break on lexicographic id."""
        best: Strategy | None = None
        for s in self._strategies.values():
            if not s.activation(state):
                continue
            if (
                best is None
                or s.priority > best.priority
                or (s.priority == best.priority and s.id < best.id)
            ):
                best = s
        assert best is not None  # the wait fallback is always active
        return best.id

    def reset(self) -> None:
        self._stack.clear()
        self._ref = None

    def tick(self, state: GameState) -> AbstractAction:
        """Advance one step and return the next action."""
        if self._ref is None:
            self._ref = StateRef(state)
        else:
            self._ref.state = state
        trace = TickTrace()

        selected = self.select(state)
        if not self._stack:
            self._push(self._strategies[selected])
        else:
            top = self._stack[-1].strategy
            if selected != top.id and top.interruptible(selected):
                trace.preempted = top.id
                self._push(self._strategies[selected])

        # Run until some frame emits an action. The loop is bounded: each
        # iteration either pushes (limited by depth) or pops a frame.
        for _ in range(4 * self.max_stack_depth + 8):
            if not self._stack:
                self._push(self._strategies[self.select(self._ref.state)])
            frame = self._stack[-1]
            try:
                out = next(frame.gen)
            except StopIteration:
                self._stack.pop()
                continue
            if isinstance(out, Subtree):
                self._push(out.strategy)
                continue
            trace.stack = self.stack_ids
            trace.action = out
            self.last_trace = trace
            return out
        raise EngineError("no strategy produced an action in bounded steps")

    def _push(self, strategy: Strategy) -> None:
        if len(self._stack) >= self.max_stack_depth:
            raise EngineError(
                f"strategy stack exceeded depth {self.max_stack_depth}"
                " (runaway recursion?)"
            )
        assert self._ref is not None
        self._stack.append(_Frame(strategy=strategy, gen=strategy.body(self._ref)))
