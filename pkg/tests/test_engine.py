import pytest

from nhbot.actions.codec import Move, Direction, Search, Wait
from nhbot.engine import (
    BehaviorEngine,
    EngineError,
    RegistrationError,
    StateRef,
    Strategy,
    Subtree,
)
from nhbot.state.types import GameState


def make_state(**flags) -> GameState:
    state = GameState.new()
    for key, value in flags.items():
        setattr(state, key, value)
    return state


def flag(name):
    return lambda state: bool(getattr(state, name, False))


def repeating(action):
    def body(ref: StateRef):
        while True:
            yield action

    return body


def strategy(sid, priority, activation, body=None, interruptible_by=()):
    return Strategy(
        id=sid,
        priority=priority,
        activation=activation,
        body=body or repeating(Search()),
        interruptible_by=frozenset(interruptible_by),
    )


def test_register_then_selectable():
    engine = BehaviorEngine()
    engine.register(strategy("exploration", 1, lambda s: True))
    engine.register(strategy("combat", 2, flag("fight")))
    assert engine.select(make_state()) == "exploration"
    assert engine.select(make_state(fight=True)) == "combat"


def test_duplicate_id_rejected():
    engine = BehaviorEngine()
    engine.register(strategy("x", 1, lambda s: True))
    with pytest.raises(RegistrationError):
        engine.register(strategy("x", 5, lambda s: True))


def test_priority_tie_breaks_on_id():
    engine = BehaviorEngine()
    engine.register(strategy("beta", 3, lambda s: True))
    engine.register(strategy("alpha", 3, lambda s: True))
    assert engine.select(make_state()) == "alpha"


def test_fallback_wait_always_selectable():
    engine = BehaviorEngine()
    assert engine.select(make_state()) == "wait"
    assert isinstance(engine.tick(make_state()), Wait)


def test_interruption_chain_ordering():
    # The §-chain: healing preempts combat preempts exploration.
    engine = BehaviorEngine()
    engine.register(
        strategy("exploration", 1, lambda s: True,
                 interruptible_by=("combat", "healing"))
    )
    engine.register(
        strategy("combat", 2, flag("fight"), interruptible_by=("healing",))
    )
    engine.register(strategy("healing", 3, flag("hurt")))

    assert engine.select(make_state(fight=True, hurt=True)) == "healing"
    assert engine.select(make_state(fight=True)) == "combat"
    assert engine.select(make_state()) == "exploration"


def test_tick_preempts_only_when_interruptible():
    engine = BehaviorEngine()
    engine.register(
        strategy("exploration", 1, lambda s: True, interruptible_by=("combat",))
    )
    engine.register(strategy("stubborn", 2, flag("stub")))
    engine.register(strategy("combat", 3, flag("fight")))

    engine.tick(make_state())
    assert engine.stack_ids == ("exploration",)
    # stubborn is not in exploration's interrupt set: no preemption mid-body
    engine.tick(make_state(stub=True))
    assert engine.stack_ids == ("exploration",)
    # combat is: it pushes on top
    engine.tick(make_state(stub=True, fight=True))
    assert engine.stack_ids == ("exploration", "combat")


def test_subtree_push_and_resume():
    events = []

    def parent_body(ref):
        events.append("parent-start")
        yield Subtree(strategy("child", 0, lambda s: True, body=child_body))
        events.append("parent-resumed")
        yield Move(Direction.N)

    def child_body(ref):
        events.append("child")
        yield Search()
        return

    engine = BehaviorEngine()
    engine.register(strategy("parent", 5, lambda s: True, body=parent_body))
    state = make_state()
    first = engine.tick(state)
    assert isinstance(first, Search)
    assert engine.stack_ids == ("parent", "child")
    second = engine.tick(state)
    assert isinstance(second, Move)
    assert events == ["parent-start", "child", "parent-resumed"]
    assert engine.stack_ids == ("parent",)


def test_finished_strategy_pops_and_reselects():
    def one_shot(ref):
        yield Search()

    engine = BehaviorEngine()
    engine.register(strategy("brief", 5, flag("brief"), body=one_shot))
    state = make_state(brief=True)
    assert isinstance(engine.tick(state), Search)
    # brief's body is exhausted; next tick pops it and falls through to wait
    calm = make_state()
    assert isinstance(engine.tick(calm), Wait)


def test_stack_depth_limit_raises():
    def recursive(ref):
        while True:
            yield Subtree(
                Strategy(
                    id="rec-child",
                    priority=0,
                    activation=lambda s: True,
                    body=recursive,
                )
            )

    engine = BehaviorEngine(max_stack_depth=8)
    engine.register(strategy("rec", 5, lambda s: True, body=recursive))
    with pytest.raises(EngineError):
        engine.tick(make_state())


def test_determinism_over_state_sequence():
    def build():
        engine = BehaviorEngine()
        engine.register(
            strategy("exploration", 1, lambda s: True,
                     interruptible_by=("combat",),
                     body=repeating(Move(Direction.E)))
        )
        engine.register(strategy("combat", 2, flag("fight")))
        return engine

    states = [make_state(fight=(i % 3 == 0)) for i in range(20)]
    run1 = [type(build_engine.tick(s)).__name__ for build_engine in [build()] for s in states]
    run2 = [type(build_engine.tick(s)).__name__ for build_engine in [build()] for s in states]
    assert run1 == run2


def test_trace_records_stack_and_action():
    engine = BehaviorEngine()
    engine.register(strategy("solo", 5, lambda s: True))
    action = engine.tick(make_state())
    assert engine.last_trace.stack == ("solo",)
    assert engine.last_trace.action is action
