from conftest import simple_state
from nhbot.state.types import Feature
from nhbot.strategies.explore import explore_next_goal

AT = chr(64)


def test_frontier_is_first_priority():
    # right room edge opens into darkness: the open cell is the frontier
    rows = [
        "-----",
        "|..." ,
        "|." + AT + ".",
        "-----",
    ]
    state = simple_state(rows, hero=(2, 2))
    goal = explore_next_goal(state)
    assert goal is not None
    assert goal.purpose == "frontier"


def test_item_pile_when_no_frontier():
    rows = [
        "------",
        "|.!..|",
        "|." + AT + "..|",
        "------",
    ]
    state = simple_state(rows, hero=(2, 2))
    goal = explore_next_goal(state)
    assert goal is not None
    assert goal.purpose == "pile"
    assert goal.pos == (1, 2)


def test_stairs_after_level_mapped():
    rows = [
        "------",
        "|....|",
        "|." + AT + ".>|",
        "------",
    ]
    state = simple_state(rows, hero=(2, 2))
    # mark everything stepped so no frontier or pile remains
    for r in range(1, 3):
        for c in range(1, 5):
            state.current_level.stepped.add((r, c))
    goal = explore_next_goal(state)
    assert goal is not None
    assert goal.purpose == "descend"
    assert state.current_level.tile(goal.pos).feature is Feature.STAIRS_DOWN


def test_search_spots_when_nothing_else():
    rows = [
        "-----",
        "|...|",
        "|." + AT + ".|",
        "-----",
    ]
    state = simple_state(rows, hero=(2, 2))
    for r in range(1, 3):
        for c in range(1, 4):
            state.current_level.stepped.add((r, c))
    goal = explore_next_goal(state)
    assert goal is not None
    assert goal.purpose == "search"


def test_exhausted_level_returns_none():
    rows = [
        "-----",
        "|...|",
        "|." + AT + ".|",
        "-----",
    ]
    state = simple_state(rows, hero=(2, 2))
    level = state.current_level
    for r in range(1, 3):
        for c in range(1, 4):
            level.stepped.add((r, c))
            level.tiles[r][c].search_count = 10
    assert explore_next_goal(state) is None


def test_search_prefers_low_count_dead_ends():
    rows = [
        "-------",
        "|.....|",
        "|" + AT + "....|",
        "-------",
    ]
    state = simple_state(rows, hero=(2, 1))
    level = state.current_level
    for r in range(1, 3):
        for c in range(1, 6):
            level.stepped.add((r, c))
    first = explore_next_goal(state)
    assert first is not None and first.purpose == "search"
    level.tile(first.pos).search_count = 10
    second = explore_next_goal(state)
    assert second is not None and second.pos != first.pos
