import pytest

from nhbot.datafiles import scenario_text
from nhbot.envs.scenario import ScenarioError, parse_scenario
from nhbot.state.types import Branch

AT = chr(64)

MINIMAL = "\n".join([
    "name tiny",
    "monster d jackal hostile hp=5 damage=2",
    "level 1",
    "----",
    "|." + AT + "|",
    "----",
    "end",
])


def test_minimal_scenario_parses():
    sc = parse_scenario(MINIMAL)
    assert sc.name == "tiny"
    assert sc.monsters["d"].name == "jackal"
    assert sc.monsters["d"].hp == 5
    assert 1 in sc.levels


def test_unknown_directive_reports_line_number():
    text = "name x\nbogus directive\n" + MINIMAL
    with pytest.raises(ScenarioError) as excinfo:
        parse_scenario(text)
    assert excinfo.value.line_no == 2


def test_missing_end_reports_line():
    text = "level 1\n|." + AT + "|\n"
    with pytest.raises(ScenarioError):
        parse_scenario(text)


def test_requires_exactly_one_hero():
    with pytest.raises(ScenarioError):
        parse_scenario("level 1\n|..|\nend\n")
    two = MINIMAL.replace("|." + AT + "|", "|" + AT + AT + "|")
    with pytest.raises(ScenarioError):
        parse_scenario(two)


def test_spawn_must_reference_known_monster_and_level():
    text = MINIMAL + "\nspawn 1 z 1 1\n"
    with pytest.raises(ScenarioError):
        parse_scenario(text)
    text = MINIMAL + "\nspawn 9 d 1 1\n"
    with pytest.raises(ScenarioError):
        parse_scenario(text)


def test_branch_and_entry_message():
    text = MINIMAL + "\nbranch 1 Sokoban\nmessage-on-enter 1 Welcome to Sokoban!\n"
    sc = parse_scenario(text)
    assert sc.levels[1].branch is Branch.SOKOBAN
    assert sc.levels[1].entry_message == "Welcome to Sokoban!"


def test_oversized_grid_rejected():
    rows = ["level 1"] + ["." * 81] + ["end"]
    with pytest.raises(ScenarioError):
        parse_scenario("\n".join(rows))


def test_shipped_scenarios_all_parse():
    for name in ("three-level.scn", "corridor-jackal.scn", "hunger-clock.scn",
                 "interruption.scn", "sokoban-a.scn", "sokoban-b.scn",
                 "sokoban-c.scn"):
        sc = parse_scenario(scenario_text(name))
        assert sc.levels
