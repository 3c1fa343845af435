import pytest

from nhbot.actions import codec
from nhbot.actions.codec import (
    Answer,
    CompileError,
    Direction,
    DismissMore,
    Eat,
    Engrave,
    GoDown,
    GoUp,
    Kick,
    MeleeAttack,
    MenuSelect,
    Move,
    Open,
    PickUp,
    Pray,
    Quaff,
    Search,
    Throw,
    Wait,
    Wear,
    Wield,
    ZapWand,
    compile_action,
    decompile,
)
from nhbot.actions.keys import key_universe
from nhbot.state.types import UiMode


def test_throw_compiles_to_three_keys():
    seq = compile_action(Throw(slot="a", direction=Direction.W), inventory_slots="ab")
    assert bytes(seq) == b"tah"
    assert len(seq) == 3


def test_move_north_is_single_key():
    assert bytes(compile_action(Move(Direction.N))) == b"k"


def test_engrave_elbereth_sequence():
    seq = compile_action(Engrave("Elbereth"))
    assert bytes(seq) == b"E-Elbereth\r"


def test_direction_convention_is_hjklyubn():
    got = {d.name: d.key for d in Direction}
    assert got == {
        "N": "k", "S": "j", "E": "l", "W": "h",
        "NE": "u", "SE": "n", "SW": "b", "NW": "y",
    }


def test_mode_mismatch_rejected():
    with pytest.raises(CompileError):
        compile_action(MenuSelect("a"), UiMode.MAP)
    with pytest.raises(CompileError):
        compile_action(Move(Direction.N), UiMode.MENU)
    with pytest.raises(CompileError):
        compile_action(DismissMore(), UiMode.MAP)


def test_unknown_slot_rejected():
    with pytest.raises(CompileError):
        compile_action(Quaff(slot="z"), inventory_slots="abc")
    with pytest.raises(CompileError):
        compile_action(Throw(slot="?", direction=Direction.N))


ALL_ACTIONS = [
    (Move(Direction.N), UiMode.MAP, "move"),
    (MeleeAttack(Direction.SW), UiMode.MAP, "attack"),
    (Throw(slot="a", direction=Direction.W), UiMode.MAP, "throw"),
    (ZapWand(slot="b", direction=Direction.E), UiMode.MAP, "zap"),
    (Eat(slot=None), UiMode.MAP, "eat"),
    (Eat(slot="a"), UiMode.MAP, "eat"),
    (Pray(), UiMode.MAP, "pray"),
    (Engrave("Elbereth"), UiMode.MAP, "engrave"),
    (Search(), UiMode.MAP, "search"),
    (Kick(Direction.N), UiMode.MAP, "kick"),
    (Open(Direction.E), UiMode.MAP, "open"),
    (codec.Close(Direction.E), UiMode.MAP, "close"),
    (GoUp(), UiMode.MAP, "go up"),
    (GoDown(), UiMode.MAP, "go down"),
    (PickUp(), UiMode.MAP, "pick up"),
    (Wait(), UiMode.MAP, "wait"),
    (Quaff(slot="c"), UiMode.MAP, "quaff"),
    (Wear(slot="d"), UiMode.MAP, "wear"),
    (Wield(slot="a"), UiMode.MAP, "wield"),
    (MenuSelect("ab"), UiMode.MENU, "select"),
    (DismissMore(), UiMode.MORE_PROMPT, "dismiss"),
    (Answer("yes"), UiMode.YES_NO_PROMPT, "answer"),
    (Answer("no"), UiMode.YES_NO_PROMPT, "answer"),
]


@pytest.mark.parametrize("action,mode,keyword", ALL_ACTIONS)
def test_compiled_keys_stay_in_universe(action, mode, keyword):
    universe = {k.code for k in key_universe()}
    seq = compile_action(action, mode, inventory_slots="abcd")
    assert seq.keys, "compiled sequences are non-empty"
    assert all(k.code in universe for k in seq.keys)


@pytest.mark.parametrize("action,mode,keyword", ALL_ACTIONS)
def test_decompile_mentions_kind(action, mode, keyword):
    seq = compile_action(action, mode, inventory_slots="abcd")
    assert keyword in decompile(seq)


def test_decompile_examples():
    assert decompile(compile_action(Throw("a", Direction.W),
                                    inventory_slots="a")) == "throw slot a west"
    assert decompile(compile_action(Move(Direction.N))) == "move north"
    esc = compile_action(Answer(""), UiMode.TEXT_ENTRY)
    assert decompile(esc) == "cancel"


def test_compile_is_deterministic():
    a = compile_action(Throw("a", Direction.NE), inventory_slots="a")
    b = compile_action(Throw("a", Direction.NE), inventory_slots="a")
    assert bytes(a) == bytes(b)


def test_answer_direction_and_text():
    seq = compile_action(Answer(Direction.SE), UiMode.DIRECTION_PROMPT)
    assert bytes(seq) == b"n"
    seq = compile_action(Answer("Elbereth"), UiMode.TEXT_ENTRY)
    assert bytes(seq) == b"Elbereth\r"
