from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import map_screen, snapshot_from_lines
from nhbot.state.classify import classify_screen
from nhbot.state.types import UiMode
from nhbot.term.screen import from_grid


def test_more_prompt_detected():
    snap = snapshot_from_lines(["You kill the jackal!  --More--", "", "|.@.|"])
    assert classify_screen(snap) is UiMode.MORE_PROMPT


def test_menu_detected_by_end_marker():
    snap = snapshot_from_lines(["", "  a - a blessed +1 quarterstaff", "  (end)"])
    assert classify_screen(snap) is UiMode.MENU


def test_menu_detected_by_page_marker():
    snap = snapshot_from_lines(["", " a - an apple", " (2 of 3)"])
    assert classify_screen(snap) is UiMode.MENU


def test_yes_no_prompt():
    snap = snapshot_from_lines(["Really attack the little dog? [yn] (n)"])
    assert classify_screen(snap) is UiMode.YES_NO_PROMPT


def test_direction_prompt():
    snap = snapshot_from_lines(["In what direction?"])
    assert classify_screen(snap) is UiMode.DIRECTION_PROMPT


def test_text_entry_prompt():
    snap = snapshot_from_lines(["What do you want to write in the dust here?"])
    assert classify_screen(snap) is UiMode.TEXT_ENTRY


def test_item_letter_prompt_is_text_entry():
    snap = snapshot_from_lines(["What do you want to eat? [c or ?*]"])
    assert classify_screen(snap) is UiMode.TEXT_ENTRY


def test_end_screen_by_points_sentence():
    snap = snapshot_from_lines(
        ["", "Goodbye agent the Stripling...",
         "You died in The Dungeons of Doom on dungeon level 2 with 230 points,"]
    )
    assert classify_screen(snap) is UiMode.END_SCREEN


def test_end_screen_by_final_attributes():
    snap = snapshot_from_lines(["", "        Final Attributes:"])
    assert classify_screen(snap) is UiMode.END_SCREEN


def test_plain_dungeon_screen_is_map():
    snap = map_screen(["-----", "|...|", "|.@.|", "-----"])
    assert classify_screen(snap) is UiMode.MAP


def test_more_beats_end_screen():
    snap = snapshot_from_lines(["You die...  --More--", "", "|.@.|"])
    assert classify_screen(snap) is UiMode.MORE_PROMPT


@settings(max_examples=200, deadline=None)
@given(
    st.lists(
        st.text(
            alphabet=st.characters(min_codepoint=0x20, max_codepoint=0x7E),
            max_size=80,
        ),
        max_size=24,
    ),
    st.integers(min_value=0, max_value=23),
    st.integers(min_value=0, max_value=79),
)
def test_classification_total_and_deterministic(lines, cur_r, cur_c):
    rows = [line[:80].ljust(80) for line in lines]
    while len(rows) < 24:
        rows.append(" " * 80)
    snap = from_grid(rows, cursor=(cur_r, cur_c))
    first = classify_screen(snap)
    assert classify_screen(snap) is first
    assert isinstance(first, UiMode)
