import pytest

from nhbot.actions.keys import KeySequence, UnknownKeyError, key_for, key_universe


def test_universe_has_exactly_113_keys():
    assert len(key_universe()) == 113


def test_no_duplicate_codes():
    codes = [k.code for k in key_universe()]
    assert len(set(codes)) == len(codes)


def test_contains_throw_and_escape():
    codes = {k.code for k in key_universe()}
    assert ord("t") in codes
    assert 0x1B in codes


def test_stable_ordering():
    assert [k.code for k in key_universe()] == [k.code for k in key_universe()]
    # compass keys come first, in hjkl-family order
    assert [k.char for k in key_universe()[:8]] == list("kljhunby")


def test_lookup_by_char_and_code():
    assert key_for("t").code == ord("t")
    assert key_for(0x1B).mnemonic == "escape"
    with pytest.raises(UnknownKeyError):
        key_for(0x00)


def test_sequence_must_be_non_empty():
    with pytest.raises(ValueError):
        KeySequence(())


def test_sequence_bytes_and_display():
    seq = KeySequence((key_for("t"), key_for("a"), key_for("h")))
    assert bytes(seq) == b"tah"
    assert seq.display() == "tah"
    assert len(seq) == 3
