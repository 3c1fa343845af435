import io
import struct

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nhbot.term.ttyrec import TtyrecError, TtyrecFrame, read_ttyrec, write_ttyrec

frames_strategy = st.lists(
    st.builds(
        TtyrecFrame,
        sec=st.integers(min_value=0, max_value=2**32 - 1),
        usec=st.integers(min_value=0, max_value=999_999),
        payload=st.binary(max_size=200),
    ),
    max_size=20,
)


def test_empty_stream_yields_nothing():
    assert list(read_ttyrec(io.BytesIO(b""))) == []


def test_zero_frames_writes_zero_bytes():
    sink = io.BytesIO()
    assert write_ttyrec([], sink) == 0
    assert sink.getvalue() == b""


def test_single_frame_is_header_plus_payload():
    sink = io.BytesIO()
    n = write_ttyrec([TtyrecFrame(1, 2, b"abc")], sink)
    assert n == 15
    assert sink.getvalue() == struct.pack("<III", 1, 2, 3) + b"abc"


@given(frames_strategy)
def test_round_trip_is_identity(frames):
    sink = io.BytesIO()
    write_ttyrec(frames, sink)
    assert list(read_ttyrec(io.BytesIO(sink.getvalue()))) == frames


@settings(max_examples=30)
@given(frames_strategy.filter(lambda f: len(f) > 0))
def test_truncation_always_detected(frames):
    sink = io.BytesIO()
    total = write_ttyrec(frames, sink)
    data = sink.getvalue()
    # Cutting anywhere strictly inside the last record must raise.
    last_len = 12 + len(frames[-1].payload)
    cut = total - last_len + max(1, last_len // 2)
    if cut == total:
        cut -= 1
    stream = io.BytesIO(data[:cut])
    with pytest.raises(TtyrecError):
        list(read_ttyrec(stream))


def test_truncated_payload_reports_record_offset():
    sink = io.BytesIO()
    write_ttyrec([TtyrecFrame(0, 0, b"xy"), TtyrecFrame(5, 5, b"abcdef")], sink)
    data = sink.getvalue()
    with pytest.raises(TtyrecError) as excinfo:
        list(read_ttyrec(io.BytesIO(data[:-3])))
    assert excinfo.value.offset == 14  # second record starts after 12 + 2

def test_invalid_usec_rejected_on_read():
    raw = struct.pack("<III", 0, 1_000_000, 0)
    with pytest.raises(TtyrecError):
        list(read_ttyrec(io.BytesIO(raw)))


def test_frame_validation():
    with pytest.raises(ValueError):
        TtyrecFrame(sec=-1, usec=0, payload=b"")
    with pytest.raises(ValueError):
        TtyrecFrame(sec=0, usec=1_000_000, payload=b"")
