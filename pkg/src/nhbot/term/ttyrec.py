"""ttyrec container I/O.

Wire format, per frame: three little-endian u32 fields (seconds,
microseconds, payload length) followed by that many raw bytes.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import BinaryIO, Iterable, Iterator

_HEADER = struct.Struct("<III")


class TtyrecError(ValueError):
    """Malformed ttyrec data; ``offset`` is the byte position of the record."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class TtyrecFrame:
    sec: int
    usec: int
    payload: bytes

    def __post_init__(self) -> None:
        if not (0 <= self.sec < 2**32):
            raise ValueError(f"sec {self.sec} out of u32 range")
        if not (0 <= self.usec < 1_000_000):
            raise ValueError(f"usec {self.usec} out of range")

    @property
    def timestamp(self) -> float:
        return self.sec + self.usec * 1e-6


def read_ttyrec(stream: BinaryIO) -> Iterator[TtyrecFrame]:
    """Yield frames in file order; raise TtyrecError on truncation."""
    offset = 0
    while True:
        header = stream.read(_HEADER.size)
        if not header:
            return
        if len(header) < _HEADER.size:
            raise TtyrecError("truncated frame header", offset)
        sec, usec, length = _HEADER.unpack(header)
        if usec >= 1_000_000:
            raise TtyrecError(f"invalid usec {usec}", offset)
        payload = stream.read(length)
        if len(payload) < length:
            raise TtyrecError(
                f"truncated payload ({len(payload)} of {length} bytes)", offset
            )
        yield TtyrecFrame(sec=sec, usec=usec, payload=payload)
        offset += _HEADER.size + length


def write_ttyrec(frames: Iterable[TtyrecFrame], sink: BinaryIO) -> int:
    """Write frames bit-exactly; return total bytes written."""
    written = 0
    for frame in frames:
        sink.write(_HEADER.pack(frame.sec, frame.usec, len(frame.payload)))
        sink.write(frame.payload)
        written += _HEADER.size + len(frame.payload)
    return written
