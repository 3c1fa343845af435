"""Wire protocol: line-delimited JSON, one message per line.

Observations travel env->agent with the two 24x80 grids base64-encoded
(1,920 bytes each) plus the cursor and done flag; keystroke replies
travel agent->env as a list of key byte values. Exactly one direction's
payload is populated per message.
"""

from __future__ import annotations

import base64
import enum
import json
from dataclasses import dataclass, field

ROWS = 24
COLS = 80
GRID_BYTES = ROWS * COLS


class Direction(enum.Enum):
    OBS_TO_AGENT = "ObsToAgent"
    KEYS_TO_ENV = "KeysToEnv"


class ProtocolError(ValueError):
    pass


@dataclass(frozen=True)
class BridgeMessage:
    direction: Direction
    tty_chars: bytes = b""
    tty_colors: bytes = b""
    cursor: tuple[int, int] = (0, 0)
    done: bool = False
    keys: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.direction is Direction.OBS_TO_AGENT:
            if len(self.tty_chars) != GRID_BYTES or len(self.tty_colors) != GRID_BYTES:
                raise ProtocolError(
                    f"observation grids must be {GRID_BYTES} bytes"
                )
            if self.keys:
                raise ProtocolError("observation messages carry no keys")
        else:
            if self.tty_chars or self.tty_colors:
                raise ProtocolError("key messages carry no grids")
            if not all(0 <= k < 256 for k in self.keys):
                raise ProtocolError("keys must be byte values")

    @staticmethod
    def observation(
        tty_chars: bytes,
        tty_colors: bytes,
        cursor: tuple[int, int],
        done: bool = False,
    ) -> "BridgeMessage":
        return BridgeMessage(
            direction=Direction.OBS_TO_AGENT,
            tty_chars=tty_chars,
            tty_colors=tty_colors,
            cursor=(int(cursor[0]), int(cursor[1])),
            done=done,
        )

    @staticmethod
    def reply(keys) -> "BridgeMessage":
        return BridgeMessage(direction=Direction.KEYS_TO_ENV, keys=tuple(keys))


def encode(message: BridgeMessage) -> str:
    """One JSON line (newline included)."""
    if message.direction is Direction.OBS_TO_AGENT:
        body = {
            "direction": message.direction.value,
            "tty_chars": base64.b64encode(message.tty_chars).decode("ascii"),
            "tty_colors": base64.b64encode(message.tty_colors).decode("ascii"),
            "cursor": [message.cursor[0], message.cursor[1]],
            "done": message.done,
        }
    else:
        body = {
            "direction": message.direction.value,
            "keys": list(message.keys),
            "done": message.done,
        }
    return json.dumps(body, sort_keys=True) + "\n"


def decode(line: str) -> BridgeMessage:
    """Parse one line; malformed input raises ProtocolError."""
    try:
        body = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ProtocolError(f"not a JSON line: {exc}") from None
    if not isinstance(body, dict):
        raise ProtocolError("message must be a JSON object")
    try:
        direction = Direction(body["direction"])
    except (KeyError, ValueError):
        raise ProtocolError("missing or unknown direction") from None
    try:
        if direction is Direction.OBS_TO_AGENT:
            chars = base64.b64decode(body["tty_chars"], validate=True)
            colors = base64.b64decode(body["tty_colors"], validate=True)
            row, col = body["cursor"]
            return BridgeMessage.observation(
                chars, colors, (int(row), int(col)), bool(body.get("done", False))
            )
        keys = tuple(int(k) for k in body.get("keys", []))
        return BridgeMessage(
            direction=Direction.KEYS_TO_ENV,
            keys=keys,
            done=bool(body.get("done", False)),
        )
    except ProtocolError:
        raise
    except Exception as exc:  # malformed fields of any shape
        raise ProtocolError(f"malformed message fields: {exc}") from None
