"""Environment-side bridge loop.

Wraps a Gym-style environment whose observations carry ``tty_chars``,
``tty_colors`` and ``tty_cursor``. Each step sends the observation over
the wire and waits (bounded) for a keystroke reply; multi-key intents
are fed to the environment one key per step, matching single-keystroke
action spaces. Protocol violations or reply timeouts abort the episode
with a diagnostic and reset the environment.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import IO, Protocol

from .protocol import BridgeMessage, Direction, ProtocolError, decode, encode

logger = logging.getLogger(__name__)

DEFAULT_REPLY_TIMEOUT = 30.0


class GymLikeEnv(Protocol):
    def reset(self): ...

    def step(self, action): ...


@dataclass
class Connection:
    """A line-oriented duplex channel."""

    reader: IO[str]
    writer: IO[str]

    def send(self, message: BridgeMessage) -> None:
        self.writer.write(encode(message))
        self.writer.flush()

    def receive(self) -> BridgeMessage | None:
        """Next message, None at EOF. Timeouts surface as TimeoutError."""
        line = self.reader.readline()
        if not line:
            return None
        return decode(line)


class ReplyTimeout(RuntimeError):
    pass


def _grids(obs) -> tuple[bytes, bytes, tuple[int, int]]:
    chars = obs["tty_chars"]
    colors = obs["tty_colors"]
    cursor = obs["tty_cursor"]

    def flatten(grid) -> bytes:
        if isinstance(grid, (bytes, bytearray)):
            return bytes(grid)
        out = bytearray()
        for row in grid:
            if isinstance(row, (bytes, bytearray)):
                out += row
            else:
                out += bytes(int(v) & 0xFF for v in row)
        return bytes(out)

    return flatten(chars), flatten(colors), (int(cursor[0]), int(cursor[1]))


def _action_index(env: GymLikeEnv, key: int):
    """Map a key byte to the env's action. Envs exposing ``actions``
    (a sequence of key byte values) take indices; others take raw bytes."""
    actions = getattr(env, "actions", None)
    if actions is None:
        return key
    try:
        return list(actions).index(key)
    except ValueError:
        raise ProtocolError(f"key {key} is not in the env action space") from None


@dataclass
class ServeStats:
    episodes: int = 0
    steps: int = 0
    aborts: int = 0


def serve(
    env: GymLikeEnv,
    connection: Connection,
    max_episodes: int | None = None,
    reply_timeout: float = DEFAULT_REPLY_TIMEOUT,
) -> ServeStats:
    """Run episodes over the connection until shutdown.

    Returns aggregate stats once the peer disconnects or ``max_episodes``
    episodes finish. ``reply_timeout`` is enforced by the connection's
    underlying channel (socket timeout); a fired timeout aborts the
    episode, not the server.
    """
    del reply_timeout  # enforced by the channel; kept in the signature
    stats = ServeStats()
    while max_episodes is None or stats.episodes < max_episodes:
        obs = env.reset()
        done = False
        aborted = False
        while True:
            chars, colors, cursor = _grids(obs)
            connection.send(
                BridgeMessage.observation(chars, colors, cursor, done=done)
            )
            try:
                reply = connection.receive()
            except (ProtocolError, TimeoutError, OSError) as exc:
                logger.warning("episode aborted: %s", exc)
                stats.aborts += 1
                aborted = True
                break
            if reply is None:
                logger.info("peer disconnected")
                stats.episodes += 1
                return stats
            if reply.direction is not Direction.KEYS_TO_ENV:
                logger.warning("episode aborted: expected a key reply")
                stats.aborts += 1
                aborted = True
                break
            if done:
                break  # final ack for a finished episode (keys ignored)
            if not reply.keys:
                # An empty reply outside done is a no-op request; resend.
                continue
            for key in reply.keys:
                try:
                    action = _action_index(env, key)
                except ProtocolError as exc:
                    logger.warning("episode aborted: %s", exc)
                    stats.aborts += 1
                    aborted = True
                    break
                obs, _reward, done, _info = env.step(action)
                stats.steps += 1
                if done:
                    break
            if aborted:
                break
        stats.episodes += 1
        if aborted and max_episodes is None:
            continue  # fresh episode after an abort
    return stats
