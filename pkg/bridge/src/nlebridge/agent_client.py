"""Agent-side bridge loop.

Turns incoming observations into ScreenSnapshots via the grid entry
point and asks a policy for the keystrokes to send back. The stock
policy wraps the nhbot controller so the full symbolic agent can be
scored by any harness speaking the wire protocol.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from nhbot.term.screen import COLS, ROWS, ScreenSnapshot, from_grid

from .protocol import BridgeMessage, Direction
from .serve import Connection

# A policy sees the snapshot and the done flag; it returns key bytes
# (empty acknowledges a finished episode).
Policy = Callable[[ScreenSnapshot, bool], "list[int]"]


def snapshot_from_message(message: BridgeMessage) -> ScreenSnapshot:
    rows = [
        message.tty_chars[r * COLS : (r + 1) * COLS] for r in range(ROWS)
    ]
    colors = [
        message.tty_colors[r * COLS : (r + 1) * COLS] for r in range(ROWS)
    ]
    return from_grid(rows, colors, message.cursor)


@dataclass
class AgentStats:
    observations: int = 0
    keys_sent: int = 0


def run_agent(connection: Connection, policy: Policy) -> AgentStats:
    """Answer every observation until the peer disconnects."""
    stats = AgentStats()
    while True:
        message = connection.receive()
        if message is None:
            return stats
        if message.direction is not Direction.OBS_TO_AGENT:
            continue  # ignore stray traffic; liveness comes from replies
        stats.observations += 1
        snapshot = snapshot_from_message(message)
        keys = [] if message.done else list(policy(snapshot, message.done))
        connection.send(BridgeMessage.reply(keys))
        stats.keys_sent += len(keys)
        if message.done:
            return stats


def nhbot_policy() -> Policy:
    """The symbolic agent as a bridge policy (one controller per process)."""
    from nhbot.controller import Agent, ControllerConfig

    agent = Agent(config=ControllerConfig())

    def policy(snapshot: ScreenSnapshot, done: bool) -> list[int]:
        if done:
            return []
        return [k.code for k in agent.observe(snapshot)]

    return policy
