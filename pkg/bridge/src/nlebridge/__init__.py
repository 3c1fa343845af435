"""Bridge between NLE-style tty observations and the nhbot agent."""

from .protocol import BridgeMessage, Direction, ProtocolError, decode, encode
from .serve import Connection, ServeStats, serve
from .agent_client import AgentStats, nhbot_policy, run_agent, snapshot_from_message

__all__ = [
    "BridgeMessage",
    "Direction",
    "ProtocolError",
    "decode",
    "encode",
    "Connection",
    "ServeStats",
    "serve",
    "AgentStats",
    "nhbot_policy",
    "run_agent",
    "snapshot_from_message",
]
