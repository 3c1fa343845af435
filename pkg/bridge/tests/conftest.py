from __future__ import annotations

import json
import os
import socket
import threading

import pytest

from nlebridge.serve import Connection

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


@pytest.fixture(scope="session")
def recorded_observations():
    with open(os.path.join(FIXTURES, "nle_observations.json")) as f:
        return json.load(f)


class FakeNleEnv:
    """Gym-shaped env replaying recorded observations, one per step.

    Mirrors the action-space convention of single-keystroke envs: the
    ``actions`` attribute maps indices to key byte values and ``step``
    takes an index.
    """

    def __init__(self, observations, actions=None, done_at_end=True):
        self.observations = observations
        self.actions = actions if actions is not None else list(range(256))
        self.done_at_end = done_at_end
        self.steps_taken: list[int] = []
        self.resets = 0
        self._index = 0

    def reset(self):
        self.resets += 1
        self._index = 0
        return self.observations[0]

    def step(self, action):
        self.steps_taken.append(action)
        self._index = min(self._index + 1, len(self.observations) - 1)
        done = self.done_at_end and self._index == len(self.observations) - 1
        return self.observations[self._index], 0.0, done, {}


def socketpair_connections(timeout=5.0):
    a, b = socket.socketpair()
    a.settimeout(timeout)
    b.settimeout(timeout)
    conn_a = Connection(
        reader=a.makefile("r", encoding="utf-8"),
        writer=a.makefile("w", encoding="utf-8"),
    )
    conn_b = Connection(
        reader=b.makefile("r", encoding="utf-8"),
        writer=b.makefile("w", encoding="utf-8"),
    )
    return conn_a, conn_b, (a, b)


def in_thread(fn, *args, **kwargs):
    result = {}

    def runner():
        try:
            result["value"] = fn(*args, **kwargs)
        except Exception as exc:  # surfaced by the caller
            result["error"] = exc

    thread = threading.Thread(target=runner, daemon=True)
    thread.start()
    return thread, result
