"""The serve CLI over stdio, driven by the in-process agent client."""

import os
import subprocess
import sys

from nlebridge.agent_client import nhbot_policy, run_agent
from nlebridge.serve import Connection

HERE = os.path.dirname(__file__)


def test_stdio_serve_round_trip():
    proc = subprocess.Popen(
        [
            sys.executable,
            "-m",
            "nlebridge.cli",
            "serve",
            "--env",
            "tests._fake_env_factory:make_env",
            "--episodes",
            "1",
        ],
        stdin=subprocess.PIPE,
        stdout=subprocess.PIPE,
        stderr=subprocess.PIPE,
        text=True,
        cwd=os.path.dirname(HERE),
    )
    try:
        connection = Connection(reader=proc.stdout, writer=proc.stdin)
        stats = run_agent(connection, nhbot_policy())
        proc.stdin.close()
        proc.wait(timeout=30)
    finally:
        proc.kill()
    assert stats.observations >= 2
    assert "aborts=0" in proc.stderr.read()
