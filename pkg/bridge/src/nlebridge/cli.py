"""Bridge entry points: env-side serve and agent-side client.

The endpoint is either stdio (the peer is the parent process) or a local
TCP port. The serve side needs an importable environment factory, e.g.
``--env mymodule:make_env``.
"""

from __future__ import annotations

import importlib
import socket
import sys

import click

from .agent_client import nhbot_policy, run_agent
from .serve import Connection, serve


def _stdio_connection() -> Connection:
    return Connection(reader=sys.stdin, writer=sys.stdout)


def _tcp_listen(port: int, timeout: float) -> Connection:
    server = socket.create_server(("127.0.0.1", port))
    conn, _addr = server.accept()
    conn.settimeout(timeout)
    return Connection(
        reader=conn.makefile("r", encoding="utf-8"),
        writer=conn.makefile("w", encoding="utf-8"),
    )


def _tcp_connect(port: int, timeout: float) -> Connection:
    conn = socket.create_connection(("127.0.0.1", port))
    conn.settimeout(timeout)
    return Connection(
        reader=conn.makefile("r", encoding="utf-8"),
        writer=conn.makefile("w", encoding="utf-8"),
    )


def _load_factory(spec: str):
    module_name, _, attr = spec.partition(":")
    if not attr:
        raise click.UsageError("--env must look like module:factory")
    module = importlib.import_module(module_name)
    return getattr(module, attr)


@click.group()
def main() -> None:
    """NLE-style observation bridge."""


@main.command("serve")
@click.option("--env", "env_spec", required=True,
              help="Environment factory as module:callable.")
@click.option("--tcp", type=int, default=None,
              help="Listen on this local TCP port instead of stdio.")
@click.option("--episodes", type=int, default=None)
@click.option("--timeout", type=float, default=30.0,
              help="Seconds to wait for each key reply.")
def serve_cmd(env_spec, tcp, episodes, timeout) -> None:
    """Expose an environment's tty observations over the wire."""
    env = _load_factory(env_spec)()
    connection = _tcp_listen(tcp, timeout) if tcp else _stdio_connection()
    stats = serve(env, connection, max_episodes=episodes, reply_timeout=timeout)
    click.echo(
        f"episodes={stats.episodes} steps={stats.steps} aborts={stats.aborts}",
        err=True,
    )


@main.command("agent")
@click.option("--tcp", type=int, default=None,
              help="Connect to this local TCP port instead of stdio.")
@click.option("--timeout", type=float, default=30.0)
def agent_cmd(tcp, timeout) -> None:
    """Run the symbolic agent against a bridge endpoint."""
    connection = _tcp_connect(tcp, timeout) if tcp else _stdio_connection()
    stats = run_agent(connection, nhbot_policy())
    click.echo(
        f"observations={stats.observations} keys={stats.keys_sent}", err=True
    )


if __name__ == "__main__":
    main()
