"""nhbot: a symbolic NetHack agent and tournament evaluation harness."""

__version__ = "0.1.0"
