"""Competition harness: rotation, metrics, parallel runs, reports."""

from .records import EpisodeEvent, EpisodeRecord, MetricTuple, RoleStats
from .metrics import (
    compare,
    death_tables,
    depth_frequencies,
    metric_tuple,
    percentile_linear,
    role_stats,
)
from .rotation import rotation_schedule
from .runner import EvalBudgets, run_eval
from .report import emit_report
from .xlog import apply_xlog_overrides, parse_xlogfile_line, read_xlogfile

__all__ = [
    "EpisodeEvent",
    "EpisodeRecord",
    "MetricTuple",
    "RoleStats",
    "compare",
    "death_tables",
    "depth_frequencies",
    "metric_tuple",
    "percentile_linear",
    "role_stats",
    "rotation_schedule",
    "EvalBudgets",
    "run_eval",
    "emit_report",
    "apply_xlog_overrides",
    "parse_xlogfile_line",
    "read_xlogfile",
]
