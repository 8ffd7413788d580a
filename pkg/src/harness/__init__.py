"""Command-line harness: experiment configs, run artifacts and regularity reports."""

from .artifacts import read_index, read_snapshots, snapshot_steps, write_index, write_snapshots
from .hoelder import hoelder_time_quotient, hoelder_vector_quotient
from .loading import load_experiment, parse_override
from .report import defined_derivative_orders, regularity_report, write_regularity_report
from .runner import Command, run
from .types import ExperimentConfig, HoelderResult, RegularityReport, SnapshotEstimate

__all__ = [
    "Command",
    "ExperimentConfig",
    "HoelderResult",
    "RegularityReport",
    "SnapshotEstimate",
    "defined_derivative_orders",
    "hoelder_time_quotient",
    "hoelder_vector_quotient",
    "load_experiment",
    "parse_override",
    "read_index",
    "read_snapshots",
    "regularity_report",
    "run",
    "snapshot_steps",
    "write_index",
    "write_regularity_report",
    "write_snapshots",
]
