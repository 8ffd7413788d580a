"""Subcommand registry and dispatch for the badapt CLI."""

import logging
from enum import Enum
from typing import Any, Dict

from src.errors import ConfigError

from . import commands
from .types import ExperimentConfig

logger = logging.getLogger(__name__)


class Command(Enum):
    """CLI subcommands; each member is callable with an ExperimentConfig."""

    PENCIL = ("pencil", commands.run_pencil)
    SOLVE_LINEAR = ("solve-linear", commands.run_solve_linear)
    SOLVE_SEMILINEAR = ("solve-semilinear", commands.run_solve_semilinear)
    BESOV_ESTIMATE = ("besov-estimate", commands.run_besov_estimate)
    NTERM = ("nterm", commands.run_nterm)
    KONDRATIEV_NORM = ("kondratiev-norm", commands.run_kondratiev_norm)
    HOELDER_TIME = ("hoelder-time", commands.run_hoelder_time)
    REPORT = ("report", commands.run_report)

    @property
    def label(self) -> str:
        return self.value[0]

    @classmethod
    def from_label(cls, label: str) -> "Command":
        for member in cls:
            if member.label == label:
                return member
        raise ConfigError(f"Unknown command '{label}'; choose from {[c.label for c in cls]}")

    def __call__(self, config: ExperimentConfig) -> Dict[str, Any]:
        """Allows the Enum member to be called directly like a function."""
        return self.value[1](config)


def run(config: ExperimentConfig) -> Dict[str, Any]:
    """Dispatch to the configured subcommand; artifacts go to <out>/<command>/."""
    command = Command.from_label(config.command)
    config.command_dir.mkdir(parents=True, exist_ok=True)
    logger.info(f"Running '{command.label}' into {config.command_dir} (seed {config.seed})")
    summary = command(config)
    logger.info(f"Finished '{command.label}'")
    return summary
