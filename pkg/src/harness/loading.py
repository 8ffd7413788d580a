"""Experiment config files: flat key=value text read with python-dotenv."""

import logging
from pathlib import Path
from typing import Iterable, Optional, Union

from dotenv import dotenv_values

from src.config import get_config, output_dir
from src.errors import ConfigError

from .types import ExperimentConfig

logger = logging.getLogger(__name__)


def parse_override(text: str) -> tuple:
    if "=" not in text:
        raise ConfigError(f"Override '{text}' is not of the form key=value")
    key, value = text.split("=", 1)
    key = key.strip()
    if not key:
        raise ConfigError(f"Override '{text}' has an empty key")
    return key, value.strip()


def load_experiment(
    command: str,
    path: Optional[Union[str, Path]] = None,
    out: Optional[Union[str, Path]] = None,
    seed: Optional[int] = None,
    overrides: Iterable[str] = (),
) -> ExperimentConfig:
    """
    Read an experiment file (optional) and apply `key=value` overrides on top.
    The output directory comes from `out`, then BADAPT_OUT_DIR, then the config
    default; the seed from `seed`, then the file's `seed` key, then DEFAULT_SEED.
    """
    values = {}
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"Config file {path} does not exist")
        values = dict(dotenv_values(path))
        logger.debug(f"Read {len(values)} keys from {path}")

    for text in overrides:
        key, value = parse_override(text)
        values[key] = value

    config = ExperimentConfig(command=command, values=values, out_dir=Path(output_dir(out)))
    config.seed = seed if seed is not None else config.get_int("seed", get_config().DEFAULT_SEED)
    config.validate()
    return config
