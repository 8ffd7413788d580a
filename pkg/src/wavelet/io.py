"""CSV dump and load of coefficient sets."""

import logging
from pathlib import Path
from typing import Union

import numpy as np

from src.errors import GridShapeError
from src.utils.format_utils import read_csv, write_csv

from .types import WaveletCoefficients, WaveletSystem

logger = logging.getLogger(__name__)


def dump_coefficients(coeffs: WaveletCoefficients, path: Union[str, Path]) -> Path:
    """Columns j, k0[, k1], type, value; rows sorted by (j, type, k)."""
    table = coeffs.entries()
    header = ["j"] + [f"k{i}" for i in range(coeffs.d)] + ["type", "value"]
    rows = (
        [int(j)] + [int(c) for c in k] + [int(t), float(v)]
        for j, k, t, v in zip(table.level, table.k, table.kind, table.value)
    )
    path = write_csv(path, header, rows)
    logger.info(f"Wrote {len(table)} coefficients to {path}")
    return path


def load_coefficients(
    path: Union[str, Path], system: WaveletSystem, grid_level: int = None
) -> WaveletCoefficients:
    """
    Rebuild a coefficient set from a dump. The box origin is recovered from the
    smallest scaling translation; grid_level defaults to the finest level + 1.
    """
    rows = read_csv(path)
    if not rows:
        raise GridShapeError(f"No coefficients in {path}")
    d = sum(1 for key in rows[0] if key.startswith("k"))

    j = np.array([int(r["j"]) for r in rows])
    kind = np.array([int(r["type"]) for r in rows])
    k = np.array([[int(r[f"k{i}"]) for i in range(d)] for r in rows]).reshape(-1, d)
    value = np.array([float(r["value"]) for r in rows])

    is_scaling = kind == 0
    origin = tuple(int(c) for c in k[is_scaling].min(axis=0))
    side = int(round(is_scaling.sum() ** (1.0 / d)))
    max_level = int(j[~is_scaling].max()) if (~is_scaling).any() else -1

    scaling = np.zeros((side,) * d)
    scaling[tuple((k[is_scaling] - origin).T)] = value[is_scaling]

    keys = system.detail_keys
    details = []
    for level in range(max_level + 1):
        arrays = {}
        for t, key in enumerate(keys, start=1):
            sel = (~is_scaling) & (j == level) & (kind == t)
            array = np.zeros((side * 2**level,) * d)
            local = k[sel] - np.asarray(origin) * 2**level
            array[tuple(local.T)] = value[sel]
            arrays[key] = array
        details.append(arrays)

    return WaveletCoefficients(
        scaling=scaling,
        details=tuple(details),
        origin=origin,
        side=side,
        grid_level=grid_level if grid_level is not None else max_level + 1,
        system=system,
    )
