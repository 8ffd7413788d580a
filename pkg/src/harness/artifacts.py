"""Run directories: index files, snapshot grids and their readers."""

import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from src.errors import DependencyError
from src.geometry import MaskedGrid, load_domain, make_grid, save_domain
from src.utils.format_utils import PathLike, read_csv, write_csv
from src.utils.json_utils import read_json, write_json

logger = logging.getLogger(__name__)

INDEX_FILE = "index.json"
DOMAIN_FILE = "domain.env"
SNAPSHOT_DIR = "snapshots"


# --- Index files ---


def write_index(directory: PathLike, payload: Dict[str, Any]) -> Path:
    path = write_json(Path(directory) / INDEX_FILE, payload)
    logger.info(f"Wrote index {path}")
    return path


def read_index(directory: PathLike) -> Dict[str, Any]:
    path = Path(directory) / INDEX_FILE
    if not path.is_file():
        raise DependencyError(f"No {INDEX_FILE} in {directory}; run the producing command first")
    return read_json(path)


def require_file(directory: PathLike, name: str) -> Path:
    path = Path(directory) / name
    if not path.is_file():
        raise DependencyError(f"Missing artifact {path}")
    return path


# --- Snapshots ---


def snapshot_steps(count: int, steps: int) -> List[int]:
    """`count` step indices spread evenly over 0..steps, always including both ends."""
    if count < 2:
        count = 2
    return sorted({int(round(v)) for v in np.linspace(0, steps, min(count, steps + 1))})


def write_snapshots(
    directory: PathLike,
    grid: MaskedGrid,
    times: Sequence[float],
    snapshots: Sequence[np.ndarray],
    steps: Sequence[int],
) -> List[Dict[str, Any]]:
    """
    One CSV per stored step with columns ix, iy, x, y, u over the closed-domain
    nodes, plus times.csv with every step time. Returns the index entries.
    """
    directory = Path(directory)
    save_domain(grid.domain, directory / DOMAIN_FILE)
    write_csv(directory / "times.csv", ["step", "t"], ((n, t) for n, t in enumerate(times)))

    ix, iy = np.nonzero(grid.closed)
    entries = []
    for n in steps:
        name = f"{SNAPSHOT_DIR}/u_{n:06d}.csv"
        u = snapshots[n]
        rows = zip(ix.tolist(), iy.tolist(), grid.x[ix], grid.y[iy], u[ix, iy])
        write_csv(directory / name, ["ix", "iy", "x", "y", "u"], rows)
        entries.append({"step": int(n), "t": float(times[n]), "file": name})
    logger.info(f"Stored {len(entries)} snapshots in {directory / SNAPSHOT_DIR}")
    return entries


def read_snapshots(directory: PathLike) -> Tuple[MaskedGrid, List[Tuple[float, np.ndarray]]]:
    """Rebuild the grid from the stored domain and spacing and load every snapshot."""
    directory = Path(directory)
    index = read_index(directory)
    if "snapshots" not in index or "h" not in index:
        raise DependencyError(f"{directory} holds no solution snapshots")
    domain = load_domain(require_file(directory, DOMAIN_FILE))
    grid = make_grid(domain, float(index["h"]))

    loaded = []
    for entry in index["snapshots"]:
        values = grid.zeros()
        for row in read_csv(require_file(directory, entry["file"])):
            values[int(row["ix"]), int(row["iy"])] = float(row["u"])
        loaded.append((float(entry["t"]), values))
    logger.debug(f"Loaded {len(loaded)} snapshots from {directory}")
    return grid, loaded
