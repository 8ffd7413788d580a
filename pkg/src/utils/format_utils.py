"""Formatting and table-writing helpers used by every artifact writer."""

import csv
import math
from pathlib import Path
from typing import Any, Iterable, List, Sequence, Union

PathLike = Union[str, Path]


def format_float(value: Any) -> str:
    """
    Format a number with 17 significant digits.
    Non-finite values become 'inf', '-inf' or 'nan'; integers stay integers.
    """
    if isinstance(value, (bool,)):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    x = float(value)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def parse_float(text: str) -> float:
    return float(text.strip())


def write_csv(path: PathLike, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """Write rows to CSV, formatting floats for bit-exact decimal round-trips."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(list(header))
        for row in rows:
            writer.writerow(
                [v if isinstance(v, str) else format_float(v) for v in row]
            )
    return path


def read_csv(path: PathLike) -> List[dict]:
    with open(path, "r", newline="") as f:
        return list(csv.DictReader(f))


def write_two_column(path: PathLike, xs: Sequence[float], ys: Sequence[float]) -> Path:
    """gnuplot-compatible whitespace-separated data file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        for x, y in zip(xs, ys):
            f.write(f"{format_float(x)} {format_float(y)}\n")
    return path


def write_key_values(path: PathLike, items: Iterable[tuple]) -> Path:
    """Structured-text report: one 'key: value' line per item."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        for key, value in items:
            if isinstance(value, (float, bool)):
                value = format_float(value)
            f.write(f"{key}: {value}\n")
    return path
