"""Regularity report: adaptivity-scale smoothness against the Sobolev limit."""

import logging
import math
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np

from src.besov import besov_membership_ceiling, tau_window
from src.config import get_config
from src.errors import DependencyError
from src.utils.format_utils import PathLike, read_csv, write_csv, write_key_values
from src.utils.json_utils import write_json

from .artifacts import read_index, require_file
from .types import RegularityReport, SnapshotEstimate

logger = logging.getLogger(__name__)


def defined_derivative_orders(gamma: Optional[float], m: int = 1) -> List[int]:
    """Orders k ≤ γ_m - 2 whose time derivatives carry a Hölder-1/2 statement."""
    if gamma is None:
        return []
    gamma_m = math.floor((gamma - 1) / (2 * m))
    return list(range(0, gamma_m - 1))


def _read_rows(directory: Path, name: str) -> List[dict]:
    read_index(directory)
    return read_csv(require_file(directory, name))


def _window(row: dict, scale: str) -> Optional[Tuple[int, int]]:
    lo, hi = row.get(f"j_min_{scale}"), row.get(f"j_max_{scale}")
    if lo in (None, "") or hi in (None, ""):
        return None
    return int(lo), int(hi)


def _window_label(window: Optional[Tuple[int, int]]) -> str:
    return "" if window is None else f"{window[0]}..{window[1]}"


def regularity_report(
    out_dir: PathLike,
    gamma: Optional[float] = None,
    m: int = 1,
    early_fraction: Optional[float] = None,
    min_r_squared: Optional[float] = None,
) -> RegularityReport:
    """
    Aggregate <out>/besov-estimate and, when present, <out>/nterm into a report.
    Snapshots in the first `early_fraction` of [0, T] are excluded; s values are
    medians over the rest and every R² is the worst one among them.
    """
    config = get_config()
    early_fraction = config.EARLY_TIME_FRACTION if early_fraction is None else early_fraction
    min_r_squared = config.MIN_R_SQUARED if min_r_squared is None else min_r_squared
    out_dir = Path(out_dir)

    besov_dir = out_dir / "besov-estimate"
    besov_index = read_index(besov_dir)
    besov_rows = _read_rows(besov_dir, "besov.csv")
    final_time = float(besov_index.get("final_time") or 0.0)
    cutoff = early_fraction * final_time

    nterm_dir = out_dir / "nterm"
    nterm_by_time = {}
    if (nterm_dir / "index.json").is_file():
        nterm_by_time = {float(r["t"]): r for r in _read_rows(nterm_dir, "nterm.csv")}
    else:
        logger.warning(f"No N-term artifacts in {nterm_dir}; the N-term gain is not claimed")

    used: List[SnapshotEstimate] = []
    excluded: List[float] = []
    for row in besov_rows:
        t = float(row["t"])
        if t <= cutoff:
            excluded.append(t)
            continue
        nterm = nterm_by_time.get(t)
        used.append(
            SnapshotEstimate(
                t=t,
                s_sobolev=float(row["s_sobolev"]),
                r2_sobolev=float(row["r2_sobolev"]),
                s_adaptive=float(row["s_adaptive"]),
                r2_adaptive=float(row["r2_adaptive"]),
                nterm_rate=float(nterm["s_est"]) if nterm else None,
                r2_nterm=float(nterm["r2"]) if nterm else None,
                window_sobolev=_window(row, "sobolev"),
                window_adaptive=_window(row, "adaptive"),
            )
        )
    if not used:
        raise DependencyError(
            f"No snapshots after t={cutoff:.4g} in {besov_dir}; nothing to report"
        )

    s_sobolev = float(np.median([s.s_sobolev for s in used]))
    s_adaptive = float(np.median([s.s_adaptive for s in used]))
    rates = [s.nterm_rate for s in used if s.nterm_rate is not None]
    nterm_rate = float(np.median(rates)) if rates else math.nan
    r2_nterm = min((s.r2_nterm for s in used if s.r2_nterm is not None), default=0.0)

    ceiling, window, note = None, None, ""
    if gamma is not None:
        ceiling = besov_membership_ceiling(gamma, m, int(besov_index.get("delta", 0)))
        window = tau_window(ceiling, 2)
    orders = defined_derivative_orders(gamma, m)
    if not orders:
        note = "γ_m - 2 < 0: only the β = 1/2 quotient of u itself is defined"

    report = RegularityReport(
        s_sobolev=s_sobolev,
        s_adaptive=s_adaptive,
        nterm_rate=nterm_rate,
        uniform_rate=s_sobolev,
        gain=nterm_rate - s_sobolev,
        adaptive_gain=s_adaptive - s_sobolev,
        r2_sobolev=min(s.r2_sobolev for s in used),
        r2_adaptive=min(s.r2_adaptive for s in used),
        r2_nterm=r2_nterm,
        min_r_squared=min_r_squared,
        snapshots=used,
        excluded_times=excluded,
        ceiling=ceiling,
        tau_window=window,
        defined_derivative_orders=orders,
        note=note,
    )
    if report.adaptive_gain_status == "UNRELIABLE":
        logger.warning(f"Adaptivity gain {report.adaptive_gain:.4f} rests on fits with R² < {min_r_squared}")
    logger.info(
        f"Regularity: s_sobolev={s_sobolev:.4f}, s_adaptive={s_adaptive:.4f}, "
        f"N-term rate={nterm_rate:.4f} over {len(used)} snapshots"
    )
    return report


def write_regularity_report(report: RegularityReport, directory: PathLike) -> Path:
    directory = Path(directory)
    write_key_values(directory / "regularity.txt", report.items())
    write_json(directory / "regularity.json", report)
    write_csv(
        directory / "snapshots.csv",
        [
            "t",
            "s_sobolev",
            "r2_sobolev",
            "s_adaptive",
            "r2_adaptive",
            "nterm_rate",
            "r2_nterm",
            "window_sobolev",
            "window_adaptive",
        ],
        (
            (
                s.t,
                s.s_sobolev,
                s.r2_sobolev,
                s.s_adaptive,
                s.r2_adaptive,
                math.nan if s.nterm_rate is None else s.nterm_rate,
                math.nan if s.r2_nterm is None else s.r2_nterm,
                _window_label(s.window_sobolev),
                _window_label(s.window_adaptive),
            )
            for s in report.snapshots
        ),
    )
    return directory / "regularity.txt"
