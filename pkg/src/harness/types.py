"""Experiment configuration, Hölder quotients and regularity reports."""

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from src.errors import ConfigError
from src.geometry import PolygonalDomain, domain_from_config

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


# --- Data Classes ---


@dataclass
class ExperimentConfig:
    """
    Flat key-value experiment description. Keys carry their units where they have
    one (`theta_rad`, `spacing_h`, `time_step_dt`, `final_time`); every typed
    getter raises ConfigError on malformed values.
    """

    command: str
    values: Dict[str, Optional[str]] = field(default_factory=dict)
    out_dir: Path = Path("runs")
    seed: int = 0

    def has(self, key: str) -> bool:
        value = self.values.get(key)
        return value is not None and str(value).strip() != ""

    def get_str(self, key: str, default: Optional[str] = None) -> str:
        if not self.has(key):
            if default is None:
                raise ConfigError(f"Missing config key '{key}'")
            return default
        return str(self.values[key]).strip()

    def get_float(self, key: str, default: Optional[float] = None) -> float:
        if not self.has(key):
            if default is None:
                raise ConfigError(f"Missing config key '{key}'")
            return float(default)
        try:
            return float(self.values[key])
        except ValueError:
            raise ConfigError(f"Config key '{key}' is not a number: {self.values[key]!r}")

    def get_int(self, key: str, default: Optional[int] = None) -> int:
        value = self.get_float(key, default)
        if int(value) != value:
            raise ConfigError(f"Config key '{key}' must be an integer, got {value}")
        return int(value)

    def get_bool(self, key: str, default: bool = False) -> bool:
        if not self.has(key):
            return default
        text = str(self.values[key]).strip().lower()
        if text in _TRUE:
            return True
        if text in _FALSE:
            return False
        raise ConfigError(f"Config key '{key}' is not a boolean: {self.values[key]!r}")

    def get_floats(self, key: str, default: Optional[List[float]] = None) -> List[float]:
        """Comma- or whitespace-separated list of numbers."""
        if not self.has(key):
            if default is None:
                raise ConfigError(f"Missing config key '{key}'")
            return list(default)
        try:
            return [float(v) for v in str(self.values[key]).replace(",", " ").split()]
        except ValueError:
            raise ConfigError(f"Config key '{key}' is not a list of numbers: {self.values[key]!r}")

    @property
    def domain(self) -> PolygonalDomain:
        values = dict(self.values)
        values.setdefault("domain", "l-shape")
        if not values.get("domain"):
            values["domain"] = "l-shape"
        return domain_from_config(values)

    @property
    def command_dir(self) -> Path:
        return Path(self.out_dir) / self.command

    def sibling_dir(self, command: str) -> Path:
        return Path(self.out_dir) / command

    def validate(self) -> None:
        """The wavelet filter order r must exceed every requested Besov s."""
        r = self.get_int("filter_order", 3)
        if r < 1:
            raise ConfigError(f"filter_order must be at least 1, got {r}")
        for s in self.get_floats("besov_s", []):
            if not r > s:
                raise ConfigError(
                    f"Besov smoothness s={s} needs filter order r > s; filter_order={r}"
                )


@dataclass
class HoelderResult:
    """sup over snapshot pairs of a difference quotient of exponent β."""

    beta: float
    quotient: float
    pair: Tuple[float, float]
    pairs: int


def _window_labels(windows) -> str:
    labels = []
    for window in windows:
        if window is None:
            continue
        label = f"{window[0]}..{window[1]}"
        if label not in labels:
            labels.append(label)
    return ",".join(labels) or "none"


@dataclass
class SnapshotEstimate:
    t: float
    s_sobolev: float
    r2_sobolev: float
    s_adaptive: float
    r2_adaptive: float
    nterm_rate: Optional[float] = None
    r2_nterm: Optional[float] = None
    window_sobolev: Optional[Tuple[int, int]] = None
    window_adaptive: Optional[Tuple[int, int]] = None


@dataclass
class RegularityReport:
    """
    Medians of the per-snapshot estimates away from t = 0. A gain is only claimed
    when every fit it is built from has R² at least `min_r_squared`.
    """

    s_sobolev: float
    s_adaptive: float
    nterm_rate: float
    uniform_rate: float
    gain: float
    adaptive_gain: float
    r2_sobolev: float
    r2_adaptive: float
    r2_nterm: float
    min_r_squared: float
    snapshots: List[SnapshotEstimate] = field(default_factory=list)
    excluded_times: List[float] = field(default_factory=list)
    ceiling: Optional[float] = None
    tau_window: Optional[Tuple[float, float]] = None
    defined_derivative_orders: List[int] = field(default_factory=list)
    note: str = ""

    @property
    def gain_status(self) -> str:
        reliable = min(self.r2_sobolev, self.r2_nterm) >= self.min_r_squared
        return "RELIABLE" if reliable else "UNRELIABLE"

    @property
    def adaptive_gain_status(self) -> str:
        reliable = min(self.r2_sobolev, self.r2_adaptive) >= self.min_r_squared
        return "RELIABLE" if reliable else "UNRELIABLE"

    @property
    def within_ceiling(self) -> Optional[bool]:
        if self.ceiling is None or not math.isfinite(self.s_adaptive):
            return None
        return self.s_adaptive < self.ceiling

    def items(self) -> List[Tuple[str, object]]:
        """Summary lines for the structured-text report."""
        lines = [
            ("s_sobolev", self.s_sobolev),
            ("r2_sobolev", self.r2_sobolev),
            ("s_adaptive", self.s_adaptive),
            ("r2_adaptive", self.r2_adaptive),
            ("nterm_rate", self.nterm_rate),
            ("r2_nterm", self.r2_nterm),
            ("uniform_rate", self.uniform_rate),
            ("gain", self.gain),
            ("gain_status", self.gain_status),
            ("adaptive_gain", self.adaptive_gain),
            ("adaptive_gain_status", self.adaptive_gain_status),
            ("snapshots_used", len(self.snapshots)),
            ("snapshots_excluded", len(self.excluded_times)),
            ("fit_window_sobolev", _window_labels(s.window_sobolev for s in self.snapshots)),
            ("fit_window_adaptive", _window_labels(s.window_adaptive for s in self.snapshots)),
        ]
        if self.ceiling is not None:
            lines.append(("ceiling", self.ceiling))
            lines.append(("within_ceiling", self.within_ceiling))
        if self.tau_window is not None:
            lines.append(("inverse_tau_window", f"({self.tau_window[0]:.6g}, {self.tau_window[1]:.6g})"))
        orders = ",".join(str(k) for k in self.defined_derivative_orders) or "none"
        lines.append(("defined_derivative_orders", orders))
        if self.note:
            lines.append(("note", self.note))
        return lines
