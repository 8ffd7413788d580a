"""Data structures for orthonormal tensor-product wavelet systems."""

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import product
from typing import Dict, List, Tuple

import numpy as np
import pywt

SQRT2 = np.sqrt(2.0)


def _haar() -> np.ndarray:
    return np.array([1.0, 1.0]) / SQRT2


def _db2() -> np.ndarray:
    s3 = np.sqrt(3.0)
    return np.array([1 + s3, 3 + s3, 3 - s3, 1 - s3]) / (4 * SQRT2)


def _db3() -> np.ndarray:
    a = np.sqrt(10.0)
    b = np.sqrt(5 + 2 * a)
    return np.array(
        [1 + a + b, 5 + a + 3 * b, 10 - 2 * a + 2 * b, 10 - 2 * a - 2 * b, 5 + a - 3 * b, 1 + a - b]
    ) / (16 * SQRT2)


class FilterFamily(Enum):
    """
    Shipped orthonormal low-pass filters, built from closed forms.
    Calling a member returns its filter coefficients.
    """

    HAAR = ("haar", 1, _haar)
    DB2 = ("db2", 2, _db2)
    DB3 = ("db3", 3, _db3)

    def __init__(self, label: str, order: int, builder):
        self.label = label
        self.order = order
        self._builder = builder

    def __call__(self) -> np.ndarray:
        return self._builder()

    @classmethod
    def from_order(cls, order: int) -> "FilterFamily":
        for member in cls:
            if member.order == order:
                return member
        raise ValueError(f"No shipped filter with {order} vanishing moments")

    @classmethod
    def from_label(cls, label: str) -> "FilterFamily":
        for member in cls:
            if member.label == label:
                return member
        raise ValueError(f"Unknown filter '{label}'")


# --- Data Classes ---


@dataclass(frozen=True)
class DyadicCube:
    """I = 2^{-j}([0,1]^d + k)."""

    j: int
    k: Tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.k)

    @property
    def measure(self) -> float:
        return 2.0 ** (-self.j * self.d)


@dataclass(frozen=True, eq=False)
class WaveletSystem:
    """Orthonormal compactly supported wavelet system in d dimensions."""

    family: FilterFamily
    d: int = 2
    lowpass: np.ndarray = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "lowpass", self.family())

    @property
    def order(self) -> int:
        return self.family.order

    @property
    def highpass(self) -> np.ndarray:
        """g_k = (-1)^k h_{L-1-k}."""
        g = self.lowpass[::-1].copy()
        g[1::2] = -g[1::2]
        return g

    @property
    def length(self) -> int:
        return len(self.lowpass)

    @property
    def support_radius(self) -> int:
        # φ and ψ live on [0, L-1] ⊂ [-N, N]
        return self.length - 1

    @property
    def pyramid_shift(self) -> int:
        """Index offset of the periodized pyramid filter: L/2 - 1."""
        return self.length // 2 - 1

    @cached_property
    def pywt_wavelet(self) -> pywt.Wavelet:
        return pywt.Wavelet(
            self.family.label, filter_bank=pywt.orthogonal_filter_bank(self.lowpass)
        )

    @property
    def detail_keys(self) -> List[str]:
        """pywt detail keys in wavelet-type order (type 1 first)."""
        return ["".join(p) for p in product("ad", repeat=self.d) if "d" in p]


@dataclass(frozen=True, eq=False)
class WaveletCoefficients:
    """
    Coefficients of a function on the dyadic box origin + [0, side)^d.

    `scaling` holds level-0 coefficients ⟨f, φ_k⟩ (one per unit cube of the box);
    `details[j][key]` holds level-j coefficients of wavelet type `key`, indexed by the
    box-relative translation. `grid_level` is the sample resolution 2^{-grid_level}
    the coefficients were computed from.
    """

    scaling: np.ndarray
    details: Tuple[Dict[str, np.ndarray], ...]
    origin: Tuple[int, ...]
    side: int
    grid_level: int
    system: WaveletSystem

    @property
    def d(self) -> int:
        return self.scaling.ndim

    @property
    def max_level(self) -> int:
        return len(self.details) - 1

    @property
    def detail_keys(self) -> List[str]:
        return self.system.detail_keys

    def level(self, j: int) -> np.ndarray:
        """All level-j detail coefficients flattened in (type, k) order."""
        return np.concatenate([self.details[j][key].ravel() for key in self.detail_keys])

    def scaled(self, alpha: float) -> "WaveletCoefficients":
        return WaveletCoefficients(
            scaling=alpha * self.scaling,
            details=tuple({key: alpha * c for key, c in level.items()} for level in self.details),
            origin=self.origin,
            side=self.side,
            grid_level=self.grid_level,
            system=self.system,
        )

    def energy(self) -> float:
        total = float(np.sum(self.scaling**2))
        for level in self.details:
            total += sum(float(np.sum(c**2)) for c in level.values())
        return total

    def entries(self) -> "CoefficientTable":
        """
        Flat table of every coefficient, sorted by (j, type, k).
        Scaling coefficients appear as level 0, type 0.
        """
        levels, types, ks, values = [], [], [], []

        def add(j: int, t: int, array: np.ndarray):
            idx = np.indices(array.shape).reshape(self.d, -1).T
            absolute = idx + np.asarray(self.origin, dtype=int) * (2**j)
            levels.append(np.full(len(idx), j))
            types.append(np.full(len(idx), t))
            ks.append(absolute)
            values.append(array.ravel())

        add(0, 0, self.scaling)
        for j, level in enumerate(self.details):
            for t, key in enumerate(self.detail_keys, start=1):
                add(j, t, level[key])

        table = CoefficientTable(
            level=np.concatenate(levels),
            kind=np.concatenate(types),
            k=np.concatenate(ks),
            value=np.concatenate(values),
        )
        return table


@dataclass(frozen=True, eq=False)
class CoefficientTable:
    """Column view of a coefficient set: level j, wavelet type (0 = scaling), k, value."""

    level: np.ndarray
    kind: np.ndarray
    k: np.ndarray
    value: np.ndarray

    def __len__(self) -> int:
        return len(self.value)

    def subset(self, mask: np.ndarray) -> "CoefficientTable":
        return CoefficientTable(
            level=self.level[mask], kind=self.kind[mask], k=self.k[mask], value=self.value[mask]
        )

    def cubes(self) -> List[DyadicCube]:
        return [DyadicCube(int(j), tuple(int(c) for c in k)) for j, k in zip(self.level, self.k)]
