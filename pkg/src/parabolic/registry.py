"""Named coefficient fields and forcings used by the CLI and the test suite."""

import math
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from src.errors import ConfigError
from src.kondratiev.functions import polynomial_bump

from .types import OperatorCoefficients, SpaceTimeFunction

ForcingPair = Tuple[SpaceTimeFunction, Optional[SpaceTimeFunction]]


def _time_growing(t, X, Y):
    return np.full(np.shape(X), 1.0 + t / 2.0)


COEFFICIENTS: Dict[str, Callable[[], OperatorCoefficients]] = {
    "laplace": lambda: OperatorCoefficients(name="laplace"),
    "scaled-laplace": lambda: OperatorCoefficients(a11=2.0, a22=2.0, name="scaled-laplace"),
    "anisotropic": lambda: OperatorCoefficients(a11=2.0, a12=0.5, a22=1.0, name="anisotropic"),
    "time-growing": lambda: OperatorCoefficients(a11=_time_growing, a22=_time_growing, name="time-growing"),
}


def make_coefficients(name: str) -> OperatorCoefficients:
    try:
        return COEFFICIENTS[name]()
    except KeyError:
        raise ConfigError(f"Unknown coefficient field '{name}'; choose from {sorted(COEFFICIENTS)}")


def _sine_mode(X, Y):
    return np.sin(math.pi * X) * np.sin(math.pi * Y)


def manufactured_pair(
    coefficients: OperatorCoefficients,
    amplitude: Callable[[float], float],
    amplitude_rate: Callable[[float], float],
) -> ForcingPair:
    """
    u* = φ(t) sin(πx) sin(πy) and f = ∂_t u* + L(t)u*, for coefficients that are
    constant in space. u* vanishes on every grid line x, y ∈ Z.
    """

    def exact(t, X, Y):
        return amplitude(t) * _sine_mode(X, Y)

    def forcing(t, X, Y):
        sx, cx = np.sin(math.pi * X), np.cos(math.pi * X)
        sy, cy = np.sin(math.pi * Y), np.cos(math.pi * Y)
        value = lambda entry: coefficients.evaluate(entry, t, X, Y)
        operator = (
            math.pi**2 * (value("a11") + value("a22")) * sx * sy
            - 2 * math.pi**2 * value("a12") * cx * cy
            + math.pi * (value("b1") * cx * sy + value("b2") * sx * cy)
            + value("c") * sx * sy
        )
        return amplitude_rate(t) * sx * sy + amplitude(t) * operator

    return forcing, exact


def _zero(coefficients, **_) -> ForcingPair:
    zero = lambda t, X, Y: np.zeros(np.shape(X))
    return zero, zero


def _constant_t(coefficients, **_) -> ForcingPair:
    return (lambda t, X, Y: np.full(np.shape(X), float(t))), None


def _manufactured(coefficients, **_) -> ForcingPair:
    return manufactured_pair(coefficients, lambda t: t, lambda t: 1.0)


def _manufactured_sine_time(coefficients, **_) -> ForcingPair:
    return manufactured_pair(coefficients, lambda t: math.sin(math.pi * t), lambda t: math.pi * math.cos(math.pi * t))


def _bump(coefficients, center: Sequence[float] = (0.5, 0.5), radius: float = 0.25, **_) -> ForcingPair:
    bump = polynomial_bump(center, radius)
    return (lambda t, X, Y: t * bump(X, Y)), None


FORCINGS: Dict[str, Callable[..., ForcingPair]] = {
    "zero": _zero,
    "constant-t": _constant_t,
    "manufactured": _manufactured,
    "manufactured-sine-time": _manufactured_sine_time,
    "bump": _bump,
}


def make_forcing(name: str, coefficients: OperatorCoefficients, **kwargs) -> ForcingPair:
    """(f, u*) for a named forcing; u* is None when no closed form exists."""
    if name not in FORCINGS:
        raise ConfigError(f"Unknown forcing '{name}'; choose from {sorted(FORCINGS)}")
    return FORCINGS[name](coefficients, **kwargs)
