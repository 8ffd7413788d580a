"""Smallness conditions guaranteeing a unique fixed point near the linear solution."""

import logging
import math

from .types import FixedPointConfig, SmallnessVerdict

logger = logging.getLogger(__name__)

DISCREPANCY_NOTE = (
    "The Lipschitz bound for u^M carries max(R + ‖L̃⁻¹‖η, 1)^(M-1) while the "
    "conditions use the power 2(M-1); verdict reported for 2(M-1), the M-1 variant "
    "is in alternative_passed."
)


def _ball_condition(config: FixedPointConfig, k: int):
    """η^k ‖L̃⁻¹‖^(k+1) ≤ (r0 - 1)/(cεM r0^(k+1)); returns (lhs, rhs)."""
    r0 = config.r0
    lhs = config.eta**k * config.opnorm ** (k + 1)
    rhs = _inverse_strength(config) * (r0 - 1) * (1 / r0) ** (k + 1)
    return lhs, rhs


def _inverse_strength(config: FixedPointConfig) -> float:
    """1/(cεM), infinite for ε = 0."""
    denominator = config.c * config.epsilon * config.power
    return math.inf if denominator == 0 else 1.0 / denominator


def smallness_check(config: FixedPointConfig) -> SmallnessVerdict:
    """
    Branch on r0·‖L̃⁻¹‖·η. At most 1:  ‖L̃⁻¹‖ < (r0-1)/r0 · 1/(cεM).
    Above 1:  η^{2(M-1)} ‖L̃⁻¹‖^{2M-1} ≤ 1/(cεM) · (r0-1) · r0^{-(2M-1)}.
    """
    M, r0, op, eta = config.power, config.r0, config.opnorm, config.eta
    strength = _inverse_strength(config)
    branch_value = r0 * op * eta

    if branch_value <= 1:
        branch = "cond-02"
        lhs, rhs = op, (r0 - 1) / r0 * strength
        passed = lhs < rhs
        implied, implied_lhs, implied_rhs = "cond-01", op, strength
        # c enters as 1/c on the right-hand side
        c_max = math.inf if config.epsilon == 0 else (r0 - 1) / r0 / (config.epsilon * M * op)
        alternative = passed
    else:
        branch = "cond-2"
        k = 2 * (M - 1)
        lhs, rhs = _ball_condition(config, k)
        passed = lhs <= rhs
        implied = "cond-1"
        implied_lhs = lhs
        implied_rhs = strength * (1 / r0) ** k
        c_max = math.inf if config.epsilon == 0 else (r0 - 1) * (1 / r0) ** (k + 1) / (config.epsilon * M * lhs)
        alt_lhs, alt_rhs = _ball_condition(config, M - 1)
        alternative = alt_lhs <= alt_rhs

    implied_passed = implied_lhs < implied_rhs
    verdict = SmallnessVerdict(
        branch=branch,
        branch_value=branch_value,
        lhs=lhs,
        rhs=rhs,
        passed=bool(passed),
        implied=implied,
        implied_lhs=implied_lhs,
        implied_rhs=implied_rhs,
        implied_passed=bool(implied_passed),
        c_max=c_max,
        exponent_discrepancy=True,
        alternative_passed=bool(alternative),
        note=DISCREPANCY_NOTE,
    )
    logger.info(
        f"Smallness {branch}: {lhs:.6g} vs {rhs:.6g} -> {'pass' if passed else 'fail'} "
        f"(r0·‖L̃⁻¹‖·η = {branch_value:.4g}, largest passing c = {c_max:.4g})"
    )
    if passed and not implied_passed:
        logger.warning(f"{branch} passed but the implied {implied} failed")
    return verdict
