"""
Subcommands of the badapt CLI. Each takes an ExperimentConfig, writes its
artifacts under <out>/<command>/ and returns a summary for the console.
"""

import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from src.besov import (
    AdaptivityScalePoint,
    BesovParams,
    SmoothnessScale,
    adaptivity_norm,
    besov_quasinorm,
    estimate_smoothness,
    fit_rate,
    fraction_window,
    n_term_curve,
    running_rate,
)
from src.config import get_config
from src.errors import ConfigError, UnresolvedRootError
from src.geometry import MaskedGrid, make_grid
from src.kondratiev import (
    GridFunction,
    KondratievNormResult,
    KondratievParams,
    NormStatus,
    grid_function,
    kondratiev_norm,
    radial_integral_converges,
    singular_model,
    time_kondratiev_norm,
)
from src.parabolic import (
    ErrorTable,
    ParabolicProblem,
    Scheme,
    a_priori_ratio,
    compatibility_residuals,
    make_coefficients,
    make_forcing,
    rothe_solve,
    time_grid,
)
from src.pencil import (
    StripReport,
    WedgePencil,
    WeightBudget,
    delta_strips,
    dirichlet_laplace_wedge_eigenvalues,
    pencil_spectrum_numeric,
    weight_admissible,
    write_admissibility_table,
    write_strip_report,
)
from src.semilinear import (
    FixedPointConfig,
    contraction_and_ball_report,
    data_norm,
    estimate_inverse_norm,
    fixed_point_solve,
    smallness_check,
    write_history,
)
from src.utils.format_utils import write_csv, write_key_values, write_two_column
from src.utils.json_utils import write_json
from src.wavelet import (
    WaveletCoefficients,
    box_samples,
    dump_coefficients,
    forward_transform,
    interior_mask,
    make_system,
)

from .artifacts import read_index, read_snapshots, snapshot_steps, write_index, write_snapshots
from .hoelder import hoelder_time_quotient, hoelder_vector_quotient
from .report import regularity_report, write_regularity_report
from .types import ExperimentConfig

logger = logging.getLogger(__name__)

Summary = Dict[str, Any]

KONDRATIEV_COLUMNS = ["m", "p", "a", "value", "status", "cells", "refinement_depth"]

BESOV_COLUMNS = [
    "t",
    "s_sobolev",
    "r2_sobolev",
    "s_adaptive",
    "r2_adaptive",
    "j_min_sobolev",
    "j_max_sobolev",
    "j_min_adaptive",
    "j_max_adaptive",
]


# ----------------------------------------------------------------------------
# Shared helpers
# ----------------------------------------------------------------------------


def gamma_m(gamma: float, m: int = 1) -> int:
    """γ_m = ⌊(γ - 1)/(2m)⌋, at least 0."""
    return max(0, math.floor((gamma - 1) / (2 * m)))


def _resolution(config: ExperimentConfig) -> Tuple[float, float, float]:
    env = get_config()
    h = config.get_float("spacing_h", env.DEFAULT_SPACING)
    dt = config.get_float("time_step_dt", env.DEFAULT_TIME_STEP)
    final_time = config.get_float("final_time", env.DEFAULT_FINAL_TIME)
    if h <= 0 or dt <= 0 or final_time <= 0:
        raise ConfigError("spacing_h, time_step_dt and final_time must be positive")
    return h, dt, final_time


def _scheme(config: ExperimentConfig) -> Scheme:
    try:
        return Scheme.from_label(config.get_str("scheme", "implicit-euler"))
    except ValueError as e:
        raise ConfigError(str(e))


def build_problem(config: ExperimentConfig) -> ParabolicProblem:
    """Parabolic problem from the `domain`, `coefficients` and `forcing` keys."""
    _, _, final_time = _resolution(config)
    coefficients = make_coefficients(config.get_str("coefficients", "laplace"))
    kwargs = {}
    if config.has("forcing_center"):
        kwargs["center"] = tuple(config.get_floats("forcing_center"))
    if config.has("forcing_radius"):
        kwargs["radius"] = config.get_float("forcing_radius")
    forcing_name = config.get_str("forcing", "bump")
    forcing, exact = make_forcing(forcing_name, coefficients, **kwargs)
    return ParabolicProblem(
        domain=config.domain,
        final_time=final_time,
        coefficients=coefficients,
        forcing=forcing,
        exact=exact,
        nonlinearity_power=config.get_int("power", 3),
        name=f"{config.domain.name}/{coefficients.name}/{forcing_name}",
    )


def _wavelet_coefficients(
    config: ExperimentConfig, grid: MaskedGrid, values: np.ndarray
) -> Tuple[WaveletCoefficients, np.ndarray]:
    system = make_system(config.get_int("filter_order", get_config().DEFAULT_FILTER_ORDER), d=2)
    levels = config.get_int("wavelet_levels") if config.has("wavelet_levels") else None
    samples, origin, _ = box_samples(grid, values)
    coeffs = forward_transform(samples, system, grid.h, levels=levels, origin=origin)
    return coeffs, interior_mask(coeffs, grid.domain)


def _source_snapshots(config: ExperimentConfig):
    source = config.sibling_dir(config.get_str("snapshots_from", "solve-linear"))
    grid, snapshots = read_snapshots(source)
    return source, read_index(source), grid, snapshots


def _store_solution(config: ExperimentConfig, solution, extra: Dict[str, Any]) -> List[Dict[str, Any]]:
    out = config.command_dir
    steps = snapshot_steps(config.get_int("snapshot_count", 11), len(solution.times) - 1)
    entries = write_snapshots(out, solution.grid, solution.times, solution.snapshots, steps)
    grid = solution.grid
    write_two_column(out / "l2_norm.dat", solution.times, [grid.l2_norm(u) for u in solution.snapshots])
    write_index(
        out,
        {
            "command": config.command,
            "seed": config.seed,
            "h": solution.h,
            "dt": solution.time_step,
            "final_time": float(solution.times[-1]),
            "scheme": solution.scheme.label,
            "domain": grid.domain.name,
            "delta": grid.domain.delta,
            "snapshots": entries,
            **extra,
        },
    )
    return entries


# ----------------------------------------------------------------------------
# pencil
# ----------------------------------------------------------------------------


def run_pencil(config: ExperimentConfig) -> Summary:
    """δ± strips of a wedge pencil and, given γ and a, the weight admissibility table."""
    out = config.command_dir
    theta = config.get_float("theta_rad")
    entries = config.get_floats("pencil_coefficients", [1.0, 0.0, 1.0])
    if len(entries) != 3:
        raise ConfigError("pencil_coefficients needs three entries 'a11 a12 a22'")
    a11, a12, a22 = entries
    pencil = WedgePencil(
        theta=theta,
        coefficients=np.array([[a11, a12], [a12, a22]]),
        bisector=config.get_float("bisector_rad", 0.0),
    )

    env = get_config()
    imag_window = config.get_float("pencil_imag_window", env.PENCIL_IMAG_WINDOW)
    summary: Summary = {"theta": theta}
    if pencil.is_laplacian:
        delta_minus, delta_plus = delta_strips(pencil)
        count = max(1, math.floor(env.PENCIL_SEARCH_HALFWIDTH * theta / math.pi + 1e-9))
        report = StripReport(
            theta=theta,
            delta_minus=delta_minus,
            delta_plus=delta_plus,
            eigenvalues=[complex(lam) for lam in dirichlet_laplace_wedge_eigenvalues(theta, count)],
            method="closed-form",
        )
        # the shooting spectrum is only a cross-check here
        try:
            numeric = pencil_spectrum_numeric(pencil, imag_window=imag_window)
            error = max(abs(numeric.delta_minus - delta_minus), abs(numeric.delta_plus - delta_plus))
            summary["cross_check_error"] = error
            logger.info(f"Shooting cross-check against π/θ: {error:.3e}")
        except UnresolvedRootError as e:
            logger.warning(f"Shooting cross-check failed, keeping the closed form: {e}")
            summary["cross_check_error"] = None
    else:
        report = pencil_spectrum_numeric(pencil, imag_window=imag_window)
        delta_minus, delta_plus = report.delta_minus, report.delta_plus

    write_csv(
        out / "strips.csv",
        ["theta", "delta_minus", "delta_plus", "method"],
        [(theta, delta_minus, delta_plus, report.method)],
    )
    write_csv(
        out / "eigenvalues.csv",
        ["re", "im"],
        ((complex(z).real, complex(z).imag) for z in report.eigenvalues),
    )
    write_strip_report(report, out / "strips.txt")
    summary.update(
        {
            "delta_minus": delta_minus,
            "delta_plus": delta_plus,
            "method": report.method,
            "eigenvalues": len(report.eigenvalues),
        }
    )

    if config.has("gamma") and config.has("weight_a"):
        budget = WeightBudget(
            m=pencil.m,
            a=config.get_float("weight_a"),
            gamma=config.get_float("gamma"),
            delta_minus=[delta_minus],
            delta_plus=[delta_plus],
        )
        admissibility = weight_admissible(budget)
        write_admissibility_table(admissibility, out / "admissibility.csv")
        summary["admissible_interval"] = str(admissibility.interval)
        summary["weight_passes"] = admissibility.all_passed

    write_index(out, {"command": config.command, "strips": report, **summary})
    return summary


# ----------------------------------------------------------------------------
# solve-linear / solve-semilinear
# ----------------------------------------------------------------------------


def run_solve_linear(config: ExperimentConfig) -> Summary:
    out = config.command_dir
    h, dt, _ = _resolution(config)
    problem = build_problem(config)
    solution = rothe_solve(problem, h, dt, scheme=_scheme(config))
    grid = solution.grid

    extra: Dict[str, Any] = {
        "coefficients": problem.coefficients.name,
        "forcing": config.get_str("forcing", "bump"),
        "krylov_iterations": int(sum(solution.iterations)),
    }
    if problem.exact is not None:
        errors = ErrorTable(
            times=solution.times,
            errors=np.array(
                [grid.l2_norm(u - problem.exact(t, grid.X, grid.Y)) for t, u in zip(solution.times, solution.snapshots)]
            ),
        )
        write_two_column(out / "error.dat", errors.times, errors.errors)
        extra["max_error"] = errors.max_error
    if any(np.any(u) for u in solution.snapshots):
        extra["a_priori_ratio"] = a_priori_ratio(solution, problem)
    if config.has("gamma"):
        extra["compatibility_residuals"] = compatibility_residuals(
            problem.forcing, grid, gamma_m(config.get_float("gamma"))
        )

    entries = _store_solution(config, solution, extra)
    return {
        "problem": problem.name,
        "steps": len(solution.times) - 1,
        "unknowns": grid.n_unknowns,
        "snapshots_stored": len(entries),
        "max_abs_u": float(max(np.abs(u).max() for u in solution.snapshots)),
        **{k: v for k, v in extra.items() if k in ("max_error", "a_priori_ratio")},
    }


def run_solve_semilinear(config: ExperimentConfig) -> Summary:
    """u_t + Lu + εu^M = f by fixed-point iteration, after the smallness check."""
    out = config.command_dir
    h, dt, _ = _resolution(config)
    scheme = _scheme(config)
    problem = build_problem(config)
    grid = make_grid(problem.domain, h)
    times = time_grid(problem.final_time, dt)
    forcing = [problem.forcing_values(t, grid) for t in times]

    eta = data_norm(forcing, grid, times, gamma_m=gamma_m(config.get_float("gamma", 1.0)))
    opnorm = config.get_float("opnorm") if config.has("opnorm") else estimate_inverse_norm(
        problem, h, dt, probes=config.get_int("probes", 8), seed=config.seed, scheme=scheme
    )
    fp_config = FixedPointConfig(
        epsilon=config.get_float("epsilon"),
        power=config.get_int("power", problem.nonlinearity_power),
        r0=config.get_float("r0", 2.0),
        eta=eta,
        opnorm=opnorm,
        c=config.get_float("smallness_c", 1.0),
        tol=config.get_float("fixed_point_tol", 1e-8),
        maxiter=config.get_int("fixed_point_maxiter", 50),
        override=config.get_bool("override_smallness", False),
    )

    # the verdict is on disk before a failing check stops the run
    verdict = smallness_check(fp_config)
    write_key_values(out / "smallness.txt", list(vars(verdict).items()))
    write_json(out / "smallness.json", verdict)

    solution, history = fixed_point_solve(problem, fp_config, h, dt, scheme=scheme)
    write_history(history, out / "history.csv")
    write_two_column(out / "step_norms.dat", range(1, len(history.step_norms) + 1), history.step_norms)
    contraction = contraction_and_ball_report(history, fp_config)

    extra = {
        "epsilon": fp_config.epsilon,
        "power": fp_config.power,
        "eta": eta,
        "opnorm": opnorm,
        "radius": fp_config.radius,
        "smallness": verdict,
        "contraction": contraction,
        "iterations": len(history.step_norms),
        "final_residual": history.residuals[-1],
    }
    _store_solution(config, solution, extra)
    return {
        "eta": eta,
        "opnorm": opnorm,
        "smallness_branch": verdict.branch,
        "smallness_passed": verdict.passed,
        "iterations": len(history.step_norms),
        "contraction_q": contraction.q,
        "inside_ball": contraction.inside_ball,
        "final_residual": history.residuals[-1],
    }


# ----------------------------------------------------------------------------
# besov-estimate / nterm
# ----------------------------------------------------------------------------


def run_besov_estimate(config: ExperimentConfig) -> Summary:
    """Sobolev-scale and adaptivity-scale smoothness of every nonzero snapshot."""
    out = config.command_dir
    source, source_index, grid, snapshots = _source_snapshots(config)
    p = config.get_float("besov_p", 2.0)
    besov_s = config.get_floats("besov_s", [])

    rows, level_rows, norm_rows, report_lines = [], [], [], []
    coeffs = None
    for t, u in snapshots:
        if not np.any(u):
            logger.info(f"Skipping zero snapshot at t={t}")
            continue
        coeffs, mask = _wavelet_coefficients(config, grid, u)
        sobolev = estimate_smoothness(coeffs, p=2.0, mask=mask)
        adaptive = estimate_smoothness(coeffs, p=p, mask=mask, scale=SmoothnessScale.ADAPTIVITY)
        rows.append(
            (
                t,
                sobolev.s_est,
                sobolev.r_squared,
                adaptive.s_est,
                adaptive.r_squared,
                *sobolev.window,
                *adaptive.window,
            )
        )
        report_lines.append(("t", t))
        report_lines.extend(sobolev.items())
        report_lines.extend(adaptive.items())
        level_rows.extend((t, j, v) for j, v in enumerate(sobolev.level_sums))
        for s in besov_s:
            params = BesovParams(s=s, p=p, q=p, d=2)
            norm_rows.append((t, s, p, besov_quasinorm(coeffs, params)))
        logger.info(
            f"t={t:.4f}: s_sobolev={sobolev.s_est:.4f} (R²={sobolev.r_squared:.3f}), "
            f"s_adaptive={adaptive.s_est:.4f} (R²={adaptive.r_squared:.3f})"
        )

    write_csv(out / "besov.csv", BESOV_COLUMNS, rows)
    write_key_values(out / "smoothness.txt", report_lines)
    write_csv(out / "level_sums.csv", ["t", "j", "sobolev_sum"], level_rows)
    if norm_rows:
        write_csv(out / "norms.csv", ["t", "s", "p", "value"], norm_rows)
    write_two_column(out / "s_sobolev.dat", [r[0] for r in rows], [r[1] for r in rows])
    write_two_column(out / "s_adaptive.dat", [r[0] for r in rows], [r[3] for r in rows])
    if coeffs is not None:
        dump_coefficients(coeffs, out / "coefficients_final.csv")

    write_index(
        out,
        {
            "command": config.command,
            "source": str(source),
            "final_time": source_index.get("final_time"),
            "domain": source_index.get("domain"),
            "delta": source_index.get("delta", 0),
            "filter_order": config.get_int("filter_order", get_config().DEFAULT_FILTER_ORDER),
            "p": p,
            "rows": len(rows),
        },
    )
    return {"source": str(source), "snapshots_estimated": len(rows), "snapshots_skipped": len(snapshots) - len(rows)}


def run_nterm(config: ExperimentConfig) -> Summary:
    """σ_N curves over the interior coefficients and their fitted rates."""
    out = config.command_dir
    source, source_index, grid, snapshots = _source_snapshots(config)
    p = config.get_float("besov_p", 2.0)
    fractions = tuple(config.get_floats("nterm_window", list(get_config().NTERM_WINDOW)))
    if len(fractions) != 2:
        raise ConfigError("nterm_window needs two fractions")

    rows, rate_files = [], []
    for i, (t, u) in enumerate(snapshots):
        if not np.any(u):
            continue
        coeffs, mask = _wavelet_coefficients(config, grid, u)
        curve = n_term_curve(coeffs.entries().subset(mask), p=p)
        window = fraction_window(curve, fractions)
        fit = fit_rate(curve, d=2, window=window)
        rows.append((t, fit.s_est, fit.r_squared, fit.window[0], fit.window[1]))
        logger.info(f"t={t:.4f}: N-term rate s={fit.s_est:.4f} (R²={fit.r_squared:.3f})")

        name = f"rates/rate_{i:03d}.csv"
        running = running_rate(curve, d=2, start=window[0])
        write_csv(out / name, ["N", "sigma", "s_est"], zip(curve.n.tolist(), curve.sigma, running))
        rate_files.append({"t": t, "file": name})

    write_csv(out / "nterm.csv", ["t", "s_est", "r2", "n_min", "n_max"], rows)
    write_index(
        out,
        {
            "command": config.command,
            "source": str(source),
            "final_time": source_index.get("final_time"),
            "p": p,
            "window_fractions": list(fractions),
            "rows": len(rows),
            "rate_files": rate_files,
        },
    )
    return {"source": str(source), "snapshots_fitted": len(rows)}


# ----------------------------------------------------------------------------
# kondratiev-norm
# ----------------------------------------------------------------------------


def _kondratiev_params(config: ExperimentConfig) -> List[KondratievParams]:
    m = config.get_int("kondratiev_m", 2)
    p = config.get_float("kondratiev_p", 2.0)
    try:
        return [KondratievParams(m=m, p=p, a=a) for a in config.get_floats("kondratiev_a", [0.5, 1.5])]
    except ValueError as e:
        raise ConfigError(str(e))


def _norm_lines(result: KondratievNormResult) -> List[Tuple[str, Any]]:
    divergent = result.status is NormStatus.DIVERGENT
    return [
        ("m", result.m),
        ("p", result.p),
        ("a", result.a),
        ("value", "DIVERGENT" if divergent else result.value),
        ("cells", result.cells),
        ("refinement_depth", result.refinement_depth),
    ]


def run_kondratiev_norm(config: ExperimentConfig) -> Summary:
    """
    Weighted norms of either the analytic corner model r^λ sin(λφ)·cutoff
    (`kondratiev_source=singular-model`) or stored solution snapshots.
    """
    out = config.command_dir
    source = config.get_str("kondratiev_source", "singular-model")
    params_list = _kondratiev_params(config)
    summary: Summary = {"source": source}
    report_lines: List[Tuple[str, Any]] = []

    if source == "singular-model":
        h, _, _ = _resolution(config)
        exponent = config.get_float("singular_exponent", 2.0 / 3.0)
        u = grid_function(make_grid(config.domain, h), singular_model(exponent))
        rows = []
        for params in params_list:
            result = kondratiev_norm(u, params)
            oracle = radial_integral_converges(exponent, params)
            status = "DIVERGENT" if result.status is NormStatus.DIVERGENT else "FINITE"
            rows.append(
                (
                    params.m,
                    params.p,
                    params.a,
                    result.value,
                    status,
                    result.cells,
                    result.refinement_depth,
                    oracle,
                    oracle == (status == "FINITE"),
                )
            )
            report_lines.extend(_norm_lines(result))
            summary[f"a={params.a:g}"] = status if status == "DIVERGENT" else result.value
        write_csv(out / "kondratiev.csv", KONDRATIEV_COLUMNS + ["oracle_finite", "agrees"], rows)
    elif source == "snapshots":
        _, _, grid, snapshots = _source_snapshots(config)
        functions = [(t, GridFunction(grid, u)) for t, u in snapshots]
        rows, time_rows = [], []
        for params in params_list:
            for t, u in functions:
                result = kondratiev_norm(u, params)
                status = result.status.value.upper()
                rows.append(
                    (t, params.m, params.p, params.a, result.value, status, result.cells, result.refinement_depth)
                )
                report_lines.append(("t", t))
                report_lines.extend(_norm_lines(result))
            total = time_kondratiev_norm(functions, params)
            time_rows.append((params.m, params.p, params.a, total))
            summary[f"L2-time a={params.a:g}"] = total
        write_csv(out / "kondratiev.csv", ["t"] + KONDRATIEV_COLUMNS, rows)
        write_csv(out / "kondratiev_time.csv", ["m", "p", "a", "value"], time_rows)
    else:
        raise ConfigError(f"Unknown kondratiev_source '{source}'; use 'singular-model' or 'snapshots'")

    write_key_values(out / "kondratiev.txt", report_lines)
    write_index(out, {"command": config.command, **summary})
    return summary


# ----------------------------------------------------------------------------
# hoelder-time
# ----------------------------------------------------------------------------


def run_hoelder_time(config: ExperimentConfig) -> Summary:
    """
    β-quotients in time of the adaptivity-scale norm and of the coefficient vector;
    the vector quotient is the primary number.
    """
    out = config.command_dir
    source, _, grid, snapshots = _source_snapshots(config)
    point = AdaptivityScalePoint(s=config.get_float("hoelder_s", 1.0), p=config.get_float("besov_p", 2.0), d=2)

    norms, vectors = [], []
    for t, u in snapshots:
        coeffs, _ = _wavelet_coefficients(config, grid, u)
        norms.append((t, adaptivity_norm(coeffs, point)))
        vectors.append((t, coeffs.entries().value))
    write_two_column(out / "adaptivity_norm.dat", [t for t, _ in norms], [v for _, v in norms])

    rows = []
    summary: Summary = {"source": str(source), "snapshots": len(snapshots)}
    for beta in config.get_floats("hoelder_beta", [0.5]):
        scalar = hoelder_time_quotient(norms, beta)
        vector = hoelder_vector_quotient(vectors, beta)
        rows.append((beta, scalar.quotient, vector.quotient, vector.pair[0], vector.pair[1]))
        summary[f"vector_quotient β={beta:g}"] = vector.quotient
        summary[f"norm_quotient β={beta:g}"] = scalar.quotient
    write_csv(out / "hoelder.csv", ["beta", "norm_quotient", "vector_quotient", "s", "t"], rows)
    write_index(out, {"command": config.command, "source": str(source), "hoelder_s": point.s, "rows": len(rows)})
    return summary


# ----------------------------------------------------------------------------
# report
# ----------------------------------------------------------------------------


def run_report(config: ExperimentConfig) -> Summary:
    gamma: Optional[float] = config.get_float("gamma") if config.has("gamma") else None
    report = regularity_report(Path(config.out_dir), gamma=gamma)
    write_regularity_report(report, config.command_dir)
    write_index(config.command_dir, {"command": config.command, "report": report})
    return dict(report.items())
