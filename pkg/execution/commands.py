# execution/commands.py
"""
One runner per single-point CLI command.

A runner takes validated parameters and returns a CommandResult: the CSV
table, the JSON document, a flat summary (one sweep row, also copied into
the manifest) and an optional gnuplot script.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config.settings import WALKING_SENSITIVITY_FRACTION
from core.errors import ConfigError
from core.types import IntegratorConfig
from strategy.exponents import exponent_report
from strategy.fixed_points import collision_scan, extrapolate_to_two, fixed_points, leading_power
from strategy.quantum_fock import (
    ClockHamiltonianSpec,
    build_clock_hamiltonian,
    similarity_transform,
    spectrum_report,
)
from strategy.rg_flow import RGState, integrate_rg_flow
from strategy.toy_classical import ToyParams, partition_exact, partition_quadrature
from strategy.walking import (
    KAPPA_C,
    WalkingState,
    integrate_walking,
    invariant_config,
    invariant_value,
    product_invariant,
)
from strategy.xi_scaling import slope_change, xi_scaling_numeric

logger = logging.getLogger(__name__)


@dataclass
class CommandResult:
    command: str
    columns: Tuple[str, ...]
    rows: List[Dict[str, Any]]
    document: Dict[str, Any]
    summary: Dict[str, Any] = field(default_factory=dict)
    plot: Optional[str] = None


def _gnuplot(command: str, xlabel: str, series: Sequence[Tuple[str, int, str]], logscale: str = "") -> str:
    lines = [
        f"# {command}.gp",
        "set datafile separator ','",
        f"set xlabel '{xlabel}'",
        "set key left top",
    ]
    if logscale:
        lines.append(f"set logscale {logscale}")
    parts = []
    for i, (xexpr, ycol, title) in enumerate(series):
        source = f"'{command}.csv'" if i == 0 else "''"
        parts.append(f"{source} using {xexpr}:{ycol} with linespoints title '{title}'")
    lines.append("plot " + ", \\\n     ".join(parts))
    return "\n".join(lines) + "\n"


# ------------------------
# toy-z
# ------------------------
def run_toy_z(params: Dict[str, Any], workers: int = 1) -> CommandResult:
    p = ToyParams(beta=params["beta"], J=params["J"], K=params["K"])
    exact = partition_exact(p)
    quad = partition_quadrature(p, params["n_points"])
    diff = abs(quad.value - exact)

    summary = {"exact": exact, "quad_re": quad.re, "quad_im": quad.im, "abs_diff": diff}
    row = {"beta": p.beta, "J": p.J, "K": p.K, **summary}
    document = {
        "parameters": dict(params),
        "coupling_gap": p.coupling_gap,
        "exact": exact,
        "quadrature": quad.to_dict(),
        "abs_diff": diff,
    }
    return CommandResult("toy-z", tuple(row), [row], document, summary)


# ------------------------
# qm-spectrum
# ------------------------
def run_qm_spectrum(params: Dict[str, Any], workers: int = 1) -> CommandResult:
    spec = ClockHamiltonianSpec(eps=params["eps"], J=params["J"], K=params["K"],
                                N=params["N"], cutoff=params["cutoff"])
    h = build_clock_hamiltonian(spec)
    if params["transform"]:
        h = similarity_transform(h)
    report = spectrum_report(h, params["tol_imag"])

    rows = [{"index": i, "re": z.re, "im": z.im} for i, z in enumerate(report.eigenvalues)]
    document = report.to_dict()
    document["transformed"] = bool(params["transform"])
    document["similarity_lambda"] = h.similarity_lambda
    document["norm"] = h.norm()
    summary = {
        "pt_phase_label": report.pt_phase_label,
        "max_abs_imag": report.max_abs_imag,
        "n_complex_pairs": report.n_complex_pairs,
        "spectral_radius": report.spectral_radius,
    }
    return CommandResult("qm-spectrum", ("index", "re", "im"), rows, document, summary)


# ------------------------
# flow
# ------------------------
def run_flow(params: Dict[str, Any], workers: int = 1) -> CommandResult:
    s0 = RGState(kappa=params["kappa"], y=params["y"], y_tilde=params["ytilde"],
                 pt_phase=params["phase"], d=params["d"])
    cfg = IntegratorConfig(rel_tol=params["rel_tol"], abs_tol=params["abs_tol"],
                           max_step=params["max_step"])
    trace = integrate_rg_flow(s0, params["lmax"], cfg)

    columns = ("l",) + trace.columns
    rows = [
        {"l": float(l), **{name: float(v) for name, v in zip(trace.columns, state)}}
        for l, state in zip(trace.l, trace.states)
    ]
    final = {name: float(v) for name, v in zip(trace.columns, trace.final_state)}
    document = {
        "parameters": dict(params),
        "reason": trace.reason,
        "final_l": trace.final_l,
        "final_state": final,
        "n_samples": len(trace),
    }
    summary = {"reason": trace.reason, "final_l": trace.final_l, **final}
    plot = _gnuplot("flow", "l", [("1", 2, "kappa"), ("1", 3, "y"), ("1", 4, "y_tilde")])
    return CommandResult("flow", columns, rows, document, summary, plot)


# ------------------------
# fixed-points
# ------------------------
def run_fixed_points(params: Dict[str, Any], workers: int = 1) -> CommandResult:
    points = fixed_points(params["d"], params["phase"])

    columns = ["label", "kappa", "y", "y_tilde", "classification", "residual"]
    for i in range(1, 4):
        columns += [f"eig{i}_re", f"eig{i}_im"]

    rows = []
    summary: Dict[str, Any] = {}
    for p in points:
        kappa, y, yt = p.location
        row = {"label": p.label, "kappa": kappa, "y": y, "y_tilde": yt,
               "classification": p.classification, "residual": p.residual}
        for i, z in enumerate(p.eigenvalues, start=1):
            row[f"eig{i}_re"] = z.re
            row[f"eig{i}_im"] = z.im
        rows.append(row)
        summary.update({f"{p.label}_kappa": kappa, f"{p.label}_y": y, f"{p.label}_y_tilde": yt,
                        f"{p.label}_class": p.classification})

    by_label = {p.label: p for p in points}
    if "P2" in by_label:
        summary["kappa_gap"] = by_label["P1"].location[0] - by_label["P2"].location[0]
        summary["lambda0_re"] = float(by_label["P2"].jacobian[1, 1])

    document = {
        "d": params["d"],
        "pt_phase": params["phase"],
        "fixed_points": [p.to_dict() for p in points],
    }
    return CommandResult("fixed-points", tuple(columns), rows, document, summary)


# ------------------------
# exponents
# ------------------------
def run_exponents(params: Dict[str, Any], workers: int = 1) -> CommandResult:
    report = exponent_report(params["d"], params["regime"], params["y_star"])
    summary = {
        "nu": report.nu,
        "eta": report.eta,
        "beta_op": report.beta_op,
        "nu_epsilon": report.nu_epsilon,
        "order_parameter": report.order_parameter,
        "near_collision": report.near_collision,
    }
    row = {
        "d": report.d,
        "regime": report.regime,
        **summary,
        "source_re": report.source_eigenvalue.re,
        "source_im": report.source_eigenvalue.im,
    }
    return CommandResult("exponents", tuple(row), [row], report.to_dict(), summary)


# ------------------------
# walking-flow
# ------------------------
def run_walking_flow(params: Dict[str, Any], workers: int = 1) -> CommandResult:
    s0 = WalkingState(X=params["X"], Y=params["Y"], Y_tilde=params["Ytilde"])
    escape = params["escape"]
    trace = integrate_walking(s0, params["lmax"], approximate=params["approximate"],
                              cfg=invariant_config(),
                              stop=lambda _l, v: bool(np.max(np.abs(v)) > escape))

    X, Y, Yt = trace.states[:, 0], trace.states[:, 1], trace.states[:, 2]
    c2 = X * X - Y * Y + Yt * Yt
    rows = [
        {"l": float(l), "X": float(x), "Y": float(y), "Y_tilde": float(yt), "c2": float(c)}
        for l, x, y, yt, c in zip(trace.l, X, Y, Yt, c2)
    ]
    surface = invariant_value(s0)
    drift = float(np.max(np.abs(c2 - c2[0])))
    document = {
        "parameters": dict(params),
        "c2": surface.c2,
        "sheet": surface.sheet,
        "product_invariant": product_invariant(s0),
        "c2_drift": drift,
        "reason": trace.reason,
        "final_l": trace.final_l,
        "n_samples": len(trace),
    }
    summary = {"c2": surface.c2, "sheet": surface.sheet, "c2_drift": drift,
               "reason": trace.reason, "final_l": trace.final_l}
    plot = _gnuplot("walking-flow", "l", [("1", 2, "X"), ("1", 3, "Y"), ("1", 4, "Y_tilde")])
    return CommandResult("walking-flow", ("l", "X", "Y", "Y_tilde", "c2"), rows, document, summary, plot)


# ------------------------
# xi-scan
# ------------------------
def run_xi_scan(params: Dict[str, Any], workers: int = 1) -> CommandResult:
    k_min, k_max, n_k = params["k_min"], params["k_max"], params["n_k"]
    if n_k < 2 or not k_min < k_max:
        raise ConfigError("xi scan needs k_min < k_max and n_k >= 2", k_min=k_min, k_max=k_max, n_k=n_k)
    deltas = np.logspace(math.log10(k_min), math.log10(k_max), n_k)
    grid = [KAPPA_C + float(dk) for dk in deltas]
    result = xi_scaling_numeric(K_grid=grid, threshold=params["threshold"], b=params["b"],
                                x_init=params["x_init"], workers=workers)

    rows = [
        {"K_minus_Kc": dk, "l_star": ls, "log_inv_xi": v}
        for (dk, v), ls in zip(result.samples, result.l_stars)
    ]
    document = {"parameters": dict(params), **result.to_dict()}
    summary = {
        "fit_slope": result.fit_slope,
        "fit_intercept": result.fit_intercept,
        "r_squared": result.r_squared,
        "n_samples": len(result.samples),
        "n_dropped": len(result.dropped),
    }
    if params["sensitivity"]:
        moved = xi_scaling_numeric(K_grid=grid, threshold=WALKING_SENSITIVITY_FRACTION * params["threshold"],
                                   b=params["b"], x_init=params["x_init"], workers=workers)
        summary["threshold_sensitivity"] = slope_change(result, moved)
        document["threshold_sensitivity"] = summary["threshold_sensitivity"]
    plot = _gnuplot("xi-scan", "K - K_c", [("1", 3, "ln(1/xi)")], logscale="x")
    return CommandResult("xi-scan", ("K_minus_Kc", "l_star", "log_inv_xi"), rows, document, summary, plot)


# ------------------------
# collision-scan
# ------------------------
def run_collision_scan(params: Dict[str, Any], workers: int = 1) -> CommandResult:
    d_values = sorted(params["d_values"], reverse=True)
    rows = collision_scan(d_values)
    eps = [r["d"] - 2.0 for r in rows]

    summary: Dict[str, Any] = {
        "kappa1_at_2": extrapolate_to_two(d_values, [r["kappa1"] for r in rows]),
        "kappa2_at_2": extrapolate_to_two(d_values, [r["kappa2"] for r in rows]),
        "gap_power": None,
        "lambda0_power": None,
    }
    if len(rows) >= 2:
        summary["gap_power"] = leading_power(eps, [r["gap"] for r in rows])
        summary["lambda0_power"] = leading_power(eps, [r["lambda0_re"] for r in rows])

    document = {"rows": rows, **summary}
    columns = ("d", "kappa1", "kappa2", "gap", "y1", "y_tilde2", "lambda0_re")
    plot = _gnuplot("collision-scan", "d - 2",
                    [("($1-2)", 4, "kappa1 - kappa2"), ("($1-2)", 7, "lambda0")], logscale="xy")
    return CommandResult("collision-scan", columns, rows, document, summary, plot)


RUNNERS: Dict[str, Callable[..., CommandResult]] = {
    "toy-z": run_toy_z,
    "qm-spectrum": run_qm_spectrum,
    "flow": run_flow,
    "fixed-points": run_fixed_points,
    "exponents": run_exponents,
    "walking-flow": run_walking_flow,
    "xi-scan": run_xi_scan,
    "collision-scan": run_collision_scan,
}


def run_command(command: str, params: Dict[str, Any], workers: int = 1) -> CommandResult:
    logger.info("run_command: %s", command)
    return RUNNERS[command](params, workers)
