# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
import logging

import numpy as np
import pandas as pd
from scipy.optimize import brentq

from bifurcation_toolkit.helpers.constants import state_columns
from bifurcation_toolkit.helpers.defaults import (
    DEFAULT_MONOTONE_GRID,
    DEFAULT_PREDICTOR_MESH,
    DEFAULT_TIME_MAP_TOL,
    DEFAULT_WINDOW_TANH_GAP,
)
from bifurcation_toolkit.helpers.errors import (
    ConvergenceError,
    PredictorRangeError,
    UsageError,
)
from bifurcation_toolkit.normal_form.classes import BtNormalForm
from bifurcation_toolkit.normal_form.config import GENERIC as GENERIC_NF
from bifurcation_toolkit.normal_form.config import TRANSCRITICAL as TRANSCRITICAL_NF
from bifurcation_toolkit.predictors.classes import (
    EquilibriumCurvePoint,
    HomoclinicPredictor,
)
from bifurcation_toolkit.predictors.config import (
    CURVE_COLUMNS_PREFIX,
    FOLD,
    GENERIC,
    HOPF,
    HOPF_SHIFTED,
    HOPF_TRIVIAL,
    PREDICTOR_CASES,
    TRANSCRITICAL_MINUS,
    TRANSCRITICAL_PLUS,
    TRIVIAL,
    time_map_newton_maxiter,
    window_search_steps,
)
from bifurcation_toolkit.predictors.series import SeriesKernels

log = logging.getLogger(__name__)


class NormalFormOrbit:
    """Predicted homoclinic orbit of the planar normal form in its own time eta.

    Only the quadratic coefficients enter; ``case`` selects the unfolding
    and, for the transcritical one, the branch.
    """

    def __init__(self, a: float, b: float, kernels: SeriesKernels, case: str) -> None:
        if case not in PREDICTOR_CASES:
            msg = f"unknown predictor case {case!r}, expected one of {PREDICTOR_CASES}"
            raise UsageError(msg)
        self.a = a
        self.b = b
        self.case = case
        self.kernels = kernels
        eps = kernels.eps
        self.rate = a / b * eps
        tau = kernels.tau()
        if case == GENERIC:
            self.shift = 0.0
            self.beta = np.array([-4.0 * a**3 / b**4 * eps**4, a / b * eps**2 * tau])
        else:
            sign = 1.0 if case == TRANSCRITICAL_PLUS else -1.0
            self.shift = -2.0 * sign
            self.beta = np.array([
                sign * 4.0 * a**2 / b**2 * eps**2,
                a / b * (tau + 2.0 * sign) * eps**2,
            ])

    def coordinates(self, eta):
        a, b, eps = self.a, self.b, self.kernels.eps
        zeta = np.tanh(self.kernels.xi(self.rate * np.asarray(eta, dtype=float)))
        w0 = a / b**2 * (self.kernels.u_tilde(zeta) + self.shift) * eps**2
        w1 = a**2 / b**3 * self.kernels.v_tilde(zeta) * eps**3
        return w0, w1

    def window(self, tanh_gap: float = DEFAULT_WINDOW_TANH_GAP) -> tuple[float, float]:
        """eta range on which tanh(xi) stays within ``tanh_gap`` of +-1."""
        edge = float(np.arctanh(1.0 - tanh_gap))
        s_ends = (_window_end(self.kernels, -edge), _window_end(self.kernels, edge))
        s_grid = np.linspace(*s_ends, DEFAULT_MONOTONE_GRID)
        _check_monotone(self.kernels.xi(s_grid), "xi(s)", self.kernels.eps)
        lo, hi = sorted(s / self.rate for s in s_ends)
        return lo, hi


class TimeMap:
    """t(eta) of the orbital reparametrization along a predicted orbit."""

    def __init__(self, nf: BtNormalForm, orbit: NormalFormOrbit) -> None:
        self.nf = nf
        self.orbit = orbit
        eps = orbit.kernels.eps
        self.linear_rate = nf.time_scale(0.0, 0.0, *orbit.beta) + (
            nf.theta1000 * nf.a / nf.b**2 * eps**2 * orbit.shift
        )

    def time(self, eta):
        eta = np.asarray(eta, dtype=float)
        kernels = self.orbit.kernels
        xi = kernels.xi(self.orbit.rate * eta)
        return self.linear_rate * eta + self.nf.theta1000 * (
            kernels.eps / self.nf.b
        ) * kernels.u_integral(xi)

    def rate(self, eta: float) -> float:
        w0, w1 = self.orbit.coordinates(eta)
        return self.nf.time_scale(float(w0), float(w1), *self.orbit.beta)


def _window_end(kernels: SeriesKernels, target: float) -> float:
    direction = np.sign(target)
    hi = abs(target)
    for _ in range(window_search_steps):
        if direction * kernels.xi(direction * hi) >= abs(target):
            return brentq(lambda s: kernels.xi(s) - target, 0.0, direction * hi)
        hi *= 2.0
    msg = f"xi(s) does not reach {target} at eps={kernels.eps}, the series is out of range"
    raise PredictorRangeError(msg)


def _check_monotone(values: np.ndarray, what: str, eps: float) -> None:
    steps = np.diff(values)
    if np.any(steps <= 0.0) or not np.all(np.isfinite(steps)):
        msg = f"{what} is not strictly increasing on the window at eps={eps}"
        raise PredictorRangeError(msg)


def _invert(
    time_map: TimeMap, t: float, lo: float, hi: float, guess: float, tol: float
) -> float:
    eta = min(max(guess, lo), hi)
    scale = max(1.0, abs(t))
    for _ in range(time_map_newton_maxiter):
        residual = float(time_map.time(eta)) - t
        if abs(residual) <= tol * scale:
            return eta
        step = eta - residual / time_map.rate(eta)
        if not lo <= step <= hi:
            break
        eta = step
    log.warning("time map Newton left its bracket at t=%s, falling back to brentq", t)
    eta = brentq(lambda e: float(time_map.time(e)) - t, lo, hi, xtol=tol * scale)
    residual = float(time_map.time(eta)) - t
    if abs(residual) > 10.0 * tol * scale:
        msg = f"time map inversion failed at t={t}, residual {residual:.3e}"
        raise ConvergenceError(msg, magnitude=abs(residual))
    return eta


def _bt_point_sentinel(nf: BtNormalForm, case: str, order: int, points: int):
    mesh = np.linspace(-1.0, 1.0, points)
    return HomoclinicPredictor(
        case=case,
        eps=0.0,
        order=order,
        alpha=nf.parameters.astype(float),
        beta=np.zeros(2),
        mesh=mesh,
        eta=mesh.copy(),
        w=np.zeros((2, points)),
        profile=np.repeat(nf.equilibrium[:, None], points, axis=1),
        amplitude=0.0,
        half_length=0.0,
    )


def _predict(
    nf: BtNormalForm,
    eps: float,
    case: str,
    order: int,
    points: int,
    tanh_gap: float,
    tol: float,
) -> HomoclinicPredictor:
    if eps < 0.0 or not np.isfinite(eps):
        msg = f"the perturbation parameter must be a non-negative number, got {eps}"
        raise UsageError(msg)
    if points < 3:
        msg = f"a profile needs at least 3 mesh points, got {points}"
        raise UsageError(msg)
    kernels = SeriesKernels(eps, order)
    if eps == 0.0:
        return _bt_point_sentinel(nf, case, order, points)
    orbit = NormalFormOrbit(nf.a, nf.b, kernels, case)
    time_map = TimeMap(nf, orbit)

    lo, hi = orbit.window(tanh_gap)
    eta_grid = np.linspace(lo, hi, DEFAULT_MONOTONE_GRID)
    times = time_map.time(eta_grid)
    _check_monotone(times, "t(eta)", eps)

    t_lo, t_hi = float(times[0]), float(times[-1])
    nodes = np.cos(np.pi * np.arange(points) / (points - 1))
    mesh = 0.5 * (t_lo + t_hi) - 0.5 * (t_hi - t_lo) * nodes
    eta = np.empty(points)
    guess = lo
    for i, t in enumerate(mesh):
        eta[i] = _invert(time_map, float(t), lo, hi, guess, tol)
        guess = eta[i]

    w0, w1 = orbit.coordinates(eta)
    profile = np.column_stack([
        nf.state(float(u), float(v), *orbit.beta) for u, v in zip(w0, w1, strict=True)
    ])
    log.info(
        "%s predictor at eps=%s order %s: window eta in [%.3f, %.3f]",
        case,
        eps,
        order,
        lo,
        hi,
    )
    return HomoclinicPredictor(
        case=case,
        eps=eps,
        order=order,
        alpha=nf.parameter_map(*orbit.beta),
        beta=orbit.beta,
        mesh=mesh,
        eta=eta,
        w=np.vstack([w0, w1]),
        profile=profile,
        amplitude=float(np.max(w0) - np.min(w0)),
        half_length=0.5 * (hi - lo),
    )


def homoclinic_generic(
    nf: BtNormalForm,
    eps: float,
    order: int = 3,
    points: int = DEFAULT_PREDICTOR_MESH,
    tanh_gap: float = DEFAULT_WINDOW_TANH_GAP,
    tol: float = DEFAULT_TIME_MAP_TOL,
) -> HomoclinicPredictor:
    """Homoclinic predictor of the generic unfolding at perturbation ``eps``."""
    if nf.case != GENERIC_NF:
        msg = f"generic predictor needs a generic normal form, got {nf.case!r}"
        raise UsageError(msg)
    return _predict(nf, eps, GENERIC, order, points, tanh_gap, tol)


def homoclinic_transcritical(
    nf: BtNormalForm,
    eps: float,
    sign: int = 1,
    order: int = 3,
    points: int = DEFAULT_PREDICTOR_MESH,
    tanh_gap: float = DEFAULT_WINDOW_TANH_GAP,
    tol: float = DEFAULT_TIME_MAP_TOL,
) -> HomoclinicPredictor:
    """Homoclinic predictor of the transcritical unfolding, branch ``sign`` = +1 or -1."""
    if nf.case != TRANSCRITICAL_NF:
        msg = f"transcritical predictor needs a transcritical normal form, got {nf.case!r}"
        raise UsageError(msg)
    if sign not in (1, -1):
        msg = f"branch sign must be +1 or -1, got {sign}"
        raise UsageError(msg)
    case = TRANSCRITICAL_PLUS if sign == 1 else TRANSCRITICAL_MINUS
    return _predict(nf, eps, case, order, points, tanh_gap, tol)


def homoclinic(
    nf: BtNormalForm, eps: float, order: int = 3, sign: int = 1, **kwargs
) -> HomoclinicPredictor:
    """Dispatch on the case of ``nf``."""
    if nf.case == GENERIC_NF:
        return homoclinic_generic(nf, eps, order, **kwargs)
    return homoclinic_transcritical(nf, eps, sign, order, **kwargs)


def _curve_point(nf, label, eps, w, beta, omega=None) -> EquilibriumCurvePoint:
    return EquilibriumCurvePoint(
        label=label,
        eps=eps,
        state=nf.state(*w, *beta),
        alpha=nf.parameter_map(*beta),
        w=np.asarray(w, dtype=float),
        beta=np.asarray(beta, dtype=float),
        omega=omega,
    )


def equilibrium_curves(nf: BtNormalForm, eps: float) -> list[EquilibriumCurvePoint]:
    """Predicted fold, Hopf and transcritical points at perturbation ``eps``."""
    a, b = nf.a, nf.b
    e2 = eps**2
    if nf.case == GENERIC_NF:
        return [
            _curve_point(nf, FOLD, eps, (0.0, 0.0), (0.0, eps)),
            _curve_point(
                nf,
                HOPF,
                eps,
                (-e2 / (2.0 * a), 0.0),
                (-(e2**2) / (4.0 * a), b * e2 / (2.0 * a)),
                omega=eps,
            ),
        ]
    return [
        _curve_point(nf, TRIVIAL, eps, (0.0, 0.0), (0.0, eps)),
        _curve_point(nf, HOPF_TRIVIAL, eps, (0.0, 0.0), (-e2, 0.0), omega=eps),
        _curve_point(
            nf, HOPF_SHIFTED, eps, (-e2 / a, 0.0), (e2, b / a * e2), omega=eps
        ),
    ]


def profile_frame(predictor: HomoclinicPredictor) -> pd.DataFrame:
    """Columns t, x_1..x_n; eps, order and alpha are kept in ``attrs``."""
    frame = pd.DataFrame(
        predictor.profile.T, columns=state_columns(predictor.profile.shape[0])
    )
    frame.insert(0, "t", predictor.mesh)
    frame.attrs = {
        "eps": predictor.eps,
        "order": predictor.order,
        "case": predictor.case,
        "alpha_1": float(predictor.alpha[0]),
        "alpha_2": float(predictor.alpha[1]),
    }
    return frame


def curve_frame(points: list[EquilibriumCurvePoint]) -> pd.DataFrame:
    rows = []
    for point in points:
        rows.append([
            point.label,
            point.eps,
            np.nan if point.omega is None else point.omega,
            *point.alpha[:2],
            *point.state,
        ])
    n = len(points[0].state) if points else 0
    return pd.DataFrame(rows, columns=[*CURVE_COLUMNS_PREFIX, *state_columns(n)])
