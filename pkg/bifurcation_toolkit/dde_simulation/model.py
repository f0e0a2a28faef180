# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
"""Method-of-steps integration and defect evaluation for the full delay equation."""

import logging
import math

import numpy as np
import pandas as pd
from numpy.polynomial import Chebyshev
from scipy.interpolate import CubicSpline

from bifurcation_toolkit.dde_model.classes import DdeModel
from bifurcation_toolkit.dde_model.model import eval_rhs
from bifurcation_toolkit.dde_simulation.classes import DdeSolution, hermite
from bifurcation_toolkit.dde_simulation.config import (
    BOUND_EVENT,
    CONSTANT_HISTORY,
    FUNCTION_HISTORY,
    SAMPLED_HISTORY,
    ode_steps,
)
from bifurcation_toolkit.helpers.constants import state_columns
from bifurcation_toolkit.helpers.defaults import (
    DEFAULT_DDE_BOUND,
    DEFAULT_DDE_STEP_FRACTION,
    DEFAULT_DEFECT_DEGREE,
)
from bifurcation_toolkit.helpers.errors import DimensionError, UsageError

log = logging.getLogger(__name__)


def history_function(model: DdeModel, history, t0: float):
    """Normalize a history to a callable and name its kind.

    ``history`` is a constant n-vector, a callable of t, or a pair
    (times, values) with values n x len(times) sampled up to ``t0``.
    """
    if callable(history):
        return history, FUNCTION_HISTORY
    if isinstance(history, tuple):
        times, values = (np.asarray(v, dtype=float) for v in history)
        if values.shape != (model.n, len(times)):
            msg = f"sampled history has shape {values.shape}, expected ({model.n}, {len(times)})"
            raise DimensionError(msg)
        if times[0] > t0 - model.max_delay or times[-1] < t0:
            msg = f"sampled history covers [{times[0]}, {times[-1]}], need [{t0 - model.max_delay}, {t0}]"
            raise UsageError(msg)
        spline = CubicSpline(times, values, axis=1)
        return spline, SAMPLED_HISTORY
    value = np.asarray(history, dtype=float)
    if value.shape != (model.n,):
        msg = f"constant history has shape {value.shape}, expected ({model.n},)"
        raise DimensionError(msg)
    return (lambda _t: value), CONSTANT_HISTORY


def integrate(
    model: DdeModel,
    alpha,
    history,
    tspan: tuple[float, float],
    step: float | None = None,
    bound: float = DEFAULT_DDE_BOUND,
    reverse: bool = False,
    step_fraction: int = DEFAULT_DDE_STEP_FRACTION,
) -> DdeSolution:
    """Classical RK4 with cubic Hermite lookups of the delayed states.

    With ``reverse`` the right-hand side is multiplied by -1; this only
    gives a heuristic picture of the backward dynamics. The run stops once
    the sup norm of the state exceeds ``bound``.
    """
    t0, t1 = (float(v) for v in tspan)
    if t1 <= t0:
        msg = f"time span must be increasing, got {tspan}"
        raise UsageError(msg)
    if bound <= 0.0:
        msg = f"bound must be positive, got {bound}"
        raise UsageError(msg)
    min_delay = model.min_positive_delay
    if step is None:
        step = min_delay / step_fraction if min_delay else (t1 - t0) / ode_steps
    if step <= 0.0 or (min_delay is not None and step > min_delay):
        msg = f"step {step} must be positive and at most the shortest delay {min_delay}"
        raise UsageError(msg)
    count = math.ceil((t1 - t0) / step - 1e-9)
    h = (t1 - t0) / count
    past, kind = history_function(model, history, t0)
    delays = model.delays[1:]
    sign = -1.0 if reverse else 1.0
    alpha = np.asarray(alpha, dtype=float)

    t = t0 + h * np.arange(count + 1)
    x = np.zeros((model.n, count + 1))
    slopes = np.zeros_like(x)

    def lookup(time: float, k: int) -> np.ndarray:
        # points 0..k are final
        if time <= t0 or k == 0:
            return np.asarray(past(min(time, t0)), dtype=float)
        i = min(int((time - t0) // h), k - 1)
        theta = (time - t[i]) / h
        return hermite(theta, h, x[:, i], x[:, i + 1], slopes[:, i], slopes[:, i + 1])

    def field(time: float, state: np.ndarray, k: int) -> np.ndarray:
        columns = [state] + [lookup(time - tau, k) for tau in delays]
        return sign * eval_rhs(model, np.column_stack(columns), alpha)

    x[:, 0] = np.asarray(past(t0), dtype=float)
    slopes[:, 0] = field(t0, x[:, 0], 0)
    events: list[str] = []
    last = count
    for k in range(count):
        tk, xk = t[k], x[:, k]
        k1 = slopes[:, k]
        k2 = field(tk + 0.5 * h, xk + 0.5 * h * k1, k)
        k3 = field(tk + 0.5 * h, xk + 0.5 * h * k2, k)
        k4 = field(tk + h, xk + h * k3, k)
        x[:, k + 1] = xk + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        slopes[:, k + 1] = field(t[k + 1], x[:, k + 1], k + 1)
        if np.max(np.abs(x[:, k + 1])) > bound:
            events.append(f"{BOUND_EVENT} at t={t[k + 1]:.6g}")
            log.warning("integration stopped at t=%s: state left the bound %s", t[k + 1], bound)
            last = k + 1
            break
    log.debug("integrated %s steps of size %s", last, h)
    return DdeSolution(
        t=t[: last + 1],
        x=x[:, : last + 1],
        slopes=slopes[:, : last + 1],
        history=past,
        history_kind=kind,
        events=events,
        terminated=bool(events),
        reverse=reverse,
    )


def defect(
    model: DdeModel,
    alpha,
    times,
    profile,
    degree: int = DEFAULT_DEFECT_DEGREE,
) -> float:
    """Sup norm of x'(t) - F(x_t, alpha) for a sampled profile.

    The profile (n x len(times)) is fitted by a Chebyshev series on its
    window; the defect is taken at the samples that lie at least one maximal
    delay inside the window.
    """
    times = np.asarray(times, dtype=float)
    profile = np.asarray(profile, dtype=float)
    if profile.shape != (model.n, len(times)):
        msg = f"profile has shape {profile.shape}, expected ({model.n}, {len(times)})"
        raise DimensionError(msg)
    start, end = float(times[0]), float(times[-1])
    if end - start <= model.max_delay:
        msg = f"profile window {end - start} is not longer than the delay {model.max_delay}"
        raise UsageError(msg)
    deg = min(degree, len(times) - 1)
    fits = [Chebyshev.fit(times, row, deg) for row in profile]
    slopes = [fit.deriv() for fit in fits]
    interior = times[times >= start + model.max_delay]
    worst = 0.0
    alpha = np.asarray(alpha, dtype=float)
    for time in interior:
        columns = np.array([[fit(time - tau) for tau in model.delays] for fit in fits])
        rate = np.array([slope(time) for slope in slopes])
        worst = max(worst, float(np.max(np.abs(rate - eval_rhs(model, columns, alpha)))))
    return worst


def trajectory_frame(solution: DdeSolution) -> pd.DataFrame:
    frame = pd.DataFrame(solution.x.T, columns=state_columns(solution.x.shape[0]))
    frame.insert(0, "t", solution.t)
    return frame
