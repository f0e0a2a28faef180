# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
"""Collocation corrector for connecting orbits of the planar normal forms.

The unknowns are the values of a continuous piecewise polynomial of degree d
at the equally spaced nodes of every mesh interval, plus one released
unfolding parameter. Collocation at the Gauss-Legendre points, projection
boundary conditions at the saddle and an integral phase condition against
the seed make the system square.
"""

import logging

import numpy as np
import pandas as pd
from numpy.polynomial import Polynomial
from numpy.polynomial.legendre import leggauss
from scipy.integrate import solve_ivp
from scipy.linalg import LinAlgError, solve

from bifurcation_toolkit.helpers.constants import CONVERGENCE_COLUMNS
from bifurcation_toolkit.helpers.defaults import (
    DEFAULT_COLLOCATION_DEGREE,
    DEFAULT_ORACLE_INTERVALS,
    DEFAULT_ORACLE_MAXITER,
    DEFAULT_ORACLE_TOL,
    DEFAULT_RK_TOL,
    DEFAULT_WINDOW_TANH_GAP,
)
from bifurcation_toolkit.helpers.errors import (
    ConvergenceError,
    StiffnessError,
    UsageError,
)
from bifurcation_toolkit.helpers.order_fit import fit_order
from bifurcation_toolkit.helpers.progress_batch_callback import (
    ProgressBatchCallback,
    notify,
)
from bifurcation_toolkit.planar_oracle.classes import (
    CorrectedOrbit,
    PlanarSeed,
    Trajectory,
)
from bifurcation_toolkit.planar_oracle.config import (
    parameter_step,
    released_parameter,
    rk_method,
)
from bifurcation_toolkit.predictors.config import GENERIC, PREDICTOR_CASES
from bifurcation_toolkit.predictors.model import NormalFormOrbit
from bifurcation_toolkit.predictors.series import SeriesKernels

log = logging.getLogger(__name__)


def planar_field(case: str, a: float, b: float, w, beta) -> np.ndarray:
    """Truncated normal form vector field at the columns of ``w``."""
    w0, w1 = np.asarray(w, dtype=float)
    linear = beta[0] if case == GENERIC else beta[0] * w0
    return np.array([w1, linear + beta[1] * w1 + a * w0**2 + b * w0 * w1])


def planar_jacobian(case: str, a: float, b: float, w, beta) -> np.ndarray:
    """Jacobians of the field at the columns of ``w``, shape (k, 2, 2)."""
    w0, w1 = np.atleast_2d(np.asarray(w, dtype=float).T).T
    out = np.zeros((len(w0), 2, 2))
    out[:, 0, 1] = 1.0
    out[:, 1, 0] = 2.0 * a * w0 + b * w1 + (0.0 if case == GENERIC else beta[0])
    out[:, 1, 1] = beta[1] + b * w0
    return out


def _parameter_derivative(case: str, w, released: int) -> np.ndarray:
    w0, w1 = np.asarray(w, dtype=float)
    out = np.zeros((2, len(w0)))
    if released == 1:
        out[1] = w1
    elif case == GENERIC:
        out[1] = 1.0
    else:
        out[1] = w0
    return out


def saddle(case: str, a: float, b: float, beta) -> np.ndarray:
    """The equilibrium of the field whose Jacobian has a negative determinant."""
    if case == GENERIC:
        if -beta[0] / a <= 0.0:
            msg = f"generic field has no equilibria at beta={list(beta)}"
            raise UsageError(msg)
        root = np.sqrt(-beta[0] / a)
        candidates = [root, -root]
    else:
        candidates = [0.0, -beta[0] / a]
    for w0 in candidates:
        point = np.array([w0, 0.0])
        if np.linalg.det(planar_jacobian(case, a, b, point, beta)[0]) < 0.0:
            return point
    msg = f"no saddle among the equilibria {candidates} at beta={list(beta)}"
    raise UsageError(msg)


def _left_eigenvectors(case: str, a: float, b: float, beta, point) -> tuple:
    # for [[0, 1], [c, d]] the row (lambda - d, 1) is a left eigenvector
    jac = planar_jacobian(case, a, b, point, beta)[0]
    c, d = jac[1, 0], jac[1, 1]
    root = np.sqrt(d**2 + 4.0 * c)
    stable, unstable = 0.5 * (d - root), 0.5 * (d + root)
    left = [np.array([lam - d, 1.0]) for lam in (stable, unstable)]
    return tuple(v / np.linalg.norm(v) for v in left)


class _Collocation:
    def __init__(self, seed: PlanarSeed, intervals: int, degree: int) -> None:
        if intervals < 2 or degree < 1:
            msg = f"need at least 2 intervals and degree 1, got {intervals}, {degree}"
            raise UsageError(msg)
        self.seed = seed
        self.d = degree
        self.mesh = np.linspace(*seed.window, intervals + 1)
        self.h = np.diff(self.mesh)
        self.released = released_parameter[seed.case]
        grid = np.arange(degree + 1) / degree
        gauss, weights = leggauss(degree)
        gauss = 0.5 * (gauss + 1.0)
        self.weights = 0.5 * weights
        self.lagrange = np.zeros((degree, degree + 1))
        self.slopes = np.zeros((degree, degree + 1))
        for k in range(degree + 1):
            basis = Polynomial.fromroots(np.delete(grid, k))
            basis = basis / basis(grid[k])
            self.lagrange[:, k] = basis(gauss)
            self.slopes[:, k] = basis.deriv()(gauss)
        self.index = np.arange(intervals)[:, None] * degree + np.arange(degree + 1)
        inner_nodes = self.mesh[:-1, None] + self.h[:, None] * grid[:-1]
        self.nodes = np.append(inner_nodes.ravel(), self.mesh[-1])
        gauss_times = self.mesh[:-1, None] + self.h[:, None] * gauss
        reference = seed.function(gauss_times.ravel())
        self.reference = reference.T.reshape(intervals, degree, 2)
        slope = planar_field(seed.case, seed.a, seed.b, reference, seed.beta)
        self.reference_slope = slope.T.reshape(intervals, degree, 2)

    @property
    def size(self) -> int:
        return 2 * len(self.nodes) + 1

    def split(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        beta = self.seed.beta.astype(float).copy()
        beta[self.released] = z[-1]
        return z[:-1].reshape(-1, 2), beta

    def _at_gauss(self, values: np.ndarray):
        local = values[self.index]
        inner = np.einsum("jk,nkc->njc", self.lagrange, local)
        slope = np.einsum("jk,nkc->njc", self.slopes, local) / self.h[:, None, None]
        return inner, slope

    def boundary(self, values: np.ndarray, beta: np.ndarray) -> np.ndarray:
        s = self.seed
        point = saddle(s.case, s.a, s.b, beta)
        stable, unstable = _left_eigenvectors(s.case, s.a, s.b, beta, point)
        return np.array([
            stable @ (values[0] - point),
            unstable @ (values[-1] - point),
        ])

    def residual(self, z: np.ndarray) -> np.ndarray:
        s = self.seed
        values, beta = self.split(z)
        inner, slope = self._at_gauss(values)
        field = planar_field(s.case, s.a, s.b, inner.reshape(-1, 2).T, beta)
        collocation = slope.reshape(-1, 2) - field.T
        phase = np.sum(
            self.h[:, None]
            * self.weights
            * np.sum((inner - self.reference) * self.reference_slope, axis=2)
        )
        return np.concatenate([
            collocation.ravel(),
            self.boundary(values, beta),
            [phase],
        ])

    def jacobian(self, z: np.ndarray) -> np.ndarray:
        s = self.seed
        d = self.d
        values, beta = self.split(z)
        inner, _ = self._at_gauss(values)
        points = inner.reshape(-1, 2).T
        field_jac = planar_jacobian(s.case, s.a, s.b, points, beta).reshape(
            len(self.h), d, 2, 2
        )
        eye = np.eye(2)
        out = np.zeros((self.size, self.size))
        for n, h in enumerate(self.h):
            block = np.einsum("jk,ce->jcke", self.slopes / h, eye) - np.einsum(
                "jk,jce->jcke", self.lagrange, field_jac[n]
            )
            rows = slice(2 * d * n, 2 * d * (n + 1))
            cols = slice(2 * d * n, 2 * d * n + 2 * (d + 1))
            out[rows, cols] = block.reshape(2 * d, 2 * (d + 1))
        out[: 2 * d * len(self.h), -1] = -_parameter_derivative(
            s.case, points, self.released
        ).T.ravel()

        point = saddle(s.case, s.a, s.b, beta)
        stable, unstable = _left_eigenvectors(s.case, s.a, s.b, beta, point)
        row = 2 * d * len(self.h)
        out[row, 0:2] = stable
        out[row + 1, -3:-1] = unstable
        step = parameter_step * max(abs(z[-1]), 1e-12)
        up, down = z.copy(), z.copy()
        up[-1] += step
        down[-1] -= step
        out[row : row + 2, -1] = (
            self.boundary(*self.split(up)) - self.boundary(*self.split(down))
        ) / (2.0 * step)

        weights = self.h[:, None] * self.weights
        phase = np.einsum("nj,jk,njc->nkc", weights, self.lagrange, self.reference_slope)
        for n in range(len(self.h)):
            for k in range(d + 1):
                column = 2 * self.index[n, k]
                out[row + 2, column : column + 2] += phase[n, k]
        return out


def correct_homoclinic(
    seed: PlanarSeed,
    intervals: int = DEFAULT_ORACLE_INTERVALS,
    degree: int = DEFAULT_COLLOCATION_DEGREE,
    tol: float = DEFAULT_ORACLE_TOL,
    maxiter: int = DEFAULT_ORACLE_MAXITER,
) -> CorrectedOrbit:
    """Newton-correct ``seed`` to a connecting orbit and report its distance.

    ``error`` is the sup norm of seed minus corrected orbit over the nodes,
    relative to the corrected amplitude max w0 - min w0.
    """
    problem = _Collocation(seed, intervals, degree)
    start = seed.function(problem.nodes)
    z = np.append(start.T.ravel(), seed.beta[problem.released])
    norm = np.inf
    for iteration in range(1, maxiter + 1):
        residual = problem.residual(z)
        norm = float(np.max(np.abs(residual)))
        log.debug("collocation iteration %s residual %.3e", iteration, norm)
        if norm <= tol:
            break
        try:
            z = z + solve(problem.jacobian(z), -residual)
        except LinAlgError as e:
            msg = f"collocation Jacobian is singular at iteration {iteration}"
            raise ConvergenceError(msg, magnitude=norm) from e
        if not np.all(np.isfinite(z)):
            msg = f"collocation Newton diverged at iteration {iteration}"
            raise ConvergenceError(msg, magnitude=norm)
    else:
        msg = f"collocation Newton did not converge in {maxiter} iterations"
        raise ConvergenceError(msg, magnitude=norm)

    values, beta = problem.split(z)
    w = values.T
    amplitude = float(np.max(w[0]) - np.min(w[0]))
    error = float(np.max(np.abs(start - w))) / amplitude
    log.info(
        "corrected %s orbit in %s iterations, relative distance %.3e",
        seed.case,
        iteration,
        error,
    )
    return CorrectedOrbit(
        case=seed.case,
        a=seed.a,
        b=seed.b,
        beta=beta,
        released=problem.released,
        mesh=problem.mesh,
        nodes=problem.nodes,
        w=w,
        degree=degree,
        iterations=iteration,
        residual=norm,
        error=error,
        amplitude=amplitude,
    )


def planar_seed(
    case: str,
    a: float,
    b: float,
    eps: float,
    order: int = 3,
    tanh_gap: float = DEFAULT_WINDOW_TANH_GAP,
) -> PlanarSeed:
    """Predicted orbit in normal form coordinates as a collocation seed."""
    if case not in PREDICTOR_CASES:
        msg = f"unknown predictor case {case!r}"
        raise UsageError(msg)
    if eps <= 0.0:
        msg = f"a seed needs a positive perturbation, got {eps}"
        raise UsageError(msg)
    orbit = NormalFormOrbit(a, b, SeriesKernels(eps, order), case)
    return PlanarSeed(
        case=case,
        a=a,
        b=b,
        beta=orbit.beta,
        window=orbit.window(tanh_gap),
        function=lambda eta: np.vstack(orbit.coordinates(eta)),
    )


def rk_integrate(field, state0, tspan, tol: float = DEFAULT_RK_TOL) -> Trajectory:
    """Adaptive embedded Runge-Kutta run of ``field(t, y)`` over ``tspan``."""
    result = solve_ivp(
        field,
        tspan,
        np.asarray(state0, dtype=float),
        method=rk_method,
        rtol=tol,
        atol=tol,
        dense_output=True,
    )
    if result.status < 0:
        msg = f"integration stopped at t={result.t[-1]}: {result.message}"
        raise StiffnessError(msg, magnitude=float(result.t[-1]))
    return Trajectory(t=result.t, y=result.y, status=result.status, message=result.message)


def convergence_table(
    case: str,
    a: float,
    b: float,
    eps_values,
    intervals: int = DEFAULT_ORACLE_INTERVALS,
    callbacks: list[ProgressBatchCallback] | None = None,
) -> pd.DataFrame:
    """Relative distance of the order 1 and order 3 seeds to the corrected orbit.

    Rows whose correction fails keep NaN distances and are logged.
    """
    rows = []
    eps_values = list(eps_values)
    for i, eps in enumerate(eps_values):
        notify(callbacks, i + 1, len(eps_values), f"eps={eps}")
        row = {"eps": float(eps), "A0": np.nan}
        for order in (1, 3):
            key = f"delta_order{order}"
            try:
                corrected = correct_homoclinic(
                    planar_seed(case, a, b, eps, order), intervals=intervals
                )
            except ConvergenceError as e:
                log.warning("oracle failed at eps=%s order %s: %s", eps, order, e)
                row[key] = np.nan
                continue
            row[key] = corrected.error
            row["A0"] = corrected.amplitude
        rows.append(row)
    return pd.DataFrame(rows, columns=CONVERGENCE_COLUMNS)


def convergence_slopes(table: pd.DataFrame, against: str = "eps") -> dict[str, float]:
    """Log-log slopes of the distances against ``against`` (eps or A0), one per order."""
    if against not in CONVERGENCE_COLUMNS[:2]:
        msg = f"slopes are fitted against eps or A0, got {against!r}"
        raise UsageError(msg)
    return {
        column: fit_order(table[against], table[column])
        for column in CONVERGENCE_COLUMNS[2:]
    }
