# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
"""Free constants of the cascade from Fredholm solvability conditions.

Every stage writes a few unknowns (phi0 multiples, theta and K
coefficients) into the expansion and asks that the Fredholm residuals of
some target systems vanish. The residuals are affine in the unknowns, so
each stage is a small linear system ``M x = zeta`` with ``zeta = -r(0)``.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from bifurcation_toolkit.helpers.defaults import (
    DEFAULT_FSC_TOL,
    DEFAULT_SOLVABILITY_MAXITER,
)
from bifurcation_toolkit.helpers.errors import (
    ConvergenceError,
    DegenerateNormalFormError,
    NumericalError,
    TransversalityError,
)
from bifurcation_toolkit.normal_form.config import (
    settle_condition_limit,
    settle_rounding,
)

log = logging.getLogger(__name__)


@dataclass
class SettledStage:
    """Solution of one stage.

    ``direct`` solves ``matrix @ direct = zeta``; ``x`` is the refined value
    left in the expansion and ``residual`` its Fredholm residuals.
    """

    x: np.ndarray
    direct: np.ndarray
    matrix: np.ndarray
    zeta: np.ndarray
    residual: np.ndarray

    def __iter__(self):
        return iter((self.x, self.zeta))


def gamma_theta_matrix(a: float, b: float) -> np.ndarray:
    """[[2a, 4a], [b, b]] acting on (gamma, theta); its determinant is -2ab."""
    return np.array([[2.0 * a, 4.0 * a], [b, b]])


def affine_system(
    residuals: Callable[[np.ndarray], np.ndarray], size: int
) -> tuple[np.ndarray, np.ndarray]:
    """Matrix and right-hand side of an affine residual map, from unit steps."""
    base = np.asarray(residuals(np.zeros(size)), dtype=float)
    matrix = np.empty((len(base), size))
    for i, unit in enumerate(np.eye(size)):
        matrix[:, i] = np.asarray(residuals(unit), dtype=float) - base
    return matrix, -base


def _scale(matrix: np.ndarray, zeta: np.ndarray, x: np.ndarray) -> float:
    return max(1.0, float(np.max(np.abs(zeta))), float(np.max(np.abs(matrix * x))))


def settle(
    residuals: Callable[[np.ndarray], np.ndarray],
    size: int,
    on_singular: Callable[[np.ndarray], NumericalError],
    fsc_tol: float = DEFAULT_FSC_TOL,
    maxiter: int = DEFAULT_SOLVABILITY_MAXITER,
    matrix: np.ndarray | None = None,
) -> SettledStage:
    """Choose free constants so that a set of Fredholm residuals vanish.

    The system is assembled from the residuals at zero and at the unit
    vectors and solved directly. ``matrix`` replaces the assembled one for
    that first solve when the stage has a closed form. Newton sweeps with
    the assembled matrix then take the residuals down to rounding level,
    which absorbs the difference-quotient error of the forms.
    """
    assembled, zeta = affine_system(residuals, size)
    system = assembled if matrix is None else np.asarray(matrix, dtype=float)
    for candidate in (system, assembled):
        finite = np.all(np.isfinite(candidate))
        if not finite or np.linalg.cond(candidate) > settle_condition_limit:
            raise on_singular(candidate)
    if matrix is not None:
        mismatch = float(np.max(np.abs(system - assembled)))
        if mismatch > 1e-6 * max(1.0, float(np.max(np.abs(system)))):
            log.warning("closed-form stage matrix differs from assembled by %.3e", mismatch)

    direct = np.linalg.solve(system, zeta)
    x = direct.copy()
    r = np.asarray(residuals(x), dtype=float)
    residual = float(np.max(np.abs(r)))
    floor = settle_rounding * np.finfo(float).eps
    for iteration in range(1, maxiter + 1):
        if residual <= floor * _scale(system, zeta, x):
            break
        step = x - np.linalg.solve(assembled, r)
        r_step = np.asarray(residuals(step), dtype=float)
        reduced = float(np.max(np.abs(r_step)))
        if reduced >= residual:
            # stagnated at rounding; restore the best iterate
            residuals(x)
            break
        x, r, residual = step, r_step, reduced
        log.debug("settle sweep %s, residual %.3e", iteration, residual)
    if residual > fsc_tol * _scale(system, zeta, x):
        msg = f"free constants did not settle, residual {residual:.3e}"
        raise ConvergenceError(msg, magnitude=residual)
    return SettledStage(x=x, direct=direct, matrix=system, zeta=zeta, residual=r)


def settle_stage(
    expansion,
    unknowns: int,
    apply: Callable[[np.ndarray], None],
    targets: list[str],
    on_singular: Callable[[np.ndarray], NumericalError],
    matrix: np.ndarray | None = None,
) -> SettledStage:
    """Settle free constants against the Fredholm residuals of ``targets``.

    ``apply`` writes a trial value of the unknowns into ``expansion`` and
    re-solves the coefficients that depend on them. On return the
    expansion holds the settled values.
    """

    def residuals(x: np.ndarray) -> np.ndarray:
        apply(x)
        values = []
        for label in targets:
            values.append(expansion.fredholm(label))
            # later targets may depend on earlier ones
            expansion.solve(label, check=False)
        return np.array(values)

    settled = settle(
        residuals, unknowns, on_singular, expansion.fsc_tol, matrix=matrix
    )
    residuals(settled.x)
    return settled


def degenerate(stage: str) -> Callable[[np.ndarray], NumericalError]:
    def build(matrix: np.ndarray) -> NumericalError:
        msg = f"{stage} system is singular, matrix {matrix.tolist()}"
        return DegenerateNormalFormError(msg, magnitude=float(np.linalg.cond(matrix)))

    return build


def not_transversal(stage: str) -> Callable[[np.ndarray], NumericalError]:
    def build(matrix: np.ndarray) -> NumericalError:
        msg = f"unfolding is not transversal, {stage} system {matrix.tolist()} is singular"
        return TransversalityError(msg, magnitude=float(np.linalg.cond(matrix)))

    return build
