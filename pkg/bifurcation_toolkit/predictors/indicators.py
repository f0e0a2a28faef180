# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
"""Test functions that vanish on the codimension-one curves."""

import logging

import numpy as np
from scipy.optimize import least_squares, root

from bifurcation_toolkit.characteristic_matrix.classes import CharMatrix
from bifurcation_toolkit.characteristic_matrix.model import refine_root
from bifurcation_toolkit.dde_model.classes import DdeModel
from bifurcation_toolkit.dde_model.model import eval_rhs
from bifurcation_toolkit.helpers.defaults import DEFAULT_FD_ACCURACY, DEFAULT_ROOT_TOL
from bifurcation_toolkit.helpers.errors import ConvergenceError
from bifurcation_toolkit.normal_form.classes import BtNormalForm
from bifurcation_toolkit.predictors.classes import EquilibriumCurvePoint

log = logging.getLogger(__name__)


def correct_equilibrium(model: DdeModel, x0, alpha, tol: float = DEFAULT_ROOT_TOL) -> np.ndarray:
    """Newton-correct ``x0`` to an equilibrium at fixed ``alpha``."""

    def residual(x):
        return eval_rhs(model, model.equilibrium_history(x), alpha)

    result = root(residual, np.asarray(x0, dtype=float), tol=tol)
    size = float(np.max(np.abs(residual(result.x))))
    if not result.success and size > np.sqrt(tol):
        msg = f"equilibrium correction failed at alpha={list(alpha)}: {result.message}"
        raise ConvergenceError(msg, magnitude=size)
    log.debug("equilibrium corrected, residual %.3e", size)
    return result.x


def nearest_equilibrium(model: DdeModel, x0, alpha) -> np.ndarray:
    """Equilibrium near ``x0``, or the residual minimizer when ``alpha`` lies just past a fold."""
    try:
        return correct_equilibrium(model, x0, alpha)
    except ConvergenceError as e:
        result = least_squares(
            lambda x: eval_rhs(model, model.equilibrium_history(x), alpha),
            np.asarray(x0, dtype=float),
            xtol=DEFAULT_ROOT_TOL,
        )
        log.warning(
            "no equilibrium at alpha=%s (%s), using the residual minimizer, residual %.3e",
            list(alpha),
            e,
            float(np.max(np.abs(result.fun))),
        )
        return result.x


def curve_indicator(
    model: DdeModel,
    nf: BtNormalForm,
    point: EquilibriumCurvePoint,
    accuracy: int = DEFAULT_FD_ACCURACY,
) -> float:
    """Distance of a predicted curve point from the curve it belongs to.

    For fold and transcritical points this is the modulus of the eigenvalue
    closest to zero, for Hopf points the smallest singular value of
    Delta(i omega) with omega carried over to the model time.
    """
    if point.omega is None:
        x = nearest_equilibrium(model, point.state, point.alpha)
    else:
        x = correct_equilibrium(model, point.state, point.alpha)
    charmat = CharMatrix(model, model.equilibrium_history(x), point.alpha, accuracy)
    if point.omega is None:
        return abs(refine_root(charmat, 0.0))
    omega = point.omega / nf.time_scale(*point.w, *point.beta)
    return float(np.linalg.svd(charmat.delta(0, 1j * omega), compute_uv=False)[-1])
