# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
import logging

import numpy as np

from bifurcation_toolkit.dde_model.classes import DdeModel, HistoryPoint
from bifurcation_toolkit.dde_model.model import eval_rhs
from bifurcation_toolkit.helpers.defaults import DEFAULT_FD_ACCURACY, DEFAULT_FSC_TOL
from bifurcation_toolkit.helpers.order_fit import fit_order
from bifurcation_toolkit.normal_form.classes import BtNormalForm
from bifurcation_toolkit.normal_form.config import (
    GENERIC,
    generic_flow,
    residual_points,
    residual_scales,
    residual_weights,
    transcritical_flow,
)
from bifurcation_toolkit.normal_form.critical import new_expansion
from bifurcation_toolkit.normal_form.expansions import index_of
from bifurcation_toolkit.spectral.classes import CenterSpace
from bifurcation_toolkit.spectral.model import binv0_defect

log = logging.getLogger(__name__)


def homological_residual(
    nf: BtNormalForm,
    model: DdeModel,
    w0: float,
    w1: float,
    beta1: float,
    beta2: float,
    points: int = residual_points,
) -> float:
    """Sup norm of the homological equation at (w, beta) with the full rhs.

    The function part is theta dH/dtheta - D_w H f on a grid over the delay
    interval, the boundary part theta F(x* + H, K(beta)) - D_w H(0) f.
    """
    manifold = nf.manifold(w0, w1, beta1, beta2)
    d0, d1 = nf.manifold_gradient(w0, w1, beta1, beta2)
    f0, f1 = nf.flow(w0, w1, beta1, beta2)
    scale = nf.time_scale(w0, w1, beta1, beta2)
    transport = d0 * f0 + d1 * f1

    grid = np.linspace(-float(nf.delays[-1]), 0.0, points)
    function_part = scale * manifold.derivative()(grid) - transport(grid)

    history = HistoryPoint.constant(nf.equilibrium, len(nf.delays))
    history = history + manifold.sample(nf.delays)
    rhs = eval_rhs(model, history, nf.parameter_map(beta1, beta2))
    boundary_part = scale * rhs - transport(0.0)
    return max(
        float(np.max(np.abs(function_part))), float(np.max(np.abs(boundary_part)))
    )


def residual_order(
    nf: BtNormalForm,
    model: DdeModel,
    direction,
    scales=residual_scales,
) -> tuple[float, list[float]]:
    """Fitted order of the residual along (s^k0 w0, s^k1 w1, s^k2 beta1, s^k3 beta2).

    The exponents are the homoclinic scaling weights of the normal form's
    case; ``direction`` gives the unscaled (w0, w1, beta1, beta2).
    """
    weights = residual_weights[nf.case]
    residuals = []
    for s in scales:
        point = [d * s**k for d, k in zip(direction, weights, strict=True)]
        residuals.append(homological_residual(nf, model, *point))
    order = fit_order(scales, residuals)
    log.info("homological residuals %s, fitted order %.2f", residuals, order)
    return order, residuals


def system_defects(
    nf: BtNormalForm,
    model: DdeModel,
    space: CenterSpace,
    accuracy: int = DEFAULT_FD_ACCURACY,
) -> dict[str, float]:
    """Substitution residual of every stored h in its own linear system.

    The right-hand sides are collected again from the stored coefficients,
    so a wrong h shows up in its own system and in those that use it.
    """
    flow = generic_flow if nf.case == GENERIC else transcritical_flow
    expansion = new_expansion(
        model, space, nf.equilibrium, nf.parameters, flow, DEFAULT_FSC_TOL, accuracy
    )
    expansion.set_flow("2000", nf.a)
    expansion.set_flow("1100", nf.b)
    for label, value in nf.theta.items():
        expansion.set_theta(label, value)
    for label, value in nf.k.items():
        expansion.set_k(label, value)
    for label, h in nf.h.items():
        expansion.h[index_of(label)] = h
    defects = {
        label: binv0_defect(space, h, expansion.kappa(label), expansion.w_part(label))
        for label, h in nf.h.items()
    }
    log.info("largest system defect %.3e", max(defects.values()))
    return defects
