# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
import logging
from itertools import product
from math import factorial

import numpy as np

from bifurcation_toolkit.dde_model.classes import DdeModel, HistoryPoint
from bifurcation_toolkit.dde_model.config import FD_STENCILS, FORM_SLOTS
from bifurcation_toolkit.helpers.constants import MACHINE_EPSILON
from bifurcation_toolkit.helpers.defaults import (
    DEFAULT_COMPLEX_STEP,
    DEFAULT_FD_ACCURACY,
)
from bifurcation_toolkit.helpers.errors import (
    DimensionError,
    NumericalDomainError,
    UsageError,
)

log = logging.getLogger(__name__)


def _history_values(model: DdeModel, xi) -> np.ndarray:
    values = xi.values if isinstance(xi, HistoryPoint) else np.asarray(xi)
    expected = (model.n, model.m + 1)
    if values.shape != expected:
        msg = f"history has shape {values.shape}, model expects {expected}"
        raise DimensionError(msg)
    return values


def _parameter_values(model: DdeModel, alpha) -> np.ndarray:
    alpha = np.asarray(alpha)
    if alpha.shape != (model.parameter_count,):
        msg = (
            f"parameter vector has shape {alpha.shape}, "
            f"model expects ({model.parameter_count},)"
        )
        raise DimensionError(msg)
    return alpha


def _call_rhs(model: DdeModel, xi: np.ndarray, alpha: np.ndarray) -> np.ndarray:
    with np.errstate(all="ignore"):
        value = np.asarray(model.rhs(xi, alpha))
    if value.shape != (model.n,):
        msg = f"rhs returned shape {value.shape}, expected ({model.n},)"
        raise DimensionError(msg)
    if not np.all(np.isfinite(value)):
        msg = f"rhs of {model.name or 'model'} is not finite at alpha={alpha}"
        raise NumericalDomainError(msg)
    return value


def eval_rhs(model: DdeModel, xi, alpha) -> np.ndarray:
    """Evaluate F at the sampled history ``xi`` and parameters ``alpha``."""
    values = _history_values(model, xi)
    alpha = _parameter_values(model, alpha)
    return _call_rhs(model, values, alpha)


def directional_derivative(
    model: DdeModel,
    xi0: np.ndarray,
    alpha0: np.ndarray,
    dxi: np.ndarray,
    dalpha: np.ndarray,
    order: int,
    accuracy: int = DEFAULT_FD_ACCURACY,
) -> np.ndarray:
    """k-th derivative of t -> F(xi0 + t dxi, alpha0 + t dalpha) at t = 0.

    Uses the model's analytic callback for ``order`` when one is registered,
    otherwise a central stencil along the normalized direction with step
    ``eps**(1/(accuracy + order))``.
    """
    if order in model.derivatives:
        return np.asarray(model.derivatives[order](xi0, alpha0, dxi, dalpha))
    if (accuracy, order) not in FD_STENCILS:
        msg = f"no stencil for derivative order {order} at accuracy {accuracy}"
        raise UsageError(msg)
    scale = float(np.sqrt(np.sum(np.abs(dxi) ** 2) + np.sum(np.abs(dalpha) ** 2)))
    if scale == 0.0:
        return np.zeros(model.n)
    unit_xi = dxi / scale
    unit_alpha = dalpha / scale
    step = MACHINE_EPSILON ** (1.0 / (accuracy + order))
    offsets, weights = FD_STENCILS[(accuracy, order)]
    total = np.zeros(model.n)
    for offset, weight in zip(offsets, weights, strict=True):
        total += weight * _call_rhs(
            model, xi0 + offset * step * unit_xi, alpha0 + offset * step * unit_alpha
        )
    return total / step**order * scale**order


def mlf(
    model: DdeModel,
    xi0,
    alpha0,
    spec: str,
    *arguments,
    accuracy: int = DEFAULT_FD_ACCURACY,
) -> np.ndarray:
    """Evaluate one of the multilinear forms B, C, A1, B1, A2, J1, J2, J3.

    State slots come first and take history points, parameter slots follow
    and take parameter vectors. Mixed forms are recovered from k-th
    directional derivatives by polarization.
    """
    if spec not in FORM_SLOTS:
        msg = f"unknown multilinear form {spec!r}, expected one of {list(FORM_SLOTS)}"
        raise UsageError(msg)
    state_slots, parameter_slots = FORM_SLOTS[spec]
    if len(arguments) != state_slots + parameter_slots:
        msg = (
            f"{spec} takes {state_slots + parameter_slots} arguments, "
            f"got {len(arguments)}"
        )
        raise UsageError(msg)
    xi0 = _history_values(model, xi0)
    alpha0 = _parameter_values(model, alpha0)
    directions = []
    for argument in arguments[:state_slots]:
        directions.append(
            (_history_values(model, argument), np.zeros(model.parameter_count))
        )
    for argument in arguments[state_slots:]:
        directions.append(
            (np.zeros(xi0.shape), _parameter_values(model, argument).astype(float))
        )
    return polarize(model, xi0, alpha0, directions, accuracy)


def polarize(model, xi0, alpha0, directions, accuracy=DEFAULT_FD_ACCURACY):
    order = len(directions)
    first_xi, first_alpha = directions[0]
    if order == 1:
        return directional_derivative(
            model, xi0, alpha0, first_xi, first_alpha, 1, accuracy
        )
    total = np.zeros(model.n)
    for signs in product((1.0, -1.0), repeat=order - 1):
        dxi = first_xi.astype(float)
        dalpha = first_alpha.astype(float)
        for sign, (xi, alpha) in zip(signs, directions[1:], strict=True):
            dxi = dxi + sign * xi
            dalpha = dalpha + sign * alpha
        total += np.prod(signs) * directional_derivative(
            model, xi0, alpha0, dxi, dalpha, order, accuracy
        )
    return total / (2 ** (order - 1) * factorial(order))


def jacobians(
    model: DdeModel, xi0, alpha0, accuracy: int = DEFAULT_FD_ACCURACY
) -> tuple[list[np.ndarray], np.ndarray]:
    """Return the delay Jacobians A_j and the parameter Jacobian J1.

    Complex-step differentiation is used when the model declares its rhs
    safe for complex input and no analytic first derivative is registered.
    """
    xi0 = _history_values(model, xi0).astype(float)
    alpha0 = _parameter_values(model, alpha0).astype(float)
    use_complex = model.complex_safe and 1 not in model.derivatives

    def column(dxi, dalpha):
        if use_complex:
            value = _call_rhs(
                model,
                xi0 + 1j * DEFAULT_COMPLEX_STEP * dxi,
                alpha0 + 1j * DEFAULT_COMPLEX_STEP * dalpha,
            )
            return np.imag(value) / DEFAULT_COMPLEX_STEP
        return directional_derivative(model, xi0, alpha0, dxi, dalpha, 1, accuracy)

    delay_jacobians = []
    zero_alpha = np.zeros(model.parameter_count)
    for j in range(model.m + 1):
        a_j = np.zeros((model.n, model.n))
        for k in range(model.n):
            dxi = np.zeros(xi0.shape)
            dxi[k, j] = 1.0
            a_j[:, k] = column(dxi, zero_alpha)
        delay_jacobians.append(a_j)
    parameter_jacobian = np.zeros((model.n, model.parameter_count))
    zero_xi = np.zeros(xi0.shape)
    for k in range(model.parameter_count):
        dalpha = np.zeros(model.parameter_count)
        dalpha[k] = 1.0
        parameter_jacobian[:, k] = column(zero_xi, dalpha)
    log.debug(
        "jacobians of %s computed (complex step: %s)", model.name, use_complex
    )
    return delay_jacobians, parameter_jacobian
