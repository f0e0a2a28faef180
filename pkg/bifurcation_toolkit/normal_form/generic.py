# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
"""Normalization of the generic unfolding, where the equilibrium moves.

The orbital normal form is

    w0' = w1,    w1' = beta1 + beta2 w1 + a w0^2 + b w0 w1

with time reparametrization 1 + theta1000 w0 + theta0001 beta2. The
parameter map K is computed up to third order in beta2 and the mixed
term beta1 beta2.
"""

import logging

import numpy as np

from bifurcation_toolkit.dde_model.classes import DdeModel
from bifurcation_toolkit.helpers.defaults import (
    DEFAULT_DEGENERACY_TOL,
    DEFAULT_FD_ACCURACY,
    DEFAULT_FSC_TOL,
)
from bifurcation_toolkit.helpers.errors import TransversalityError
from bifurcation_toolkit.normal_form.classes import GenericBtNormalForm
from bifurcation_toolkit.normal_form.config import (
    GENERIC,
    generic_flow,
    generic_h,
    generic_K,
    generic_theta,
)
from bifurcation_toolkit.normal_form.critical import (
    assemble,
    build_normal_form,
    critical_coeffs,
    new_expansion,
)
from bifurcation_toolkit.normal_form.expansions import HomologicalExpansion, index_of
from bifurcation_toolkit.normal_form.solvability import (
    degenerate,
    gamma_theta_matrix,
    not_transversal,
    settle_stage,
)
from bifurcation_toolkit.spectral.classes import CenterSpace

log = logging.getLogger(__name__)

_ROTATION = np.array([[0.0, -1.0], [1.0, 0.0]])


def parameter_linear(expansion: HomologicalExpansion) -> dict:
    """Linear part of K and the coefficients h0010, h0001, h1001, h0101.

    K10 starts from nu / |nu|^2 with nu = (p1 J1)^T and K01 from the
    rotated direction, so that p1 J1 K10 = 1 and p1 J1 K01 = 0. The scale
    delta1 of K01 normalizes the beta2 w1 term; delta2 and gamma4 remove
    the beta1 w0 and beta1 w1 terms.
    """
    chain = expansion.space.chain
    nu = chain.p1 @ expansion.forms.parameter_jacobian
    norm = float(np.linalg.norm(nu))
    if norm < DEFAULT_DEGENERACY_TOL:
        msg = f"p1 J1 = {nu.tolist()} vanishes, the parameters do not unfold the point"
        raise TransversalityError(msg, magnitude=norm)
    k10_hat = nu / norm**2
    k01_hat = _ROTATION @ k10_hat

    # gamma3 with delta1 = 1, the h1001 residual is linear in it
    expansion.set_k("01", k01_hat)

    def apply_gamma3(x: np.ndarray) -> None:
        expansion.solve("0001", free=x[0], check=False)

    (gamma3,), _ = settle_stage(
        expansion, 1, apply_gamma3, ["1001"], degenerate("gamma3")
    )

    def apply_delta1(x: np.ndarray) -> None:
        delta1 = 1.0 + x[0]
        expansion.set_k("01", delta1 * k01_hat)
        expansion.solve("0001", free=delta1 * gamma3, check=False)
        expansion.solve("1001", check=False)

    (shift,), _ = settle_stage(
        expansion, 1, apply_delta1, ["0101"], not_transversal("delta1")
    )
    delta1 = 1.0 + float(shift)
    if not np.isfinite(delta1) or abs(delta1) < DEFAULT_DEGENERACY_TOL:
        msg = f"scale delta1 = {delta1} of K01 is degenerate"
        raise TransversalityError(msg, magnitude=abs(delta1))
    k01 = delta1 * k01_hat

    def apply_gamma4_delta2(x: np.ndarray) -> None:
        gamma4, delta2 = x
        expansion.set_k("10", k10_hat + delta2 * k01)
        expansion.solve("0010", free=delta2 * delta1 * gamma3 + gamma4, check=False)

    (gamma4, delta2), _ = settle_stage(
        expansion,
        2,
        apply_gamma4_delta2,
        ["1010", "0110"],
        not_transversal("gamma4/delta2"),
    )
    log.info("K10=%s K01=%s", expansion.get_k("10"), expansion.get_k("01"))
    return {
        "nu": nu.tolist(),
        "K10_hat": k10_hat.tolist(),
        "K01_hat": k01_hat.tolist(),
        "delta1": delta1,
        "delta2": float(delta2),
        "gamma3": float(gamma3),
        "gamma4": float(gamma4),
    }


def parameter_quadratic_cubic(expansion: HomologicalExpansion) -> dict:
    """theta0001, K11, K02, K03 and the remaining mixed coefficients.

    The beta2 w0 and beta2 w1 conditions fix gamma5 and theta0001 through
    [[2a, 4a], [b, b]] (gamma5, theta0001) = (zeta1, zeta2). K11, K02_hat and
    K03 lie along K10. A K01 component drops out of their own solvability
    conditions since p1 J1 K01 = 0; for K02 it is delta3.
    """
    matrix = gamma_theta_matrix(
        expansion.flow[index_of("2000")], expansion.flow[index_of("1100")]
    )
    k10 = expansion.get_k("10")
    k01 = expansion.get_k("01")

    def apply_gamma5_theta(x: np.ndarray) -> None:
        gamma5, theta0001 = x
        expansion.set_theta("0001", theta0001)
        expansion.solve("1001", free=gamma5, check=False)
        expansion.solve("0101", check=False)

    stage = settle_stage(
        expansion,
        2,
        apply_gamma5_theta,
        ["2001", "1101"],
        degenerate("gamma5/theta0001"),
        matrix=matrix,
    )
    (gamma5, theta0001), zeta = stage

    def apply_k11(x: np.ndarray) -> None:
        expansion.set_k("11", x[0] * k10)

    (c11,), _ = settle_stage(expansion, 1, apply_k11, ["0011"], degenerate("K11"))

    def apply_k02_hat(x: np.ndarray) -> None:
        expansion.set_k("02", x[0] * k10)

    (c02,), _ = settle_stage(expansion, 1, apply_k02_hat, ["0002"], degenerate("K02"))
    k02_hat = c02 * k10
    free0001 = expansion.free["0001"]

    def apply_gamma6_delta3(x: np.ndarray) -> None:
        gamma6, delta3 = x
        expansion.set_k("02", k02_hat + delta3 * k01)
        expansion.solve("0002", free=delta3 * free0001 + gamma6, check=False)

    (gamma6, delta3), _ = settle_stage(
        expansion,
        2,
        apply_gamma6_delta3,
        ["1002", "0102"],
        degenerate("gamma6/delta3"),
    )

    def apply_k03(x: np.ndarray) -> None:
        expansion.set_k("03", x[0] * k10)

    (c03,), _ = settle_stage(expansion, 1, apply_k03, ["0003"], degenerate("K03"))
    log.info("theta0001=%s", theta0001)
    return {
        "gamma5": float(gamma5),
        "gamma6": float(gamma6),
        "delta3": float(delta3),
        "zeta1": float(zeta[0]),
        "zeta2": float(zeta[1]),
        "gamma_theta_matrix": matrix.tolist(),
        "gamma5_theta0001_direct": stage.direct.tolist(),
        "K11_scale": float(c11),
        "K02_hat": k02_hat.tolist(),
        "K03_scale": float(c03),
    }


def generic_normal_form(
    model: DdeModel,
    space: CenterSpace,
    equilibrium,
    parameters,
    fsc_tol: float = DEFAULT_FSC_TOL,
    accuracy: int = DEFAULT_FD_ACCURACY,
) -> GenericBtNormalForm:
    """Run the complete generic cascade at a Bogdanov-Takens point."""
    expansion = new_expansion(
        model, space, equilibrium, parameters, generic_flow, fsc_tol, accuracy
    )
    intermediates = critical_coeffs(expansion)
    intermediates.update(parameter_linear(expansion))
    intermediates.update(parameter_quadratic_cubic(expansion))
    assemble(expansion, generic_h)
    return build_normal_form(
        GenericBtNormalForm,
        GENERIC,
        expansion,
        equilibrium,
        parameters,
        (generic_h, generic_K, generic_theta),
        intermediates,
    )
