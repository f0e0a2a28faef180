# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
"""Normalization of the transcritical unfolding, where the equilibrium stays.

The orbital normal form is

    w0' = w1,    w1' = beta1 w0 + beta2 w1 + a w0^2 + b w0 w1

with time reparametrization 1 + theta1000 w0 + theta0010 beta1 +
theta0001 beta2. The equilibrium persists for all parameter values, so
the center manifold has no pure-beta coefficients.
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
from bifurcation_toolkit.normal_form.classes import TranscriticalBtNormalForm
from bifurcation_toolkit.normal_form.config import (
    TRANSCRITICAL,
    transcritical_flow,
    transcritical_h,
    transcritical_K,
    transcritical_theta,
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
    settle_stage,
)
from bifurcation_toolkit.spectral.classes import CenterSpace

log = logging.getLogger(__name__)

_ROWS = ("p1 A1(phi0, e_i)", "p1 A1(phi1, e_i) + p0 A1(phi0, e_i)")


def transversality_matrix(expansion: HomologicalExpansion) -> np.ndarray:
    """Rows p1 A1(phi0, e_i) and p1 A1(phi1, e_i) + p0 A1(phi0, e_i)."""
    chain = expansion.space.chain
    forms = expansion.forms
    phi0, phi1 = expansion.phi0, expansion.phi1
    matrix = np.zeros((2, 2))
    for i, unit in enumerate(np.eye(2)):
        a_phi0 = forms.A1(phi0, unit)
        matrix[0, i] = chain.p1 @ a_phi0
        matrix[1, i] = chain.p1 @ forms.A1(phi1, unit) + chain.p0 @ a_phi0
    return matrix


def tc_parameter_linear(expansion: HomologicalExpansion) -> dict:
    """K10 and K01 from the transversality matrix, then h1010, h0110, h1001, h0101.

    The free phi0 multiples of h0110 and h0101 stay zero.
    """
    matrix = transversality_matrix(expansion)
    for row, name in zip(matrix, _ROWS, strict=True):
        if np.max(np.abs(row)) < DEFAULT_DEGENERACY_TOL:
            msg = f"unfolding is not transversal, row {name} = {row.tolist()} vanishes"
            raise TransversalityError(msg, magnitude=float(np.max(np.abs(row))))
    determinant = float(np.linalg.det(matrix))
    if abs(determinant) < DEFAULT_DEGENERACY_TOL * max(1.0, np.max(np.abs(matrix))) ** 2:
        msg = (
            f"unfolding is not transversal, rows {_ROWS[0]} and {_ROWS[1]} "
            f"are dependent: {matrix.tolist()}"
        )
        raise TransversalityError(msg, magnitude=abs(determinant))
    columns = np.linalg.solve(matrix, np.eye(2))
    expansion.set_k("10", columns[:, 0])
    expansion.set_k("01", columns[:, 1])
    for label in ("1010", "0110", "1001", "0101"):
        expansion.solve(label, check=True)
    log.info("K10=%s K01=%s", columns[:, 0], columns[:, 1])
    return {
        "delta1": float(matrix[0, 0]),
        "delta2": float(matrix[0, 1]),
        "delta3": float(matrix[1, 0]),
        "delta4": float(matrix[1, 1]),
    }


def _combination(expansion: HomologicalExpansion, label: str):
    k10 = expansion.get_k("10")
    k01 = expansion.get_k("01")

    def apply(x: np.ndarray) -> None:
        expansion.set_k(label, x[0] * k10 + x[1] * k01)

    return apply


def tc_cubic(expansion: HomologicalExpansion) -> dict:
    """theta0010, theta0001, the second order parameter map and the cubic terms.

    Both gamma/theta pairs solve [[2a, 4a], [b, b]] (gamma, theta) = zeta.
    """
    matrix = gamma_theta_matrix(
        expansion.flow[index_of("2000")], expansion.flow[index_of("1100")]
    )

    def apply_gamma3_theta(x: np.ndarray) -> None:
        gamma3, theta0010 = x
        expansion.set_theta("0010", theta0010)
        expansion.solve("1010", free=gamma3, check=False)
        expansion.solve("0110", check=False)

    stage12 = settle_stage(
        expansion,
        2,
        apply_gamma3_theta,
        ["2010", "1110"],
        degenerate("gamma3/theta0010"),
        matrix=matrix,
    )
    (gamma3, theta0010), zeta12 = stage12

    def apply_gamma4_theta(x: np.ndarray) -> None:
        gamma4, theta0001 = x
        expansion.set_theta("0001", theta0001)
        expansion.solve("1001", free=gamma4, check=False)
        expansion.solve("0101", check=False)

    stage34 = settle_stage(
        expansion,
        2,
        apply_gamma4_theta,
        ["2001", "1101"],
        degenerate("gamma4/theta0001"),
        matrix=matrix,
    )
    (gamma4, theta0001), zeta34 = stage34

    (gamma5, gamma6), _ = settle_stage(
        expansion, 2, _combination(expansion, "02"), ["1002", "0102"], degenerate("K02")
    )
    (gamma7, gamma8), _ = settle_stage(
        expansion, 2, _combination(expansion, "11"), ["1011", "0111"], degenerate("K11")
    )
    (gamma9, gamma10), _ = settle_stage(
        expansion, 2, _combination(expansion, "20"), ["1020", "0120"], degenerate("K20")
    )
    log.info("theta0010=%s theta0001=%s", theta0010, theta0001)
    gammas = (gamma3, gamma4, gamma5, gamma6, gamma7, gamma8, gamma9, gamma10)
    result = {f"gamma{i}": float(g) for i, g in enumerate(gammas, start=3)}
    result.update({
        "zeta1": float(zeta12[0]),
        "zeta2": float(zeta12[1]),
        "zeta3": float(zeta34[0]),
        "zeta4": float(zeta34[1]),
        "gamma_theta_matrix": matrix.tolist(),
        "gamma3_theta0010_direct": stage12.direct.tolist(),
        "gamma4_theta0001_direct": stage34.direct.tolist(),
    })
    return result


def transcritical_normal_form(
    model: DdeModel,
    space: CenterSpace,
    equilibrium,
    parameters,
    fsc_tol: float = DEFAULT_FSC_TOL,
    accuracy: int = DEFAULT_FD_ACCURACY,
) -> TranscriticalBtNormalForm:
    """Run the complete transcritical cascade at a Bogdanov-Takens point."""
    expansion = new_expansion(
        model, space, equilibrium, parameters, transcritical_flow, fsc_tol, accuracy
    )
    intermediates = critical_coeffs(expansion)
    intermediates.update(tc_parameter_linear(expansion))
    intermediates.update(tc_cubic(expansion))
    assemble(expansion, transcritical_h)
    return build_normal_form(
        TranscriticalBtNormalForm,
        TRANSCRITICAL,
        expansion,
        equilibrium,
        parameters,
        (transcritical_h, transcritical_K, transcritical_theta),
        intermediates,
    )
