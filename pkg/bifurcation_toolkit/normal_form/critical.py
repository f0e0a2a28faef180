# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
"""Critical coefficients shared by both unfoldings."""

import logging

import numpy as np

from bifurcation_toolkit.dde_model.classes import DdeModel
from bifurcation_toolkit.dde_model.forms import MultilinearForms
from bifurcation_toolkit.helpers.defaults import DEFAULT_DEGENERACY_TOL
from bifurcation_toolkit.helpers.errors import DegenerateNormalFormError, UsageError
from bifurcation_toolkit.normal_form.classes import BtNormalForm
from bifurcation_toolkit.normal_form.expansions import HomologicalExpansion, index_of
from bifurcation_toolkit.normal_form.solvability import degenerate, settle_stage
from bifurcation_toolkit.spectral.classes import CenterSpace

log = logging.getLogger(__name__)


def quadratic_coefficients(expansion: HomologicalExpansion) -> tuple[float, float]:
    """a = p1 B(phi0, phi0) / 2 and b = p0 B(phi0, phi0) + p1 B(phi0, phi1)."""
    chain = expansion.space.chain
    phi0, phi1 = expansion.phi0, expansion.phi1
    b00 = expansion.forms.B(phi0, phi0)
    a = 0.5 * float(chain.p1 @ b00)
    b = float(chain.p0 @ b00 + chain.p1 @ expansion.forms.B(phi0, phi1))
    for name, value in (("a", a), ("b", b)):
        if abs(value) < DEFAULT_DEGENERACY_TOL:
            msg = f"normal form coefficient {name} = {value:.3e} vanishes"
            raise DegenerateNormalFormError(msg, magnitude=abs(value))
    return a, b


def critical_coeffs(expansion: HomologicalExpansion) -> dict[str, float]:
    """Fix a, b, theta1000 and the quadratic and cubic pure-w coefficients.

    Solves h2000, h1100, h0200, h3000 and h2100. The free phi0 multiples of
    h2000 and h1100 (gamma1, gamma2) and theta1000 are chosen so that the
    cubic systems are solvable.
    """
    a, b = quadratic_coefficients(expansion)
    expansion.set_flow("2000", a)
    expansion.set_flow("1100", b)
    log.info("critical coefficients a=%s b=%s", a, b)

    def apply_theta_gamma1(x: np.ndarray) -> None:
        expansion.set_theta("1000", x[0])
        expansion.solve("2000", free=x[1], check=False)
        expansion.solve("1100", check=False)

    (theta1000, gamma1), zeta = settle_stage(
        expansion,
        2,
        apply_theta_gamma1,
        ["3000", "0200"],
        degenerate("theta1000/gamma1"),
    )

    def apply_gamma2(x: np.ndarray) -> None:
        expansion.solve("1100", free=x[0], check=False)
        expansion.solve("0200", check=False)
        expansion.solve("3000", check=False)

    (gamma2,), _ = settle_stage(
        expansion, 1, apply_gamma2, ["2100"], degenerate("gamma2")
    )
    log.info("theta1000=%s gamma1=%s gamma2=%s", theta1000, gamma1, gamma2)
    return {
        "a": a,
        "b": b,
        "theta1000": float(theta1000),
        "gamma1": float(gamma1),
        "gamma2": float(gamma2),
        "zeta_critical": zeta.tolist(),
    }


def new_expansion(
    model: DdeModel,
    space: CenterSpace,
    equilibrium,
    parameters,
    flow: dict[str, float],
    fsc_tol: float,
    accuracy: int,
) -> HomologicalExpansion:
    """Expansion at the equilibrium with the given unfolding terms."""
    if model.parameter_count != 2:
        msg = (
            f"the unfolding needs exactly two parameters, "
            f"model {model.name!r} has {model.parameter_count}"
        )
        raise UsageError(msg)
    point = model.equilibrium_history(equilibrium)
    forms = MultilinearForms(model, point, parameters, accuracy)
    return HomologicalExpansion(
        space, forms, {index_of(k): v for k, v in flow.items()}, fsc_tol
    )


def assemble(expansion: HomologicalExpansion, labels: list[str]) -> None:
    """Solve every coefficient once more with the Fredholm checks enabled."""
    for label in labels:
        expansion.solve(label, check=True)


def build_normal_form(
    target: type[BtNormalForm],
    case: str,
    expansion: HomologicalExpansion,
    equilibrium,
    parameters,
    labels: tuple[list[str], list[str], list[str]],
    intermediates: dict,
) -> BtNormalForm:
    h_labels, k_labels, theta_labels = labels
    chain = expansion.space.chain
    return target(
        case=case,
        a=expansion.flow[index_of("2000")],
        b=expansion.flow[index_of("1100")],
        q0=chain.q0,
        q1=chain.q1,
        p1=chain.p1,
        p0=chain.p0,
        equilibrium=np.asarray(equilibrium, dtype=float),
        parameters=np.asarray(parameters, dtype=float),
        delays=expansion.space.charmat.delays,
        theta={label: expansion.theta.get(index_of(label), 0.0) for label in theta_labels},
        k={label: expansion.get_k(label) for label in k_labels},
        h={label: expansion.get_h(label) for label in h_labels},
        intermediates=intermediates,
        slacks=dict(expansion.slacks),
    )
