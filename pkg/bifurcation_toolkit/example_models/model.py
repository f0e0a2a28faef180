# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
"""The bundled delay equations together with their closed-form Bogdanov-Takens points."""

import logging

import numpy as np
from scipy.optimize import brentq

from bifurcation_toolkit.dde_model.classes import DdeModel
from bifurcation_toolkit.example_models.classes import (
    BamStabilityBoundary,
    BtPointSpec,
)
from bifurcation_toolkit.example_models.config import (
    BAM,
    MODEL_IDS,
    NEURAL_NETWORK,
    NEURAL_NETWORK_MIRROR,
    PREDATOR_PREY,
    VAN_DER_POL,
    bam_defaults,
    bam_verify_tol,
    neural_network_defaults,
    predator_prey_defaults,
    van_der_pol_defaults,
)
from bifurcation_toolkit.helpers.defaults import BAM_SCAN_END, BAM_SCAN_STEP
from bifurcation_toolkit.helpers.errors import ModelDomainError, UsageError
from bifurcation_toolkit.normal_form.config import GENERIC, TRANSCRITICAL

log = logging.getLogger(__name__)


def _merge(defaults: dict, overrides: dict | None, model_id: str) -> dict:
    overrides = overrides or {}
    unknown = sorted(set(overrides) - set(defaults))
    if unknown:
        msg = f"unknown settings {unknown} for {model_id}, expected {sorted(defaults)}"
        raise UsageError(msg)
    return {**defaults, **{k: float(v) for k, v in overrides.items()}}


def predator_prey(overrides: dict | None = None) -> tuple[DdeModel, BtPointSpec]:
    """Rescaled predator-prey system with double Allee effect, unfolded in (vartheta, delta)."""
    fixed = _merge(predator_prey_defaults, overrides, PREDATOR_PREY)
    gamma, alpha, m, tau = fixed["gamma"], fixed["alpha"], fixed["m"], fixed["tau"]
    if m <= 1.0:
        msg = f"predator-prey needs m > 1 for a positive equilibrium, got m={m}"
        raise ModelDomainError(msg)
    if tau <= 0.0:
        msg = f"predator-prey needs a positive delay, got tau={tau}"
        raise ModelDomainError(msg)
    x0 = (m + alpha - m * alpha + m * gamma) / (2.0 * m)
    y0 = (m - 1.0) * x0
    theta0 = ((alpha + m * (1.0 - alpha + gamma)) ** 2 - 4.0 * m**2 * gamma) / (
        4.0 * (m - 1.0) * m * alpha
    )
    delta0 = alpha / m
    if x0 <= 0.0 or theta0 <= 0.0:
        msg = f"predator-prey point leaves the positive domain: x0={x0}, vartheta0={theta0}"
        raise ModelDomainError(msg)

    def rhs(xi, par):
        x, y = xi[0, 0], xi[1, 0]
        xt, yt = xi[0, 1], xi[1, 1]
        theta, delta = par
        return np.array([
            x * ((1.0 - x) * (x - gamma) / (x + theta) - alpha * y / (x + y)),
            delta * y * (-1.0 + m * xt / (xt + yt)),
        ])

    model = DdeModel(
        2,
        [0.0, tau],
        rhs,
        complex_safe=True,
        name=PREDATOR_PREY,
        parameter_names=["vartheta", "delta"],
    )
    spec = BtPointSpec(
        model_id=PREDATOR_PREY,
        equilibrium=np.array([x0, y0]),
        parameters=np.array([theta0, delta0]),
        case=GENERIC,
        fixed=fixed,
    )
    return model, spec


def _transfer(u):
    return 1.0 / (1.0 + np.exp(-4.0 * u)) - 0.5


def neural_network(overrides: dict | None = None) -> tuple[DdeModel, BtPointSpec]:
    """Excitatory-inhibitory pair with synaptic delay, unfolded in (Q, E)."""
    if overrides:
        msg = f"the closed-form neural network point admits no overrides, got {sorted(overrides)}"
        raise ModelDomainError(msg)
    fixed = dict(neural_network_defaults)
    q11, q21, q22 = fixed["q11"], fixed["q21"], fixed["q22"]
    mu, e2 = fixed["mu"], fixed["e2"]

    def rhs(xi, par):
        u1, u2 = xi[0, 0], xi[1, 0]
        u1t, u2t = xi[0, 1], xi[1, 1]
        q, e = par
        return np.array([
            -u1 + q11 * _transfer(u1t) - q * u2t + e,
            -u2 + q21 * _transfer(u1t) - q22 * u2t + e2,
        ]) / mu

    ratio = np.sqrt(3.0 / 13.0)
    equilibrium = np.array([0.25 * np.log((8.0 - np.sqrt(39.0)) / 5.0), -0.5 * ratio])
    parameters = np.array([1.3, (np.sqrt(39.0) - 10.0 * np.arctanh(ratio)) / 20.0])
    model = DdeModel(
        2,
        [0.0, fixed["T"]],
        rhs,
        complex_safe=True,
        name=NEURAL_NETWORK,
        parameter_names=["Q", "E"],
    )
    spec = BtPointSpec(
        model_id=NEURAL_NETWORK,
        equilibrium=equilibrium,
        parameters=parameters,
        case=GENERIC,
        fixed=fixed,
    )
    return model, spec


def van_der_pol(overrides: dict | None = None) -> tuple[DdeModel, BtPointSpec]:
    """Van der Pol oscillator with delayed feedback, time scaled to unit delay, unfolded in (eps, tau)."""
    fixed = _merge(van_der_pol_defaults, overrides, VAN_DER_POL)
    c1, c2 = fixed["c1"], fixed["c2"]
    if c1 <= 0.0 or c2 <= 0.0:
        msg = f"feedback needs c1, c2 > 0, got c1={c1}, c2={c2}"
        raise ModelDomainError(msg)

    def feedback(x):
        return (np.exp(x) - 1.0) / (c1 * np.exp(x) + c2)

    def rhs(xi, par):
        x1, x2 = xi[0, 0], xi[1, 0]
        x1t = xi[0, 1]
        eps, tau = par
        return np.array([
            tau * x2,
            tau * (eps * feedback(x1t) - eps * (x1**2 - 1.0) * x2 - x1),
        ])

    critical = c1 + c2
    model = DdeModel(
        2,
        [0.0, 1.0],
        rhs,
        complex_safe=True,
        name=VAN_DER_POL,
        parameter_names=["eps", "tau"],
    )
    spec = BtPointSpec(
        model_id=VAN_DER_POL,
        equilibrium=np.zeros(2),
        parameters=np.array([critical, critical]),
        case=TRANSCRITICAL,
        fixed=fixed,
    )
    return model, spec


def bam_critical_couplings(mu1: float, mu2: float, mu3: float, c12: float, c13: float, tau: float):
    """(c21, c31) of the double zero eigenvalue, for unit slopes of the activations."""
    if mu2 == mu3:
        msg = "the BAM double zero needs mu2 != mu3"
        raise ModelDomainError(msg)
    c21 = mu2**2 * (mu1 * (mu3 * tau + 1.0) + mu3) / (c12 * (mu2 - mu3))
    c31 = mu3**2 * (mu1 * (mu2 * tau + 1.0) + mu2) / (c13 * (mu3 - mu2))
    return c21, c31


def bam(overrides: dict | None = None) -> tuple[DdeModel, BtPointSpec]:
    """Tri-neuron BAM network with lumped delay, unfolded in (c21, c31)."""
    fixed = _merge(bam_defaults, overrides, BAM)
    mu1, mu2, mu3 = fixed["mu1"], fixed["mu2"], fixed["mu3"]
    c12, c13, tau = fixed["c12"], fixed["c13"], fixed["tau"]
    if min(mu1, mu2, mu3) <= 0.0 or tau <= 0.0:
        msg = f"BAM needs positive rates and delay, got {fixed}"
        raise ModelDomainError(msg)
    c21, c31 = bam_critical_couplings(mu1, mu2, mu3, c12, c13, tau)

    def rhs(xi, par):
        u1, u2, u3 = xi[:, 0]
        u2t, u3t = xi[1, 1], xi[2, 1]
        a21, a31 = par
        f1_2 = np.tanh(u2t) + 0.1 * u2t**2
        f1_3 = np.tanh(u3t) + 0.1 * u3t**2
        return np.array([
            -mu1 * u1 + a21 * f1_2 + a31 * f1_3,
            -mu2 * u2 + c12 * np.tanh(u1),
            -mu3 * u3 + c13 * np.tanh(u1),
        ])

    model = DdeModel(
        3, [0.0, tau], rhs, complex_safe=True, name=BAM, parameter_names=["c21", "c31"]
    )
    spec = BtPointSpec(
        model_id=BAM,
        equilibrium=np.zeros(3),
        parameters=np.array([c21, c31]),
        case=TRANSCRITICAL,
        fixed=fixed,
    )
    return model, spec


def neural_network_mirror(overrides: dict | None = None) -> tuple[DdeModel, BtPointSpec]:
    """Image of the neural network point under (u, Q, E) -> (-u, Q, -E)."""
    model, spec = neural_network(overrides)
    q, e = spec.parameters
    mirrored = BtPointSpec(
        model_id=NEURAL_NETWORK_MIRROR,
        equilibrium=-spec.equilibrium,
        parameters=np.array([q, -e]),
        case=GENERIC,
        fixed=spec.fixed,
    )
    return model, mirrored


BUILDERS = {
    PREDATOR_PREY: predator_prey,
    NEURAL_NETWORK: neural_network,
    VAN_DER_POL: van_der_pol,
    BAM: bam,
    NEURAL_NETWORK_MIRROR: neural_network_mirror,
}


def build(model_id: str, overrides: dict | None = None) -> tuple[DdeModel, BtPointSpec]:
    if model_id not in BUILDERS:
        msg = f"unknown model {model_id!r}, expected one of {MODEL_IDS}"
        raise UsageError(msg)
    model, spec = BUILDERS[model_id](overrides)
    log.info("built %s at alpha=%s", model_id, spec.parameters)
    return model, spec


def predator_prey_char_poly_checks(spec: BtPointSpec) -> dict[str, float]:
    """Closed forms of det Delta'(0) and det Delta''(0) at the predator-prey point."""
    if spec.model_id != PREDATOR_PREY:
        msg = f"expected a predator-prey point, got {spec.model_id!r}"
        raise UsageError(msg)
    m, alpha, tau = spec.fixed["m"], spec.fixed["alpha"], spec.fixed["tau"]
    delta = float(spec.parameters[1])
    return {
        "det_delta_1": (m - 1.0) * (m * delta - alpha) / m**2,
        "det_delta_2": 2.0 - 2.0 * (m - 1.0) * delta * tau / m,
    }


def _bam_terms(mu1: float, mu2: float, mu3: float, tau: float) -> dict[str, float]:
    zeta0 = (
        mu1**4
        + (mu2**2 + mu3**2) ** 2
        + 8.0 * mu1 * mu2 * mu3 * (mu2 + mu3 + mu2 * mu3 * tau)
        + 2.0
        * mu1**2
        * (
            mu3**2
            + 4.0 * mu2 * mu3 * (1.0 + mu3 * tau)
            + mu2**2 * (1.0 + 2.0 * mu3 * tau * (2.0 + mu3 * tau))
        )
    )
    omega = np.sqrt(-(mu1**2) - mu2**2 - mu3**2 + np.sqrt(zeta0)) / np.sqrt(2.0)
    a0 = -mu1 * mu2 * mu3
    b0 = -omega * (mu2 * mu3 + mu1 * (mu2 + mu3 + mu2 * mu3 * tau))
    zeta1 = mu1 * mu2 * mu3 - (mu1 + mu2 + mu3) * omega**2
    zeta2 = mu2 * mu3 * omega + mu1 * (mu2 + mu3) * omega - omega**3
    return {
        "omega": float(omega),
        "numerator": float(b0 * zeta1 - a0 * zeta2),
        "denominator": float(a0 * zeta1 + b0 * zeta2),
    }


def bam_tan_residual(
    mu1: float, mu2: float, mu3: float, tau: float, sign: float = -1.0
) -> float:
    """|tan(tau w0) - sign N / D| at ``tau``."""
    terms = _bam_terms(mu1, mu2, mu3, tau)
    ratio = sign * terms["numerator"] / terms["denominator"]
    return float(abs(np.tan(tau * terms["omega"]) - ratio))


def _tan_roots(mu1: float, mu2: float, mu3: float, sign: float, grid) -> list[float]:
    def condition(tau: float) -> float:
        terms = _bam_terms(mu1, mu2, mu3, tau)
        angle = tau * terms["omega"]
        return (
            np.sin(angle) * terms["denominator"]
            - sign * np.cos(angle) * terms["numerator"]
        )

    values = np.array([condition(t) for t in grid])
    return [
        float(brentq(condition, grid[i], grid[i + 1], xtol=1e-14))
        for i in np.flatnonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0)
    ]


def bam_characteristic(z: complex, mu1: float, mu2: float, mu3: float, tau: float) -> complex:
    """det Delta(z) of the BAM origin at the critical couplings."""
    c21, c31 = bam_critical_couplings(mu1, mu2, mu3, 1.0, 1.0, tau)
    return (z + mu1) * (z + mu2) * (z + mu3) - np.exp(-z * tau) * (
        c21 * (z + mu3) + c31 * (z + mu2)
    )


def bam_stability_boundary(
    mu1: float,
    mu2: float,
    mu3: float,
    scan_end: float = BAM_SCAN_END,
    scan_step: float = BAM_SCAN_STEP,
) -> BamStabilityBoundary:
    """Attractivity delay tau0 and the first genuine crossing of the spectrum.

    tau0 is the smallest root of tan(tau w) = -N / D, the sufficient
    condition. The crossing candidates are the roots of tan(tau w) = N / D
    with N = b0 zeta1 - a0 zeta2 and D = a0 zeta1 + b0 zeta2; the bound is
    the first of them where det Delta(i w) vanishes. The scans use
    sin(tau w) D -/+ cos(tau w) N, which has the roots of the tan form
    without its poles.
    """
    if min(mu1, mu2, mu3) <= 0.0:
        msg = f"BAM rates must be positive, got {(mu1, mu2, mu3)}"
        raise ModelDomainError(msg)
    if mu2 == mu3:
        msg = "the BAM double zero needs mu2 != mu3"
        raise ModelDomainError(msg)

    def omega0(tau: float) -> float:
        return _bam_terms(mu1, mu2, mu3, tau)["omega"]

    grid = np.arange(scan_step, scan_end + 0.5 * scan_step, scan_step)
    sufficient = _tan_roots(mu1, mu2, mu3, -1.0, grid)
    candidates = _tan_roots(mu1, mu2, mu3, 1.0, grid)
    if not sufficient or not candidates:
        msg = f"tan condition has no root on (0, {scan_end}]"
        raise ModelDomainError(msg)
    tau0 = sufficient[0]
    tan_residual = bam_tan_residual(mu1, mu2, mu3, tau0)

    bound = None
    for tau in candidates:
        defect = abs(bam_characteristic(1j * omega0(tau), mu1, mu2, mu3, tau))
        log.debug("tan root tau=%s, |det Delta(i omega0)|=%.3e", tau, defect)
        if defect <= bam_verify_tol:
            bound = tau
            break
    if bound is None:
        msg = f"no tan root on (0, {scan_end}] is a crossing of the characteristic equation"
        raise ModelDomainError(msg)
    log.info("BAM tau0=%s, attractivity bound %s", tau0, bound)
    return BamStabilityBoundary(
        omega0=omega0,
        tau0=tau0,
        attractivity_bound=bound,
        candidates=[float(t) for t in candidates],
        tan_residual=float(tan_residual),
    )
