# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
from typing import Any, ClassVar

import numpy as np
from pydantic import BaseModel, ConfigDict

from bifurcation_toolkit.helpers.errors import UsageError
from bifurcation_toolkit.normal_form.config import (
    GENERIC,
    TRANSCRITICAL,
    generic_flow,
    transcritical_flow,
)
from bifurcation_toolkit.normal_form.expansions import (
    index_factorial,
    index_of,
    monomial,
)
from bifurcation_toolkit.spectral.classes import PolyFun


class BtNormalForm(BaseModel):
    """Coefficients of a Bogdanov-Takens normal form and its transformation.

    ``h`` holds the center manifold coefficients beyond the linear part
    phi0 w0 + phi1 w1, ``k`` the parameter map coefficients and ``theta``
    the time reparametrization. All of them are keyed by their exponent
    labels. ``intermediates`` keeps the free constants fixed along the way.
    """

    case: str
    a: float
    b: float
    q0: np.ndarray
    q1: np.ndarray
    p1: np.ndarray
    p0: np.ndarray
    equilibrium: np.ndarray
    parameters: np.ndarray
    delays: np.ndarray
    theta: dict[str, float]
    k: dict[str, np.ndarray]
    h: dict[str, PolyFun]
    intermediates: dict[str, Any] = {}
    slacks: dict[str, float] = {}

    unfolding: ClassVar[dict[str, float]] = {}

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @property
    def n(self) -> int:
        return len(self.q0)

    @property
    def phi0(self) -> PolyFun:
        return PolyFun.constant(self.q0)

    @property
    def phi1(self) -> PolyFun:
        return PolyFun.linear(self.q0, self.q1)

    @property
    def theta1000(self) -> float:
        return self.theta.get("1000", 0.0)

    @property
    def theta0001(self) -> float:
        return self.theta.get("0001", 0.0)

    @property
    def theta0010(self) -> float:
        return self.theta.get("0010", 0.0)

    def parameter_map(self, beta1: float, beta2: float) -> np.ndarray:
        """K(beta): parameter value alpha reached from the unfolding beta."""
        alpha = self.parameters.astype(float).copy()
        for label, coefficient in self.k.items():
            index = index_of(label)
            alpha += coefficient * monomial(index, 1.0, 1.0, beta1, beta2) / (
                index_factorial(index)
            )
        return alpha

    def manifold(self, w0: float, w1: float, beta1: float, beta2: float) -> PolyFun:
        """H(w, beta) as a polynomial history segment, without the equilibrium."""
        total = self.phi0 * w0 + self.phi1 * w1
        for label, coefficient in self.h.items():
            index = index_of(label)
            total = total + coefficient * (
                monomial(index, w0, w1, beta1, beta2) / index_factorial(index)
            )
        return total

    def manifold_gradient(
        self, w0: float, w1: float, beta1: float, beta2: float
    ) -> tuple[PolyFun, PolyFun]:
        """Partial derivatives of H with respect to w0 and w1."""
        d0 = self.phi0 * 1.0
        d1 = self.phi1 * 1.0
        for label, coefficient in self.h.items():
            index = index_of(label)
            weight = coefficient / index_factorial(index)
            if index[0]:
                lowered = (index[0] - 1, *index[1:])
                d0 = d0 + weight * (index[0] * monomial(lowered, w0, w1, beta1, beta2))
            if index[1]:
                lowered = (index[0], index[1] - 1, *index[2:])
                d1 = d1 + weight * (index[1] * monomial(lowered, w0, w1, beta1, beta2))
        return d0, d1

    def state(self, w0: float, w1: float, beta1: float, beta2: float) -> np.ndarray:
        """Current state x(0) on the center manifold."""
        return self.equilibrium + self.manifold(w0, w1, beta1, beta2)(0.0)

    def time_scale(self, w0: float, w1: float, beta1: float, beta2: float) -> float:
        """The time reparametrization 1 + sum theta_I w^nu beta^mu."""
        return 1.0 + sum(
            c * monomial(index_of(label), w0, w1, beta1, beta2)
            for label, c in self.theta.items()
        )

    def flow(self, w0: float, w1: float, beta1: float, beta2: float) -> np.ndarray:
        """Right-hand side of the planar normal form."""
        second = self.a * w0**2 + self.b * w0 * w1
        for label, c in self.unfolding.items():
            second += c * monomial(index_of(label), w0, w1, beta1, beta2)
        return np.array([w1, second])

    def flow_coefficients(self) -> dict[str, float]:
        return {**self.unfolding, "2000": self.a, "1100": self.b}

    def to_json_dict(self) -> dict[str, Any]:
        """Plain dictionary with a fixed key order, polynomials as coefficient rows."""
        return {
            "case": self.case,
            "a": self.a,
            "b": self.b,
            "theta": {label: self.theta[label] for label in sorted(self.theta)},
            "K": {label: self.k[label].tolist() for label in sorted(self.k)},
            "h": {label: self.h[label].to_list() for label in sorted(self.h)},
            "q0": self.q0.tolist(),
            "q1": self.q1.tolist(),
            "p1": self.p1.tolist(),
            "p0": self.p0.tolist(),
            "equilibrium": self.equilibrium.tolist(),
            "parameters": self.parameters.tolist(),
            "delays": self.delays.tolist(),
            "intermediates": {
                key: _plain(self.intermediates[key])
                for key in sorted(self.intermediates)
            },
        }

    @classmethod
    def from_json_dict(cls, data: dict[str, Any]) -> "BtNormalForm":
        case = data.get("case")
        if case not in NORMAL_FORM_TYPES:
            msg = f"unknown normal form case {case!r}"
            raise UsageError(msg)
        target = NORMAL_FORM_TYPES[case]
        return target(
            case=case,
            a=float(data["a"]),
            b=float(data["b"]),
            q0=np.asarray(data["q0"], dtype=float),
            q1=np.asarray(data["q1"], dtype=float),
            p1=np.asarray(data["p1"], dtype=float),
            p0=np.asarray(data["p0"], dtype=float),
            equilibrium=np.asarray(data["equilibrium"], dtype=float),
            parameters=np.asarray(data["parameters"], dtype=float),
            delays=np.asarray(data["delays"], dtype=float),
            theta={k: float(v) for k, v in data["theta"].items()},
            k={k: np.asarray(v, dtype=float) for k, v in data["K"].items()},
            h={k: PolyFun(v) for k, v in data["h"].items()},
            intermediates=dict(data.get("intermediates", {})),
        )


def _plain(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    return value


class GenericBtNormalForm(BtNormalForm):
    """w1' = beta1 + beta2 w1 + a w0^2 + b w0 w1, equilibrium moves with beta."""

    unfolding: ClassVar[dict[str, float]] = generic_flow


class TranscriticalBtNormalForm(BtNormalForm):
    """w1' = beta1 w0 + beta2 w1 + a w0^2 + b w0 w1, equilibrium fixed."""

    unfolding: ClassVar[dict[str, float]] = transcritical_flow


NORMAL_FORM_TYPES: dict[str, type[BtNormalForm]] = {
    GENERIC: GenericBtNormalForm,
    TRANSCRITICAL: TranscriticalBtNormalForm,
}
