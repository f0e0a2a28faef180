# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
"""Truncated expansions entering the homological equation.

The center manifold H(w, beta), the parameter map K(beta), the time
reparametrization theta(w, beta) and the second component of the normal
form flow are stored as coefficient tables keyed by exponent tuples
(w0, w1, beta1, beta2). H and K coefficients follow the factorial
convention ``h_I w^nu beta^mu / (nu! mu!)``; theta and the flow are plain
polynomial coefficients.

For a monomial I, collecting terms in the homological equation gives the
linear system solved by ``binv0``::

    v' = w_I,    v'(0) - sum_j A_j v(-tau_j) = kappa_I

where ``kappa_I`` comes from the nonlinear part of the right-hand side and
``w_I`` from the flow and the time reparametrization.
"""

import logging
from collections import Counter
from itertools import combinations_with_replacement
from math import factorial, prod

import numpy as np

from bifurcation_toolkit.dde_model.config import FORM_SLOTS
from bifurcation_toolkit.dde_model.forms import MultilinearForms
from bifurcation_toolkit.helpers.defaults import DEFAULT_FSC_TOL
from bifurcation_toolkit.spectral.classes import CenterSpace, PolyFun
from bifurcation_toolkit.spectral.model import binv0, fredholm_residual

log = logging.getLogger(__name__)

Index = tuple[int, int, int, int]

_ZERO: Index = (0, 0, 0, 0)
W0: Index = (1, 0, 0, 0)
W1: Index = (0, 1, 0, 0)

# (state slots, parameter slots) -> form, without J1 which is linear in K
_NONLINEAR_FORMS = {
    slots: spec for spec, slots in FORM_SLOTS.items() if slots != (0, 1)
}


def index_of(label: str) -> Index:
    """Exponent tuple of an H label such as "2001", or a K label such as "01"."""
    digits = tuple(int(c) for c in label)
    if len(digits) == 2:
        return (0, 0, *digits)
    return digits


def label_of(index: Index, parameter: bool = False) -> str:
    digits = index[2:] if parameter else index
    return "".join(str(d) for d in digits)


def index_factorial(index: Index) -> int:
    return prod(factorial(i) for i in index)


def monomial(index: Index, w0, w1, beta1, beta2):
    return w0 ** index[0] * w1 ** index[1] * beta1 ** index[2] * beta2 ** index[3]


def _add(*indices: Index) -> Index:
    return tuple(sum(parts) for parts in zip(*indices, strict=True))


def _sub(left: Index, right: Index) -> Index | None:
    difference = tuple(a - b for a, b in zip(left, right, strict=True))
    return difference if min(difference) >= 0 else None


def _multiset_weight(keys) -> float:
    return 1.0 / prod(factorial(c) for c in Counter(keys).values())


class HomologicalExpansion:
    """Coefficient tables plus the collectors for kappa and w."""

    def __init__(
        self,
        space: CenterSpace,
        forms: MultilinearForms,
        flow: dict[Index, float],
        fsc_tol: float = DEFAULT_FSC_TOL,
    ) -> None:
        self.space = space
        self.forms = forms
        self.flow = dict(flow)
        self.fsc_tol = fsc_tol
        self.h: dict[Index, PolyFun] = {W0: space.phi0, W1: space.phi1}
        self.k: dict[Index, np.ndarray] = {}
        self.theta: dict[Index, float] = {}
        self.slacks: dict[str, float] = {}
        self.free: dict[str, float] = {}

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def phi0(self) -> PolyFun:
        return self.space.phi0

    @property
    def phi1(self) -> PolyFun:
        return self.space.phi1

    def set_flow(self, label: str, value: float) -> None:
        self.flow[index_of(label)] = float(value)

    def set_theta(self, label: str, value: float) -> None:
        self.theta[index_of(label)] = float(value)

    def set_k(self, label: str, value) -> None:
        self.k[index_of(label)] = np.asarray(value, dtype=float)

    def get_h(self, label: str) -> PolyFun:
        return self.h[index_of(label)]

    def get_k(self, label: str) -> np.ndarray:
        return self.k[index_of(label)]

    def _plain_states(self, target: Index) -> dict[Index, np.ndarray]:
        states = {}
        for index, h in self.h.items():
            if _sub(target, index) is not None:
                states[index] = h.sample(self.space.charmat.delays).values / (
                    index_factorial(index)
                )
        return states

    def _plain_parameters(self, target: Index) -> dict[Index, np.ndarray]:
        return {
            index: k / index_factorial(index)
            for index, k in self.k.items()
            if _sub(target, index) is not None
        }

    def kappa(self, label: str) -> np.ndarray:
        """Coefficient of the monomial in F(H, K) minus the linear part L H."""
        target = index_of(label)
        states = self._plain_states(target)
        parameters = self._plain_parameters(target)
        total = np.zeros(self.n)
        if target in parameters:
            total += self.forms.J1(parameters[target])
        # the 1/(s! p!) Taylor weight times the count of ordered argument
        # tuples leaves 1/(multiplicities!) per distinct multiset
        for (state_slots, parameter_slots), spec in _NONLINEAR_FORMS.items():
            for state_keys in combinations_with_replacement(sorted(states), state_slots):
                remainder = _sub(target, _add(_ZERO, *state_keys))
                if remainder is None:
                    continue
                for parameter_keys in combinations_with_replacement(
                    sorted(parameters), parameter_slots
                ):
                    if _add(_ZERO, *parameter_keys) != remainder:
                        continue
                    weight = _multiset_weight(state_keys) * _multiset_weight(
                        parameter_keys
                    )
                    total += weight * self.forms(
                        spec,
                        *(states[key] for key in state_keys),
                        *(parameters[key] for key in parameter_keys),
                    )
        return index_factorial(target) * total

    def w_part(self, label: str) -> PolyFun:
        """Coefficient of the monomial in D_w H f - (theta - 1) dH/dtheta."""
        target = index_of(label)
        total = PolyFun.zeros(self.n)
        if target[1] >= 1:
            source = (target[0] + 1, target[1] - 1, target[2], target[3])
            if source in self.h:
                total = total + self.h[source] * (
                    source[0] / index_factorial(source)
                )
        for flow_index, coefficient in self.flow.items():
            partial = _sub(_add(target, W1), flow_index)
            if partial is not None and partial[1] >= 1 and partial in self.h:
                total = total + self.h[partial] * (
                    coefficient * partial[1] / index_factorial(partial)
                )
        for theta_index, coefficient in self.theta.items():
            source = _sub(target, theta_index)
            if source is not None and source in self.h:
                total = total - self.h[source].derivative() * (
                    coefficient / index_factorial(source)
                )
        return total * index_factorial(target)

    def fredholm(self, label: str) -> float:
        """Solvability residual p1 kappa - <psi_1, w> of the system."""
        return fredholm_residual(self.space, self.kappa(label), self.w_part(label))

    def solve(
        self, label: str, free: float | None = None, check: bool = True
    ) -> PolyFun:
        """Solve the system of ``label`` and store it.

        ``free`` times phi0 is added; when omitted the value last recorded
        for ``label`` is reused.
        """
        if free is not None:
            self.free[label] = float(free)
        free = self.free.get(label, 0.0)
        kappa = self.kappa(label)
        w = self.w_part(label)
        v, _, slack = binv0(self.space, kappa, w, self.fsc_tol, check=check)
        if check:
            self.slacks[label] = abs(slack)
            log.debug("h%s solved, slack %.3e", label, abs(slack))
        h = v + self.phi0 * free
        self.h[index_of(label)] = h
        return h

    def labels(self) -> list[str]:
        return [label_of(index) for index in self.h if index not in (W0, W1)]
