# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
import numpy as np

from bifurcation_toolkit.dde_model.classes import DdeModel, HistoryPoint
from bifurcation_toolkit.dde_model.config import FORM_SLOTS
from bifurcation_toolkit.dde_model.model import jacobians, mlf
from bifurcation_toolkit.helpers.defaults import DEFAULT_FD_ACCURACY


class MultilinearForms:
    """Derivatives of the right-hand side at a fixed expansion point.

    J1 is applied through the parameter Jacobian, so it is exactly linear;
    every other form goes through ``mlf``. State arguments may be history
    points, arrays or anything with a ``sample(delays)`` method. Values are
    memoized on the exact argument bytes.
    """

    def __init__(
        self,
        model: DdeModel,
        point: HistoryPoint,
        alpha,
        accuracy: int = DEFAULT_FD_ACCURACY,
    ) -> None:
        self.model = model
        self.point = point
        self.alpha = np.asarray(alpha, dtype=float)
        self.accuracy = accuracy
        self._parameter_jacobian = None
        self._cache: dict[tuple, np.ndarray] = {}

    def _state(self, argument) -> np.ndarray:
        if hasattr(argument, "sample"):
            argument = argument.sample(self.model.delays)
        if isinstance(argument, HistoryPoint):
            return np.asarray(argument.values, dtype=float)
        return np.asarray(argument, dtype=float)

    def __call__(self, spec: str, *arguments) -> np.ndarray:
        if spec == "J1":
            return self.J1(*arguments)
        state_slots = FORM_SLOTS.get(spec, (0, 0))[0]
        values = [self._state(a) for a in arguments[:state_slots]]
        values += [np.asarray(a, dtype=float) for a in arguments[state_slots:]]
        key = (spec, *(v.tobytes() for v in values))
        if key not in self._cache:
            self._cache[key] = mlf(
                self.model,
                self.point,
                self.alpha,
                spec,
                *values,
                accuracy=self.accuracy,
            )
        return self._cache[key]

    @property
    def parameter_jacobian(self) -> np.ndarray:
        if self._parameter_jacobian is None:
            _, self._parameter_jacobian = jacobians(
                self.model, self.point, self.alpha, self.accuracy
            )
        return self._parameter_jacobian

    def B(self, u, v) -> np.ndarray:
        return self("B", u, v)

    def C(self, u, v, w) -> np.ndarray:
        return self("C", u, v, w)

    def A1(self, u, kappa) -> np.ndarray:
        return self("A1", u, kappa)

    def B1(self, u, v, kappa) -> np.ndarray:
        return self("B1", u, v, kappa)

    def A2(self, u, kappa, lam) -> np.ndarray:
        return self("A2", u, kappa, lam)

    def J1(self, kappa) -> np.ndarray:
        return self.parameter_jacobian @ np.asarray(kappa, dtype=float)

    def J2(self, kappa, lam) -> np.ndarray:
        return self("J2", kappa, lam)

    def J3(self, kappa, lam, mu) -> np.ndarray:
        return self("J3", kappa, lam, mu)
