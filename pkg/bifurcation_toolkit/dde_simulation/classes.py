# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
from collections.abc import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict


def hermite(theta, h: float, x0, x1, f0, f1):
    """Cubic Hermite interpolant on one step, ``theta`` in [0, 1]."""
    theta2 = theta * theta
    theta3 = theta2 * theta
    return (
        (2.0 * theta3 - 3.0 * theta2 + 1.0) * x0
        + (theta3 - 2.0 * theta2 + theta) * h * f0
        + (-2.0 * theta3 + 3.0 * theta2) * x1
        + (theta3 - theta2) * h * f1
    )


class DdeSolution(BaseModel):
    """Fixed-step trajectory with derivative samples for dense output.

    ``x`` and ``slopes`` are n x len(t). Times before ``t[0]`` are served by
    ``history``.
    """

    t: np.ndarray
    x: np.ndarray
    slopes: np.ndarray
    history: Callable[[float], np.ndarray]
    history_kind: str
    events: list[str] = []
    terminated: bool = False
    reverse: bool = False

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @property
    def step(self) -> float:
        return float(self.t[1] - self.t[0]) if len(self.t) > 1 else 0.0

    def __call__(self, time: float) -> np.ndarray:
        if time <= self.t[0]:
            return np.asarray(self.history(time), dtype=float)
        if len(self.t) == 1:
            return self.x[:, 0].copy()
        h = self.step
        i = min(int((time - self.t[0]) // h), len(self.t) - 2)
        theta = (time - self.t[i]) / h
        return hermite(
            theta, h, self.x[:, i], self.x[:, i + 1], self.slopes[:, i], self.slopes[:, i + 1]
        )
