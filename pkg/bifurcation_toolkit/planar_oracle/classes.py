# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
from collections.abc import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict


class PlanarSeed(BaseModel):
    """Starting guess for a connecting orbit of the truncated normal form.

    ``function`` maps normal form times eta to the (2, len(eta)) coordinates
    on ``window``; ``beta`` is the unfolding point the guess belongs to.
    """

    case: str
    a: float
    b: float
    beta: np.ndarray
    window: tuple[float, float]
    function: Callable[[np.ndarray], np.ndarray]

    model_config = ConfigDict(arbitrary_types_allowed=True)


class CorrectedOrbit(BaseModel):
    """Collocation solution of the connecting orbit problem."""

    case: str
    a: float
    b: float
    beta: np.ndarray
    released: int
    mesh: np.ndarray
    nodes: np.ndarray
    w: np.ndarray
    degree: int
    iterations: int
    residual: float
    error: float
    amplitude: float

    model_config = ConfigDict(arbitrary_types_allowed=True)

    def evaluate(self, eta) -> np.ndarray:
        """Piecewise Lagrange interpolant of the node values at ``eta``."""
        eta = np.atleast_1d(np.asarray(eta, dtype=float))
        d = self.degree
        interval = np.clip(
            np.searchsorted(self.mesh, eta, side="right") - 1, 0, len(self.mesh) - 2
        )
        left = self.mesh[interval]
        h = self.mesh[interval + 1] - left
        sigma = (eta - left) / h
        grid = np.arange(d + 1) / d
        out = np.zeros((2, len(eta)))
        for k in range(d + 1):
            basis = np.ones_like(sigma)
            for m in range(d + 1):
                if m != k:
                    basis *= (sigma - grid[m]) / (grid[k] - grid[m])
            out += self.w[:, interval * d + k] * basis
        return out

    def as_seed(self) -> PlanarSeed:
        return PlanarSeed(
            case=self.case,
            a=self.a,
            b=self.b,
            beta=self.beta.copy(),
            window=(float(self.mesh[0]), float(self.mesh[-1])),
            function=self.evaluate,
        )


class Trajectory(BaseModel):
    """Dense output of an adaptive Runge-Kutta run."""

    t: np.ndarray
    y: np.ndarray
    status: int
    message: str

    model_config = ConfigDict(arbitrary_types_allowed=True)
