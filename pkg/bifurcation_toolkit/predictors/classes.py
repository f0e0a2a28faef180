# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
import numpy as np
from pydantic import BaseModel, ConfigDict


class HomoclinicPredictor(BaseModel):
    """Predicted homoclinic orbit mapped into the model coordinates.

    ``mesh`` holds the model times t, ``eta`` the normal form times with
    t(eta) = t, ``w`` the normal form coordinates (2 x mesh) and ``profile``
    the states x(t) (n x mesh). ``amplitude`` is max - min of w0.
    """

    case: str
    eps: float
    order: int
    alpha: np.ndarray
    beta: np.ndarray
    mesh: np.ndarray
    eta: np.ndarray
    w: np.ndarray
    profile: np.ndarray
    amplitude: float
    half_length: float

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @property
    def saddle(self) -> np.ndarray:
        """Profile value at the first mesh point, next to the saddle."""
        return self.profile[:, 0]


class EquilibriumCurvePoint(BaseModel):
    """A point on a predicted fold, Hopf or transcritical curve.

    ``w`` and ``beta`` are its normal form coordinates, ``omega`` the Hopf
    frequency in normal form time.
    """

    label: str
    eps: float
    state: np.ndarray
    alpha: np.ndarray
    w: np.ndarray
    beta: np.ndarray
    omega: float | None = None

    model_config = ConfigDict(arbitrary_types_allowed=True)
