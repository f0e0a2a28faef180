# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
from collections.abc import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict


class BtPointSpec(BaseModel):
    """Closed-form Bogdanov-Takens point of a bundled model."""

    model_id: str
    equilibrium: np.ndarray
    parameters: np.ndarray
    case: str
    fixed: dict[str, float]

    model_config = ConfigDict(arbitrary_types_allowed=True)


class BamStabilityBoundary(BaseModel):
    """Delay range on which the BAM center manifold stays attractive.

    ``tau0`` is the smallest root of the sufficient tan condition,
    ``candidates`` the roots of the crossing tan condition and
    ``attractivity_bound`` the first of them that is a genuine
    imaginary-axis crossing of the characteristic equation.
    """

    omega0: Callable[[float], float]
    tau0: float
    attractivity_bound: float
    candidates: list[float]
    tan_residual: float

    model_config = ConfigDict(arbitrary_types_allowed=True)
