# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#

import numpy as np

MACHINE_EPSILON = float(np.finfo(float).eps)

NORMAL_FORM_FILE = "nf.json"
SPECTRUM_FILE = "spectrum.csv"
TRAJECTORY_FILE = "trajectory.csv"

SPECTRUM_COLUMNS = ["re", "im", "abs_det"]
CONVERGENCE_COLUMNS = ["eps", "A0", "delta_order1", "delta_order3"]

EXIT_SUCCESS = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

LOG_LEVEL_ENV = "BIFURCATION_TOOLKIT_LOG_LEVEL"


def state_columns(n: int) -> list[str]:
    return [f"x_{i + 1}" for i in range(n)]
