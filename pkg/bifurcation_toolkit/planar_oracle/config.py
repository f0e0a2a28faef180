# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#

# unfolding parameter released to close the connection, by predictor case
released_parameter = {
    "generic": 0,
    "transcritical-plus": 1,
    "transcritical-minus": 1,
}

# relative step of the central difference in the released parameter
parameter_step = 1e-6

rk_method = "DOP853"

# eps grid of the convergence study
convergence_eps = (0.04, 0.06, 0.08, 0.1, 0.14, 0.2)
