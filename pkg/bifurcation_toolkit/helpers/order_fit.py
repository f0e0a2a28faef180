# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#

import numpy as np

from bifurcation_toolkit.helpers.errors import UsageError


def fit_order(scales, errors) -> float:
    """Least-squares slope of log(error) against log(scale).

    Non-finite or non-positive entries are dropped before fitting.
    """
    scales = np.asarray(scales, dtype=float)
    errors = np.asarray(errors, dtype=float)
    keep = np.isfinite(scales) & np.isfinite(errors) & (scales > 0) & (errors > 0)
    if np.count_nonzero(keep) < 2:
        msg = "at least two finite points are needed to fit an order"
        raise UsageError(msg)
    slope, _ = np.polyfit(np.log(scales[keep]), np.log(errors[keep]), 1)
    return float(slope)
