# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#

# Labels are exponents of (w0, w1, beta1, beta2); K labels are (beta1, beta2).
critical_h = ["2000", "1100", "0200", "3000", "2100"]

generic_h = [
    "0010",
    "0001",
    *critical_h,
    "1010",
    "1001",
    "0110",
    "0101",
    "0002",
    "0011",
    "2001",
    "1101",
    "0003",
    "1002",
    "0102",
]
generic_K = ["10", "01", "02", "11", "03"]
generic_theta = ["1000", "0001"]

transcritical_h = [
    *critical_h,
    "1010",
    "1001",
    "0110",
    "0101",
    "2010",
    "1110",
    "2001",
    "1101",
    "1002",
    "0102",
    "1011",
    "0111",
    "1020",
    "0120",
]
transcritical_K = ["10", "01", "20", "11", "02"]
transcritical_theta = ["1000", "0010", "0001"]

GENERIC = "generic"
TRANSCRITICAL = "transcritical"
CASES = [GENERIC, TRANSCRITICAL]

# weights of (w0, w1, beta1, beta2) along the homoclinic scaling
residual_weights = {
    GENERIC: (2, 3, 4, 2),
    TRANSCRITICAL: (2, 3, 2, 2),
}
# fitted residual order along those weights with all retained terms correct
residual_expected_order = {
    GENERIC: max(residual_weights[GENERIC]),
    TRANSCRITICAL: max(residual_weights[TRANSCRITICAL]),
}

# refinement stops once the residual is this many ulps of the system scale
settle_rounding = 64.0
settle_condition_limit = 1e12

# plain coefficients of the w1 equation besides a w0^2 + b w0 w1
generic_flow = {"0010": 1.0, "0101": 1.0}
transcritical_flow = {"1010": 1.0, "0101": 1.0}

# theta grid for the function part of the homological residual
residual_points = 41
residual_scales = (0.2, 0.1, 0.05)
