# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#

GENERIC = "generic"
TRANSCRITICAL_PLUS = "transcritical-plus"
TRANSCRITICAL_MINUS = "transcritical-minus"
PREDICTOR_CASES = [GENERIC, TRANSCRITICAL_PLUS, TRANSCRITICAL_MINUS]
ORDERS = (1, 3)

# labels of the codimension-one curves
FOLD = "fold"
HOPF = "hopf"
TRIVIAL = "transcritical"
HOPF_TRIVIAL = "hopf_1"
HOPF_SHIFTED = "hopf_2"

# largest bracket expansion steps when locating the window ends
window_search_steps = 60
time_map_newton_maxiter = 30

CURVE_COLUMNS_PREFIX = ["label", "eps", "omega", "alpha_1", "alpha_2"]
