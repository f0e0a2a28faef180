# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#

CONSTANT_HISTORY = "constant"
FUNCTION_HISTORY = "function"
SAMPLED_HISTORY = "sampled"

BOUND_EVENT = "bound"

# steps used for a system without positive delays
ode_steps = 1000
