# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#

# form -> (state slots, parameter slots)
FORM_SLOTS = {
    "B": (2, 0),
    "C": (3, 0),
    "A1": (1, 1),
    "B1": (2, 1),
    "A2": (1, 2),
    "J1": (0, 1),
    "J2": (0, 2),
    "J3": (0, 3),
}

# (accuracy, derivative order) -> (offsets, weights); divide by step**order
FD_STENCILS = {
    (2, 1): ((-1.0, 1.0), (-0.5, 0.5)),
    (2, 2): ((-1.0, 0.0, 1.0), (1.0, -2.0, 1.0)),
    (2, 3): ((-2.0, -1.0, 1.0, 2.0), (-0.5, 1.0, -1.0, 0.5)),
    (4, 1): ((-2.0, -1.0, 1.0, 2.0), (1 / 12, -8 / 12, 8 / 12, -1 / 12)),
    (4, 2): (
        (-2.0, -1.0, 0.0, 1.0, 2.0),
        (-1 / 12, 16 / 12, -30 / 12, 16 / 12, -1 / 12),
    ),
    (4, 3): (
        (-3.0, -2.0, -1.0, 1.0, 2.0, 3.0),
        (1 / 8, -1.0, 13 / 8, -13 / 8, 1.0, -1 / 8),
    ),
}
