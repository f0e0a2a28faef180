# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
determinant_noise_floor = 1e-15
step_tolerance = 1e-10
acceleration_window = (0.3, 0.95)

multiplicity_radius = 1e-3
multiplicity_points = 64
region_margin = 1e-9
