# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#

ANALYZE = "analyze"
PREDICT = "predict"
CONVERGE = "converge"
SIMULATE = "simulate"
SPECTRUM = "spectrum"
COMMANDS = [ANALYZE, PREDICT, CONVERGE, SIMULATE, SPECTRUM]

default_eps = [0.05, 0.1, 0.15, 0.2]
default_orders = [1, 3]
default_out = "out"
default_seed = 0
default_log_level = "WARNING"

# spectrum window re z in [lo, hi], im z in [lo, hi]
default_region = (-1.2, 0.1, -4.5, 4.5)
default_simulation_span = 100.0
# size of the random perturbation of the history in simulate
default_kick = 1e-3

profile_file = "profile_eps{eps:g}_order{order}{suffix}.csv"
curves_file = "curves.csv"
convergence_file = "convergence{suffix}.csv"
slopes_file = "slopes{suffix}.json"

# transcritical predictors and sweeps run on both branches
branch_suffixes = {1: "_plus", -1: "_minus"}

stable_summary = "a*b < 0: expect to find stable periodic orbits"
unstable_summary = "a*b > 0: expect to find unstable periodic orbits"
