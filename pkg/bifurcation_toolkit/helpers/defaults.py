# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#

# Multilinear forms
DEFAULT_FD_ACCURACY = 4
DEFAULT_COMPLEX_STEP = 1e-20
#
# Characteristic matrix and bordered solves
DEFAULT_NULLSPACE_TOL = 1e-8
DEFAULT_FSC_TOL = 1e-8
DEFAULT_ROOT_TOL = 1e-12
DEFAULT_NEWTON_MAXITER = 50
DEFAULT_BORDERED_COND_LIMIT = 1e14
DEFAULT_ROOT_DEDUPE_TOL = 1e-5
DEFAULT_SCAN_GRID = (12, 40)
#
# Normalization cascades
DEFAULT_UNIT_NORM = True
DEFAULT_DEGREE_CAP = 6
DEFAULT_SOLVABILITY_MAXITER = 8
DEFAULT_DEGENERACY_TOL = 1e-10
#
# Predictors
DEFAULT_PREDICTOR_MESH = 201
DEFAULT_WINDOW_TANH_GAP = 1e-8
DEFAULT_TIME_MAP_TOL = 1e-10
DEFAULT_MONOTONE_GRID = 2001
#
# Planar oracle
DEFAULT_ORACLE_INTERVALS = 100
DEFAULT_COLLOCATION_DEGREE = 4
DEFAULT_ORACLE_TOL = 1e-10
DEFAULT_ORACLE_MAXITER = 15
DEFAULT_RK_TOL = 1e-10
#
# DDE simulation
DEFAULT_DDE_STEP_FRACTION = 20
DEFAULT_DDE_BOUND = 1e3
DEFAULT_DEFECT_DEGREE = 200
#
# Example models
BAM_SCAN_END = 40.0
BAM_SCAN_STEP = 0.05
