# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
import numpy as np

PREDATOR_PREY = "predator_prey"
NEURAL_NETWORK = "neural_network"
VAN_DER_POL = "vdpo"
BAM = "bam"
NEURAL_NETWORK_MIRROR = "neural_network_mirror"
MODEL_IDS = [PREDATOR_PREY, NEURAL_NETWORK, VAN_DER_POL, BAM, NEURAL_NETWORK_MIRROR]

predator_prey_defaults = {"gamma": 0.15, "alpha": 0.9, "m": 1.50298303, "tau": 1.0}
neural_network_defaults = {"q11": 2.6, "q21": 1.0, "q22": 0.0, "mu": 1.0, "T": 1.0, "e2": 0.0}
van_der_pol_defaults = {"c1": 0.25, "c2": 0.5}
bam_defaults = {"mu1": 0.1, "mu2": 0.3, "mu3": 0.2, "c12": 1.0, "c13": 1.0, "tau": 5.0}

bam_verify_tol = 1e-8

# published console output, used by the soft reproduction checks
published_coefficients = {
    PREDATOR_PREY: {"a": -0.145177185481861, "b": -1.446000370122628},
    NEURAL_NETWORK: {
        "a": -0.190382124055415,
        "b": -0.951910620277072,
        "theta1000": -0.546026508575597,
        "theta0001": 1.473611111111115,
    },
    VAN_DER_POL: {
        "a": 0.1304,
        "b": -0.2949,
        "theta1000": 0.0780,
        "theta0010": -21.1293,
        "theta0001": -0.3811,
    },
    BAM: {
        "a": 0.0012,
        "b": -0.0135,
        "theta1000": -2.5813,
        "theta0010": 3.1322e03,
        "theta0001": -190.0753,
    },
}
published_ratio = {NEURAL_NETWORK: 0.2000, VAN_DER_POL: -0.4422, BAM: -0.0889}
published_sign_ab = {
    PREDATOR_PREY: 1,
    NEURAL_NETWORK: 1,
    VAN_DER_POL: -1,
    BAM: -1,
    NEURAL_NETWORK_MIRROR: 1,
}
published_leading_eigenvalue = {NEURAL_NETWORK: 0.548156278544666e-7, VAN_DER_POL: 0.6223e-7}

bam_published_spectrum = np.array([
    -0.2246 + 0.6600j,
    -0.2246 - 0.6600j,
    -0.6371 + 1.8063j,
    -0.6371 - 1.8063j,
    -0.8483 + 3.0681j,
    -0.8483 - 3.0681j,
    -0.9849 + 4.3336j,
    -0.9849 - 4.3336j,
])
bam_published_tau0 = 5.4320
bam_published_bound = 13.230934887939895
