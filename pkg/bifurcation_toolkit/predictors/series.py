# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
"""Truncated perturbation series of the homoclinic orbit.

Both unfoldings blow up to the perturbed oscillator
u'' = -4 + u^2 + u'(u + tau) eps, whose homoclinic orbit is expanded in
eps with a strained coordinate xi(s). The kernels below evaluate those
expansions; order 1 keeps only the eps^0 terms.
"""

import numpy as np

from bifurcation_toolkit.helpers.errors import UsageError
from bifurcation_toolkit.predictors.config import ORDERS


def _log_cosh(s):
    # stable for large |s|
    s = np.abs(s)
    return s + np.log1p(np.exp(-2.0 * s)) - np.log(2.0)


def _sech2(s):
    return 1.0 / np.cosh(np.clip(s, -350.0, 350.0)) ** 2


class SeriesKernels:
    """tau(eps), u~(zeta), v~(zeta), xi(s) and the integral of u~ along xi."""

    def __init__(self, eps: float, order: int = 3) -> None:
        if order not in ORDERS:
            msg = f"predictor order must be one of {ORDERS}, got {order}"
            raise UsageError(msg)
        self.eps = float(eps)
        self.order = order
        # eps as seen by the correction terms
        self.e = self.eps if order == 3 else 0.0

    def tau(self) -> float:
        return 10.0 / 7.0 + 288.0 / 2401.0 * self.e**2

    def u_tilde(self, zeta):
        zeta = np.asarray(zeta, dtype=float)
        return 2.0 - (1.0 - zeta**2) * (6.0 + 18.0 / 49.0 * self.e**2)

    def v_tilde(self, zeta):
        zeta = np.asarray(zeta, dtype=float)
        e = self.e
        bracket = (
            -12.0
            + 72.0 / 7.0 * zeta * e
            - (90.0 / 49.0 + 162.0 / 49.0 * zeta**2) * e**2
            + (3888.0 / 2401.0 * zeta - 216.0 / 343.0 * zeta**3) * e**3
        )
        return -bracket * (1.0 - zeta**2) * zeta

    def xi(self, s):
        """Strained coordinate, normalized so that xi(0) = 0."""
        s = np.asarray(s, dtype=float)
        e = self.e
        lc = _log_cosh(s)
        sech2 = _sech2(s)
        tanh = np.tanh(s)
        second = -18.0 * s / 49.0 + 45.0 * tanh / 98.0 + 36.0 / 49.0 * tanh * lc
        # cosh(2s) sech^2(s) = 2 - sech^2(s) and sinh(2s) sech^2(s) = 2 tanh(s)
        third = (3.0 / 4802.0) * (
            -504.0 * lc**2 * sech2
            - 276.0 * (2.0 - sech2) * lc
            + 102.0 * lc * sech2
            + 504.0 * s * tanh
        )
        return s - 6.0 / 7.0 * lc * e + second * e**2 + third * e**3

    def u_integral(self, xi_tilde):
        """Antiderivative of u~(tanh(xi(s))) in s, written as a function of xi(s)."""
        x = np.asarray(xi_tilde, dtype=float)
        e = self.e
        tanh = np.tanh(x)
        sech2 = _sech2(x)
        lc = _log_cosh(x)
        return (
            2.0 * x
            - 6.0 * tanh
            + (18.0 * sech2 / 7.0 + 12.0 / 7.0 * lc) * e
            + 9.0 / 49.0 * (4.0 * x - 9.0 * tanh + 5.0 * tanh * sech2) * e**2
            + 18.0 * (-21.0 * sech2**2 + 47.0 * sech2 + 8.0 * lc) / 2401.0 * e**3
        )
