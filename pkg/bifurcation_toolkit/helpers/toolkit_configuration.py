# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
import os

from .defaults import (
    DEFAULT_DDE_STEP_FRACTION,
    DEFAULT_FD_ACCURACY,
    DEFAULT_FSC_TOL,
    DEFAULT_NEWTON_MAXITER,
    DEFAULT_NULLSPACE_TOL,
    DEFAULT_ORACLE_INTERVALS,
    DEFAULT_ROOT_TOL,
    DEFAULT_UNIT_NORM,
)

_TRUE_VALUES = {"1", "true", "yes", "on"}


def _as_bool(value: str | bool) -> bool:
    if isinstance(value, bool):
        return value
    return value.strip().lower() in _TRUE_VALUES


class ToolkitConfiguration:
    """Numerical settings shared by every workflow."""

    _nullspace_tol: float
    _fsc_tol: float
    _root_tol: float
    _newton_maxiter: int
    _fd_accuracy: int
    _oracle_intervals: int
    _dde_step_fraction: int
    _unit_norm: bool

    def __init__(
        self,
        config: dict | None = None,
    ):
        """Init method definition."""
        if config is None:
            config = {}
        self._nullspace_tol = float(
            config.get("nullspace_tol", self._get_nullspace_tol())
        )
        self._fsc_tol = float(config.get("fsc_tol", self._get_fsc_tol()))
        self._root_tol = float(config.get("root_tol", self._get_root_tol()))
        self._newton_maxiter = int(
            config.get("newton_maxiter", self._get_newton_maxiter())
        )
        self._fd_accuracy = int(config.get("fd_accuracy", self._get_fd_accuracy()))
        self._oracle_intervals = int(
            config.get("oracle_intervals", self._get_oracle_intervals())
        )
        self._dde_step_fraction = int(
            config.get("dde_step_fraction", self._get_dde_step_fraction())
        )
        self._unit_norm = _as_bool(config.get("unit_norm", self._get_unit_norm()))
        if self._fd_accuracy not in (2, 4):
            msg = f"fd_accuracy must be 2 or 4, got {self._fd_accuracy}"
            raise ValueError(msg)

    def _get_nullspace_tol(self):
        return os.environ.get("BT_NULLSPACE_TOL", DEFAULT_NULLSPACE_TOL)

    def _get_fsc_tol(self):
        return os.environ.get("BT_FSC_TOL", DEFAULT_FSC_TOL)

    def _get_root_tol(self):
        return os.environ.get("BT_ROOT_TOL", DEFAULT_ROOT_TOL)

    def _get_newton_maxiter(self):
        return os.environ.get("BT_NEWTON_MAXITER", DEFAULT_NEWTON_MAXITER)

    def _get_fd_accuracy(self):
        return os.environ.get("BT_FD_ACCURACY", DEFAULT_FD_ACCURACY)

    def _get_oracle_intervals(self):
        return os.environ.get("BT_ORACLE_INTERVALS", DEFAULT_ORACLE_INTERVALS)

    def _get_dde_step_fraction(self):
        return os.environ.get("BT_DDE_STEP_FRACTION", DEFAULT_DDE_STEP_FRACTION)

    def _get_unit_norm(self):
        return os.environ.get("BT_UNIT_NORM", DEFAULT_UNIT_NORM)

    @property
    def nullspace_tol(self) -> float:
        """Relative singular value threshold for nullspace detection."""
        return self._nullspace_tol

    @property
    def fsc_tol(self) -> float:
        """Bordered slack tolerance for Fredholm solvability."""
        return self._fsc_tol

    @property
    def root_tol(self) -> float:
        """Scaled determinant tolerance for eigenvalue refinement."""
        return self._root_tol

    @property
    def newton_maxiter(self) -> int:
        """Iteration cap for eigenvalue refinement."""
        return self._newton_maxiter

    @property
    def fd_accuracy(self) -> int:
        """Order of the central difference stencils."""
        return self._fd_accuracy

    @property
    def oracle_intervals(self) -> int:
        """Mesh intervals of the planar collocation oracle."""
        return self._oracle_intervals

    @property
    def dde_step_fraction(self) -> int:
        """Steps per shortest delay in the DDE integrator."""
        return self._dde_step_fraction

    @property
    def unit_norm(self) -> bool:
        """Whether the chain is fixed by q0.q0 = 1 and q1.q0 = 0."""
        return self._unit_norm
