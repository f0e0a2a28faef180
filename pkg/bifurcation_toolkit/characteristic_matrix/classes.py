# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
import logging

import numpy as np
import scipy.linalg

from bifurcation_toolkit.dde_model.classes import DdeModel, HistoryPoint
from bifurcation_toolkit.dde_model.model import jacobians
from bifurcation_toolkit.helpers.defaults import (
    DEFAULT_BORDERED_COND_LIMIT,
    DEFAULT_FD_ACCURACY,
    DEFAULT_FSC_TOL,
)
from bifurcation_toolkit.helpers.errors import (
    DimensionError,
    InconsistentRightHandSideError,
    SingularBorderedSystemError,
    UsageError,
)

log = logging.getLogger(__name__)


class CharMatrix:
    """Characteristic matrix of the linearization at an equilibrium.

    Delta(z) = zI - sum_j A_j exp(-z tau_j), with the delay Jacobians A_j
    evaluated once at construction.
    """

    def __init__(
        self,
        model: DdeModel,
        point: HistoryPoint,
        alpha,
        accuracy: int = DEFAULT_FD_ACCURACY,
    ) -> None:
        self.model = model
        self.point = point
        self.alpha = np.asarray(alpha, dtype=float)
        self.delay_jacobians, self.parameter_jacobian = jacobians(
            model, point, self.alpha, accuracy
        )
        for j, a_j in enumerate(self.delay_jacobians):
            if not np.all(np.isfinite(a_j)):
                msg = f"Jacobian with respect to delay {j} is not finite"
                raise UsageError(msg)
        self._at_zero: dict[int, np.ndarray] = {}

    @classmethod
    def from_matrices(cls, delays, delay_jacobians) -> "CharMatrix":
        """Build from given Jacobians, for linear test problems."""
        delay_jacobians = [np.asarray(a, dtype=float) for a in delay_jacobians]
        n = delay_jacobians[0].shape[0]
        stacked = np.stack(delay_jacobians)

        def rhs(xi, _alpha):
            return np.einsum("jik,kj->i", stacked, xi)

        model = DdeModel(n, delays, rhs, complex_safe=True, name="linear")
        return cls(model, HistoryPoint.zeros(n, model.m + 1), np.zeros(2))

    @property
    def n(self) -> int:
        return self.model.n

    @property
    def delays(self) -> np.ndarray:
        return self.model.delays

    def delta(self, k: int, z: complex) -> np.ndarray:
        """k-th derivative of Delta at z."""
        if k < 0:
            msg = f"derivative order must be non-negative, got {k}"
            raise UsageError(msg)
        z = complex(z)
        total = np.zeros((self.n, self.n), dtype=complex)
        for tau, a_j in zip(self.delays, self.delay_jacobians, strict=True):
            total -= (-tau) ** k * np.exp(-z * tau) * a_j
        if k == 0:
            total += z * np.eye(self.n)
        elif k == 1:
            total += np.eye(self.n)
        return total

    def at_zero(self, k: int) -> np.ndarray:
        """Real k-th derivative of Delta at 0, cached."""
        if k not in self._at_zero:
            self._at_zero[k] = np.real(self.delta(k, 0.0))
        return self._at_zero[k]


class BorderedSolve:
    """Bordered system [[M, p1], [q0^T, 0]] for a matrix with a simple zero.

    The last unknown is the slack s; a consistent right-hand side gives s = 0
    and the solution component satisfies q0^T x = 0.
    """

    def __init__(
        self,
        matrix,
        q0,
        p1,
        cond_limit: float = DEFAULT_BORDERED_COND_LIMIT,
    ) -> None:
        matrix = np.asarray(matrix)
        q0 = np.asarray(q0)
        p1 = np.asarray(p1)
        n = matrix.shape[0]
        if matrix.shape != (n, n) or q0.shape != (n,) or p1.shape != (n,):
            msg = (
                f"bordered system needs a square matrix and matching borders, "
                f"got {matrix.shape}, {q0.shape}, {p1.shape}"
            )
            raise DimensionError(msg)
        self.matrix = matrix
        self.q0 = q0
        self.p1 = p1
        dtype = np.result_type(matrix, q0, p1, float)
        bordered = np.zeros((n + 1, n + 1), dtype=dtype)
        bordered[:n, :n] = matrix
        bordered[:n, n] = p1
        bordered[n, :n] = q0
        try:
            condition = np.linalg.cond(bordered)
        except np.linalg.LinAlgError as e:
            msg = "bordered matrix could not be factored"
            raise SingularBorderedSystemError(msg) from e
        if not np.isfinite(condition) or condition > cond_limit:
            msg = f"bordered matrix is singular (condition number {condition:.3e})"
            raise SingularBorderedSystemError(msg, magnitude=float(condition))
        self.condition = float(condition)
        self._factors = scipy.linalg.lu_factor(bordered)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def solve(
        self, y, fsc_tol: float = DEFAULT_FSC_TOL, check: bool = True
    ) -> tuple[np.ndarray, complex]:
        """Return (x, s) with M x + s p1 = y and q0^T x = 0."""
        y = np.asarray(y)
        if y.shape != (self.n,):
            msg = f"right-hand side has shape {y.shape}, expected ({self.n},)"
            raise DimensionError(msg)
        rhs = np.concatenate([y, [0.0]])
        solution = scipy.linalg.lu_solve(self._factors, rhs)
        x = solution[: self.n]
        slack = solution[self.n]
        if np.isrealobj(y) and np.isrealobj(self.matrix):
            slack = float(np.real(slack))
        if check:
            limit = fsc_tol * max(1.0, float(np.linalg.norm(y)))
            if abs(slack) > limit:
                msg = (
                    f"right-hand side violates the solvability condition: "
                    f"|s| = {abs(slack):.3e} > {limit:.3e}"
                )
                raise InconsistentRightHandSideError(msg, magnitude=abs(slack))
        log.debug("bordered solve slack %.3e", abs(slack))
        return x, slack
