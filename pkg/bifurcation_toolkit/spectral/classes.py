# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
import numpy as np
from numpy.polynomial import polynomial as P
from pydantic import BaseModel, ConfigDict

from bifurcation_toolkit.characteristic_matrix.classes import BorderedSolve, CharMatrix
from bifurcation_toolkit.dde_model.classes import HistoryPoint
from bifurcation_toolkit.helpers.defaults import DEFAULT_DEGREE_CAP
from bifurcation_toolkit.helpers.errors import DimensionError, UsageError


class PolyFun:
    """Vector-valued polynomial theta -> sum_k c_k theta^k on [-h, 0].

    ``coeffs`` has shape (degree + 1, n); trailing zero rows are dropped.
    """

    def __init__(self, coeffs, degree_cap: int = DEFAULT_DEGREE_CAP) -> None:
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.ndim == 1:
            coeffs = coeffs[None, :]
        if coeffs.ndim != 2 or coeffs.shape[0] == 0:
            msg = f"coefficients must have shape (degree + 1, n), got {coeffs.shape}"
            raise DimensionError(msg)
        nonzero = np.flatnonzero(np.any(coeffs != 0.0, axis=1))
        last = int(nonzero[-1]) if len(nonzero) else 0
        if last > degree_cap:
            msg = f"polynomial degree {last} exceeds the cap {degree_cap}"
            raise UsageError(msg)
        self.coeffs = coeffs[: last + 1]
        self.degree_cap = degree_cap

    @classmethod
    def zeros(cls, n: int) -> "PolyFun":
        return cls(np.zeros((1, n)))

    @classmethod
    def constant(cls, value) -> "PolyFun":
        return cls(np.asarray(value, dtype=float)[None, :])

    @classmethod
    def linear(cls, slope, intercept) -> "PolyFun":
        """theta -> theta * slope + intercept."""
        return cls(np.vstack([intercept, slope]))

    @property
    def n(self) -> int:
        return self.coeffs.shape[1]

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    def __call__(self, theta) -> np.ndarray:
        """Values at theta: an n-vector, or (len(theta), n) for arrays."""
        values = P.polyval(np.asarray(theta, dtype=float), self.coeffs)
        return values if np.ndim(theta) == 0 else values.T

    def sample(self, delays) -> HistoryPoint:
        """History point with column j equal to the value at -tau_j."""
        return HistoryPoint(P.polyval(-np.asarray(delays, dtype=float), self.coeffs))

    def derivative(self) -> "PolyFun":
        if self.degree == 0:
            return PolyFun.zeros(self.n)
        return PolyFun(P.polyder(self.coeffs, axis=0), self.degree_cap)

    def integrate_from_zero(self) -> "PolyFun":
        """Antiderivative vanishing at theta = 0."""
        return PolyFun(P.polyint(self.coeffs, axis=0), self.degree_cap)

    def norm(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def _padded(self, other: "PolyFun") -> tuple[np.ndarray, np.ndarray]:
        if other.n != self.n:
            msg = f"cannot combine polynomials of dimension {self.n} and {other.n}"
            raise DimensionError(msg)
        size = max(self.coeffs.shape[0], other.coeffs.shape[0])
        left = np.zeros((size, self.n))
        right = np.zeros((size, self.n))
        left[: self.coeffs.shape[0]] = self.coeffs
        right[: other.coeffs.shape[0]] = other.coeffs
        return left, right

    def __add__(self, other: "PolyFun") -> "PolyFun":
        left, right = self._padded(other)
        return PolyFun(left + right, self.degree_cap)

    def __sub__(self, other: "PolyFun") -> "PolyFun":
        left, right = self._padded(other)
        return PolyFun(left - right, self.degree_cap)

    def __neg__(self) -> "PolyFun":
        return PolyFun(-self.coeffs, self.degree_cap)

    def __mul__(self, scalar) -> "PolyFun":
        return PolyFun(self.coeffs * float(scalar), self.degree_cap)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "PolyFun":
        return PolyFun(self.coeffs / float(scalar), self.degree_cap)

    def allclose(self, other: "PolyFun", atol: float = 1e-12) -> bool:
        left, right = self._padded(other)
        return bool(np.allclose(left, right, rtol=0.0, atol=atol))

    def to_list(self) -> list[list[float]]:
        """Coefficient rows in ascending powers of theta."""
        return self.coeffs.tolist()

    def __repr__(self) -> str:
        return f"PolyFun(degree={self.degree}, coeffs={self.coeffs.tolist()})"


class JordanChain(BaseModel):
    """Right chain (q0, q1) and left chain (p1, p0) of Delta at zero."""

    q0: np.ndarray
    q1: np.ndarray
    p1: np.ndarray
    p0: np.ndarray

    model_config = ConfigDict(arbitrary_types_allowed=True)

    def residuals(self, charmat: CharMatrix) -> dict[str, float]:
        d0, d1 = charmat.at_zero(0), charmat.at_zero(1)
        return {
            "q0": float(np.linalg.norm(d0 @ self.q0)),
            "q1": float(np.linalg.norm(d0 @ self.q1 + d1 @ self.q0)),
            "p1": float(np.linalg.norm(self.p1 @ d0)),
            "p0": float(np.linalg.norm(self.p0 @ d0 + self.p1 @ d1)),
        }


class Eigenfunctions:
    """phi0 = q0 and phi1 = theta q0 + q1."""

    def __init__(self, chain: JordanChain) -> None:
        self.phi0 = PolyFun.constant(chain.q0)
        self.phi1 = PolyFun.linear(chain.q0, chain.q1)


class CenterSpace:
    # Everything the cascades need about the critical eigenvalue
    def __init__(self, charmat: CharMatrix, chain: JordanChain) -> None:
        self.charmat = charmat
        self.chain = chain
        self.eigenfunctions = Eigenfunctions(chain)
        self._bordered: BorderedSolve | None = None

    @property
    def n(self) -> int:
        return self.charmat.n

    @property
    def phi0(self) -> PolyFun:
        return self.eigenfunctions.phi0

    @property
    def phi1(self) -> PolyFun:
        return self.eigenfunctions.phi1

    @property
    def bordered(self) -> BorderedSolve:
        if self._bordered is None:
            self._bordered = BorderedSolve(
                self.charmat.at_zero(0), self.chain.q0, self.chain.p1
            )
        return self._bordered
