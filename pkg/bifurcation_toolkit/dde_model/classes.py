# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
from collections.abc import Callable

import numpy as np

from bifurcation_toolkit.helpers.errors import DimensionError, UsageError

Rhs = Callable[[np.ndarray, np.ndarray], np.ndarray]
# order -> f(xi, alpha, dxi, dalpha): k-th derivative of F along (dxi, dalpha)
DirectionalDerivative = Callable[
    [np.ndarray, np.ndarray, np.ndarray, np.ndarray], np.ndarray
]


class HistoryPoint:
    """Values of a history segment at the delay points.

    Column ``j`` holds the segment evaluated at ``-tau_j``.
    """

    def __init__(self, values) -> None:
        values = np.asarray(values)
        if values.ndim != 2:
            msg = f"history values must be a 2-d array, got shape {values.shape}"
            raise DimensionError(msg)
        self.values = values

    @classmethod
    def constant(cls, x, columns: int) -> "HistoryPoint":
        x = np.asarray(x)
        return cls(np.repeat(x[:, None], columns, axis=1))

    @classmethod
    def zeros(cls, n: int, columns: int) -> "HistoryPoint":
        return cls(np.zeros((n, columns)))

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def columns(self) -> int:
        return self.values.shape[1]

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def __add__(self, other: "HistoryPoint") -> "HistoryPoint":
        return HistoryPoint(self.values + other.values)

    def __sub__(self, other: "HistoryPoint") -> "HistoryPoint":
        return HistoryPoint(self.values - other.values)

    def __neg__(self) -> "HistoryPoint":
        return HistoryPoint(-self.values)

    def __mul__(self, scalar) -> "HistoryPoint":
        return HistoryPoint(self.values * scalar)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"HistoryPoint({self.values!r})"


class DdeModel:
    """A differential equation with finitely many constant delays.

    ``rhs(xi, alpha)`` receives the state sampled at the delays as an
    ``n x (m+1)`` array (column 0 is the current state) and the parameter
    vector, and returns the n-vector of time derivatives.
    """

    def __init__(
        self,
        n: int,
        delays,
        rhs: Rhs,
        parameter_count: int = 2,
        derivatives: dict[int, DirectionalDerivative] | None = None,
        complex_safe: bool = False,
        name: str = "",
        parameter_names: list[str] | None = None,
    ) -> None:
        delays = np.asarray(delays, dtype=float)
        if n <= 0:
            msg = f"state dimension must be positive, got {n}"
            raise UsageError(msg)
        if delays.ndim != 1 or len(delays) == 0 or delays[0] != 0.0:
            msg = f"delays must start with 0, got {delays.tolist()}"
            raise UsageError(msg)
        if np.any(np.diff(delays) <= 0):
            msg = f"delays must be strictly increasing, got {delays.tolist()}"
            raise UsageError(msg)
        if parameter_count < 2:
            msg = f"an unfolding needs at least two parameters, got {parameter_count}"
            raise UsageError(msg)
        self._n = n
        self._delays = delays
        self._rhs = rhs
        self._parameter_count = parameter_count
        self._derivatives = dict(derivatives or {})
        self._complex_safe = complex_safe
        self._name = name
        self._parameter_names = parameter_names or [
            f"alpha_{i + 1}" for i in range(parameter_count)
        ]

    @property
    def n(self) -> int:
        return self._n

    @property
    def delays(self) -> np.ndarray:
        return self._delays.copy()

    @property
    def m(self) -> int:
        """Number of nonzero delays."""
        return len(self._delays) - 1

    @property
    def max_delay(self) -> float:
        return float(self._delays[-1])

    @property
    def min_positive_delay(self) -> float | None:
        return float(self._delays[1]) if self.m > 0 else None

    @property
    def parameter_count(self) -> int:
        return self._parameter_count

    @property
    def parameter_names(self) -> list[str]:
        return list(self._parameter_names)

    @property
    def derivatives(self) -> dict[int, DirectionalDerivative]:
        return self._derivatives

    @property
    def complex_safe(self) -> bool:
        return self._complex_safe

    @property
    def name(self) -> str:
        return self._name

    @property
    def rhs(self) -> Rhs:
        return self._rhs

    def equilibrium_history(self, x) -> HistoryPoint:
        return HistoryPoint.constant(np.asarray(x, dtype=float), self.m + 1)

    def __repr__(self) -> str:
        return (
            f"DdeModel(name={self._name!r}, n={self._n}, "
            f"delays={self._delays.tolist()}, p={self._parameter_count})"
        )
