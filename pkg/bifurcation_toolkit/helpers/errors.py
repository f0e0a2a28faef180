# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
"""Exceptions raised by the toolkit.

Usage and domain problems derive from ``ValueError``; failures of the numerics
derive from ``ArithmeticError`` or ``RuntimeError``. The command line maps the
first group to exit code 2 and the second to exit code 3.
"""


class BifurcationToolkitError(Exception):
    """Base class for all toolkit errors."""


class UsageError(BifurcationToolkitError, ValueError):
    """Arguments are inconsistent with the operation."""


class DimensionError(UsageError):
    """Array shapes do not match the model."""


class ModelDomainError(UsageError):
    """Model parameters fall outside the documented domain."""


class NumericalError(BifurcationToolkitError, ArithmeticError):
    """Base class for numerical failures."""

    def __init__(self, message: str, magnitude: float | None = None) -> None:
        super().__init__(message)
        self.magnitude = magnitude


class NumericalDomainError(NumericalError):
    """The right-hand side returned a non-finite value."""


class NotBogdanovTakensError(NumericalError):
    """Zero is not a geometrically simple double eigenvalue."""


class DegenerateChainError(NumericalError):
    """The Jordan chain cannot be normalized."""


class InconsistentRightHandSideError(NumericalError):
    """A singular system violates its Fredholm solvability condition."""


class SingularBorderedSystemError(NumericalError):
    """The bordered matrix is numerically singular."""


class TransversalityError(NumericalError):
    """The unfolding parameters are not transversal."""


class DegenerateNormalFormError(NumericalError):
    """A normal form coefficient that must be nonzero vanishes."""


class ConvergenceError(BifurcationToolkitError, RuntimeError):
    """An iterative solver did not converge."""

    def __init__(self, message: str, magnitude: float | None = None) -> None:
        super().__init__(message)
        self.magnitude = magnitude


class StiffnessError(ConvergenceError):
    """Adaptive integration underflowed its step size."""


class PredictorRangeError(BifurcationToolkitError, RuntimeError):
    """The perturbation parameter is too large for a valid predictor."""


USAGE_ERRORS = (UsageError,)
NUMERICAL_ERRORS = (NumericalError, ConvergenceError, PredictorRangeError)
