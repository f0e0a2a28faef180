# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#

import numpy as np
import pytest

from bifurcation_toolkit.characteristic_matrix.classes import BorderedSolve, CharMatrix
from bifurcation_toolkit.characteristic_matrix.model import (
    binv_solve,
    refine_root,
    root_multiplicity,
    spectrum_frame,
    spectrum_scan,
)
from bifurcation_toolkit.helpers.constants import SPECTRUM_COLUMNS
from bifurcation_toolkit.helpers.errors import (
    ConvergenceError,
    DimensionError,
    InconsistentRightHandSideError,
    SingularBorderedSystemError,
    UsageError,
)


def decay() -> CharMatrix:
    # x' = -x, Delta(z) = z + 1
    return CharMatrix.from_matrices([0.0], [[[-1.0]]])


def delayed_pair() -> CharMatrix:
    return CharMatrix.from_matrices(
        [0.0, 1.0],
        [[[-1.0, 0.2], [0.0, -0.5]], [[0.3, 0.0], [-0.4, 0.1]]],
    )


def double_zero() -> CharMatrix:
    # x' = y, y' = 0: Delta(z) = [[z, -1], [0, z]]
    return CharMatrix.from_matrices([0.0], [[[0.0, 1.0], [0.0, 0.0]]])


class TestDelta:
    def test_scalar_decay(self) -> None:
        np.testing.assert_allclose(decay().delta(0, 2.0 + 1.0j), [[3.0 + 1.0j]])

    def test_first_derivative_has_identity(self) -> None:
        charmat = delayed_pair()
        expected = np.eye(2) + 1.0 * charmat.delay_jacobians[1] * np.exp(-0.3)
        np.testing.assert_allclose(charmat.delta(1, 0.3), expected, atol=1e-12)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_derivatives_match_differences(self, k) -> None:
        charmat = delayed_pair()
        z = 0.2 + 0.4j
        h = 1e-2
        # centered differences of the (k-1)-th derivative
        numerical = (charmat.delta(k - 1, z + h) - charmat.delta(k - 1, z - h)) / (2 * h)
        np.testing.assert_allclose(charmat.delta(k, z), numerical, atol=1e-4)

    def test_negative_order(self) -> None:
        with pytest.raises(UsageError):
            decay().delta(-1, 0.0)

    def test_at_zero_is_real(self) -> None:
        value = delayed_pair().at_zero(2)
        assert value.dtype == np.float64


class TestRefineRoot:
    def test_simple_root(self) -> None:
        assert abs(refine_root(decay(), -0.7) + 1.0) < 1e-12

    def test_already_at_root(self) -> None:
        assert refine_root(decay(), -1.0) == -1.0

    def test_double_root(self) -> None:
        z = refine_root(double_zero(), 0.05)
        assert abs(z) < 1e-5

    def test_iteration_cap(self) -> None:
        with pytest.raises(ConvergenceError):
            refine_root(delayed_pair(), 3.0 + 7.0j, maxiter=1)


class TestBinvSolve:
    def test_zero_right_hand_side(self) -> None:
        x, slack = binv_solve(np.diag([0.0, 1.0]), [1.0, 0.0], [1.0, 0.0], [0.0, 0.0])
        np.testing.assert_array_equal(x, [0.0, 0.0])
        assert slack == 0.0

    def test_consistent_right_hand_side(self) -> None:
        x, slack = binv_solve(np.diag([0.0, 1.0]), [1.0, 0.0], [1.0, 0.0], [0.0, 2.0])
        np.testing.assert_allclose(x, [0.0, 2.0])
        assert abs(slack) < 1e-15

    def test_inconsistent_right_hand_side(self) -> None:
        with pytest.raises(InconsistentRightHandSideError) as error:
            binv_solve(np.diag([0.0, 1.0]), [1.0, 0.0], [1.0, 0.0], [1.0, 0.0])
        assert error.value.magnitude == pytest.approx(1.0)

    def test_slack_without_check(self) -> None:
        solver = BorderedSolve(np.diag([0.0, 1.0]), [1.0, 0.0], [1.0, 0.0])
        x, slack = solver.solve(np.array([1.0, 3.0]), check=False)
        np.testing.assert_allclose(x, [0.0, 3.0])
        assert slack == pytest.approx(1.0)

    def test_singular_border(self) -> None:
        with pytest.raises(SingularBorderedSystemError):
            BorderedSolve(np.zeros((2, 2)), [1.0, 0.0], [1.0, 0.0])

    def test_dimension_mismatch(self) -> None:
        with pytest.raises(DimensionError):
            BorderedSolve(np.eye(2), [1.0, 0.0, 0.0], [1.0, 0.0])


class TestSpectrum:
    def test_scalar_decay_has_one_root(self) -> None:
        roots = spectrum_scan(decay(), (-2.0, 1.0, -1.0, 1.0), grid=(6, 5))
        assert len(roots) == 1
        assert abs(roots[0] + 1.0) < 1e-10

    def test_double_zero_counted_twice(self) -> None:
        assert root_multiplicity(double_zero(), 0.0) == 2

    def test_empty_region(self) -> None:
        with pytest.raises(UsageError):
            spectrum_scan(decay(), (1.0, -1.0, -1.0, 1.0))

    def test_frame_columns(self) -> None:
        frame = spectrum_frame(decay(), [-1.0 + 0.0j])
        assert list(frame.columns) == SPECTRUM_COLUMNS
        assert frame["abs_det"].iloc[0] < 1e-14
