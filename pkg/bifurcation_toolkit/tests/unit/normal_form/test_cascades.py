# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
import json

import numpy as np
import pytest

from bifurcation_toolkit.characteristic_matrix.classes import CharMatrix
from bifurcation_toolkit.dde_model.classes import DdeModel
from bifurcation_toolkit.helpers.defaults import DEFAULT_FD_ACCURACY, DEFAULT_FSC_TOL
from bifurcation_toolkit.helpers.errors import (
    ConvergenceError,
    DegenerateNormalFormError,
    TransversalityError,
    UsageError,
)
from bifurcation_toolkit.normal_form.classes import (
    BtNormalForm,
    GenericBtNormalForm,
    TranscriticalBtNormalForm,
)
from bifurcation_toolkit.normal_form.config import (
    GENERIC,
    TRANSCRITICAL,
    generic_flow,
    generic_h,
    residual_expected_order,
    transcritical_h,
)
from bifurcation_toolkit.normal_form.critical import critical_coeffs, new_expansion
from bifurcation_toolkit.normal_form.generic import (
    generic_normal_form,
    parameter_linear,
    parameter_quadratic_cubic,
)
from bifurcation_toolkit.normal_form.residual import (
    homological_residual,
    residual_order,
    system_defects,
)
from bifurcation_toolkit.normal_form.solvability import (
    affine_system,
    degenerate,
    gamma_theta_matrix,
    settle,
)
from bifurcation_toolkit.normal_form.transcritical import transcritical_normal_form
from bifurcation_toolkit.spectral.classes import CenterSpace, PolyFun
from bifurcation_toolkit.spectral.model import compute_jordan


def toy(unfolding: str, quadratic: float = 1.0) -> DdeModel:
    """x1' = x2, x2' = unfolding + quadratic x1^2 + x1 x2."""

    def rhs(xi, alpha):
        x1, x2 = xi[0, 0], xi[1, 0]
        if unfolding == GENERIC:
            linear = alpha[0] + alpha[1] * x2
        elif unfolding == TRANSCRITICAL:
            linear = alpha[0] * x1 + alpha[1] * x2
        else:
            linear = alpha[1] * x2
        return np.array([x2, linear + quadratic * x1**2 + x1 * x2])

    return DdeModel(2, [0.0], rhs, complex_safe=True, name=f"toy-{unfolding}")


def center_space(model: DdeModel) -> CenterSpace:
    charmat = CharMatrix(model, model.equilibrium_history([0.0, 0.0]), [0.0, 0.0])
    return CenterSpace(charmat, compute_jordan(charmat))


def cascade(model: DdeModel, case: str) -> BtNormalForm:
    build = generic_normal_form if case == GENERIC else transcritical_normal_form
    return build(model, center_space(model), [0.0, 0.0], [0.0, 0.0])


@pytest.fixture(scope="module")
def generic_nf() -> GenericBtNormalForm:
    return cascade(toy(GENERIC), GENERIC)


@pytest.fixture(scope="module")
def transcritical_nf() -> TranscriticalBtNormalForm:
    return cascade(toy(TRANSCRITICAL), TRANSCRITICAL)


class TestCriticalCoefficients:
    def test_quadratic_coefficients(self, generic_nf) -> None:
        assert generic_nf.a == pytest.approx(1.0, rel=1e-8)
        assert generic_nf.b == pytest.approx(1.0, rel=1e-8)

    def test_shared_between_cases(self, generic_nf, transcritical_nf) -> None:
        assert transcritical_nf.a == pytest.approx(generic_nf.a, rel=1e-10)
        assert transcritical_nf.b == pytest.approx(generic_nf.b, rel=1e-10)
        assert transcritical_nf.theta1000 == pytest.approx(generic_nf.theta1000, abs=1e-8)

    def test_vanishing_a(self) -> None:
        with pytest.raises(DegenerateNormalFormError):
            cascade(toy(GENERIC, quadratic=0.0), GENERIC)


class TestGenericCascade:
    def test_parameter_map_normalization(self, generic_nf) -> None:
        p1 = generic_nf.p1
        # p1 J1 = e1 for the toy
        jacobian = np.array([[0.0, 0.0], [1.0, 0.0]])
        assert p1 @ jacobian @ generic_nf.k["10"] == pytest.approx(1.0, abs=1e-8)
        assert p1 @ jacobian @ generic_nf.k["01"] == pytest.approx(0.0, abs=1e-8)

    def test_all_slacks_small(self, generic_nf) -> None:
        assert generic_nf.slacks
        assert max(generic_nf.slacks.values()) <= 1e-8

    def test_bt_point_maps_to_itself(self, generic_nf) -> None:
        np.testing.assert_allclose(generic_nf.parameter_map(0.0, 0.0), [0.0, 0.0])
        np.testing.assert_allclose(generic_nf.state(0.0, 0.0, 0.0, 0.0), [0.0, 0.0])
        assert generic_nf.manifold(0.0, 0.0, 0.0, 0.0).norm() == 0.0

    def test_parameter_map_derivatives(self, generic_nf) -> None:
        h = 1e-6
        d1 = (generic_nf.parameter_map(h, 0.0) - generic_nf.parameter_map(-h, 0.0)) / (2 * h)
        d2 = (generic_nf.parameter_map(0.0, h) - generic_nf.parameter_map(0.0, -h)) / (2 * h)
        np.testing.assert_allclose(d1, generic_nf.k["10"], atol=1e-7)
        np.testing.assert_allclose(d2, generic_nf.k["01"], atol=1e-7)

    def test_homological_residual_order(self, generic_nf) -> None:
        order, residuals = residual_order(generic_nf, toy(GENERIC), (1.0, 0.5, -0.3, 0.4))
        assert order >= residual_expected_order[GENERIC]
        assert residuals[-1] < residuals[0]

    def test_parameters_must_unfold_the_point(self) -> None:
        with pytest.raises(TransversalityError):
            cascade(toy("beta2-only"), GENERIC)


class TestTranscriticalCascade:
    def test_linear_parameter_map(self, transcritical_nf) -> None:
        np.testing.assert_allclose(transcritical_nf.k["10"], [1.0, 0.0], atol=1e-6)
        np.testing.assert_allclose(transcritical_nf.k["01"], [0.0, 1.0], atol=1e-6)

    def test_origin_persists(self, transcritical_nf) -> None:
        manifold = transcritical_nf.manifold(0.0, 0.0, 0.3, -0.2)
        assert manifold.norm() == 0.0

    def test_all_slacks_small(self, transcritical_nf) -> None:
        assert max(transcritical_nf.slacks.values()) <= 1e-8

    def test_homological_residual_order(self, transcritical_nf) -> None:
        order, _ = residual_order(transcritical_nf, toy(TRANSCRITICAL), (1.0, 0.5, -0.3, 0.4))
        assert order >= residual_expected_order[TRANSCRITICAL]

    def test_residual_vanishes_at_the_point(self, transcritical_nf) -> None:
        assert homological_residual(transcritical_nf, toy(TRANSCRITICAL), 0.0, 0.0, 0.0, 0.0) < 1e-12


class TestScaleCovariance:
    @pytest.mark.parametrize("scale", [0.5, -2.0, 3.7])
    def test_ratio_is_invariant(self, generic_nf, scale) -> None:
        model = toy(GENERIC)
        charmat = CharMatrix(model, model.equilibrium_history([0.0, 0.0]), [0.0, 0.0])
        chain = compute_jordan(charmat, unit_norm=False, scale=scale)
        nf = generic_normal_form(model, CenterSpace(charmat, chain), [0.0, 0.0], [0.0, 0.0])
        assert nf.a / nf.b == pytest.approx(generic_nf.a / generic_nf.b, rel=1e-8)


class TestJsonReload:
    def test_reload_keeps_the_coefficients(self, transcritical_nf) -> None:
        data = json.loads(json.dumps(transcritical_nf.to_json_dict()))
        reloaded = BtNormalForm.from_json_dict(data)
        assert isinstance(reloaded, TranscriticalBtNormalForm)
        assert reloaded.a == transcritical_nf.a
        assert reloaded.theta == transcritical_nf.theta
        np.testing.assert_array_equal(
            reloaded.parameter_map(0.1, -0.2), transcritical_nf.parameter_map(0.1, -0.2)
        )
        for label, h in transcritical_nf.h.items():
            assert reloaded.h[label].allclose(h, atol=0.0)

    def test_keys_are_ordered(self, generic_nf) -> None:
        data = generic_nf.to_json_dict()
        assert list(data)[:3] == ["case", "a", "b"]
        assert list(data["h"]) == sorted(data["h"])

    def test_unknown_case(self) -> None:
        with pytest.raises(UsageError):
            BtNormalForm.from_json_dict({"case": "cusp"})


@pytest.fixture(scope="module")
def generic_expansion():
    model = toy(GENERIC)
    expansion = new_expansion(
        model,
        center_space(model),
        [0.0, 0.0],
        [0.0, 0.0],
        generic_flow,
        DEFAULT_FSC_TOL,
        DEFAULT_FD_ACCURACY,
    )
    critical_coeffs(expansion)
    parameter_linear(expansion)
    intermediates = parameter_quadratic_cubic(expansion)
    return expansion, intermediates


def cross(u: np.ndarray, v: np.ndarray) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


class TestSettle:
    matrix = np.array([[2.0, 1.0], [1.0, 3.0]])
    target = np.array([1.0, -2.0])

    def residuals(self, x: np.ndarray) -> np.ndarray:
        return self.matrix @ x - self.target

    def test_affine_system(self) -> None:
        matrix, zeta = affine_system(self.residuals, 2)
        np.testing.assert_allclose(matrix, self.matrix, atol=1e-15)
        np.testing.assert_allclose(zeta, self.target, atol=1e-15)

    def test_exact_solve(self) -> None:
        stage = settle(self.residuals, 2, degenerate("test"))
        np.testing.assert_allclose(stage.x, np.linalg.solve(self.matrix, self.target), atol=1e-14)
        assert np.max(np.abs(stage.residual)) <= 1e-14

    def test_closed_form_matrix(self) -> None:
        stage = settle(self.residuals, 2, degenerate("test"), matrix=self.matrix.copy())
        np.testing.assert_array_equal(stage.matrix, self.matrix)
        np.testing.assert_allclose(stage.direct, stage.x, atol=1e-14)

    def test_singular_system(self) -> None:
        singular = np.array([[1.0, 2.0], [2.0, 4.0]])
        with pytest.raises(DegenerateNormalFormError):
            settle(lambda x: singular @ x - self.target, 2, degenerate("test"))

    def test_unsettled_residual(self) -> None:
        with pytest.raises(ConvergenceError):
            settle(lambda x: np.array([x[0] ** 2 + 1.0]), 1, degenerate("test"))


class TestGammaThetaSystems:
    def test_closed_form(self) -> None:
        matrix = gamma_theta_matrix(0.7, -1.3)
        np.testing.assert_allclose(matrix, [[1.4, 2.8], [-1.3, -1.3]], rtol=1e-15)
        assert np.linalg.det(matrix) == pytest.approx(-2.0 * 0.7 * -1.3, rel=1e-12)

    @pytest.mark.parametrize(
        ("fixture", "pairs"),
        [
            ("generic_nf", [("gamma5_theta0001_direct", ("zeta1", "zeta2"))]),
            (
                "transcritical_nf",
                [
                    ("gamma3_theta0010_direct", ("zeta1", "zeta2")),
                    ("gamma4_theta0001_direct", ("zeta3", "zeta4")),
                ],
            ),
        ],
    )
    def test_back_substitution(self, request, fixture, pairs) -> None:
        nf = request.getfixturevalue(fixture)
        values = nf.intermediates
        matrix = np.array(values["gamma_theta_matrix"])
        np.testing.assert_allclose(matrix, gamma_theta_matrix(nf.a, nf.b), rtol=1e-12)
        assert np.linalg.det(matrix) == pytest.approx(-2.0 * nf.a * nf.b, rel=1e-12)
        for direct, names in pairs:
            zeta = np.array([values[name] for name in names])
            np.testing.assert_allclose(matrix @ np.array(values[direct]), zeta, atol=1e-10)


class TestParameterDirections:
    def test_higher_order_k_along_k10(self, generic_expansion) -> None:
        expansion, intermediates = generic_expansion
        k10 = expansion.get_k("10")
        for k in (expansion.get_k("11"), np.array(intermediates["K02_hat"]), expansion.get_k("03")):
            assert cross(k, k10) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("shift", [0.5, -3.0])
    def test_k01_component_leaves_solvability(self, generic_expansion, shift) -> None:
        expansion, _ = generic_expansion
        k11 = expansion.get_k("11").copy()
        before = expansion.fredholm("0011")
        expansion.set_k("11", k11 + shift * expansion.get_k("01"))
        try:
            after = expansion.fredholm("0011")
        finally:
            expansion.set_k("11", k11)
        assert after == pytest.approx(before, abs=1e-8)


class TestSystemDefects:
    @pytest.mark.parametrize(
        ("fixture", "case", "labels"),
        [
            ("generic_nf", GENERIC, generic_h),
            ("transcritical_nf", TRANSCRITICAL, transcritical_h),
        ],
    )
    def test_stored_coefficients_satisfy_their_systems(
        self, request, fixture, case, labels
    ) -> None:
        nf = request.getfixturevalue(fixture)
        model = toy(case)
        defects = system_defects(nf, model, center_space(model))
        assert sorted(defects) == sorted(labels)
        assert max(defects.values()) <= 1e-8

    def test_perturbed_coefficient_is_detected(self, generic_nf) -> None:
        h = dict(generic_nf.h)
        h["2000"] = h["2000"] + PolyFun.linear([0.1, 0.1], [0.0, 0.1])
        perturbed = generic_nf.model_copy(update={"h": h})
        model = toy(GENERIC)
        defects = system_defects(perturbed, model, center_space(model))
        assert defects["2000"] > 1e-3
