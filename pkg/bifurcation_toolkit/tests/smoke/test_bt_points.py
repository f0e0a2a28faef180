# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
import numpy as np
import pytest

from bifurcation_toolkit.analyze_bt_point.api import AnalyzeBtPoint
from bifurcation_toolkit.cli.config import default_region
from bifurcation_toolkit.dde_model.model import eval_rhs
from bifurcation_toolkit.example_models.config import (
    BAM,
    MODEL_IDS,
    NEURAL_NETWORK,
    NEURAL_NETWORK_MIRROR,
    PREDATOR_PREY,
    VAN_DER_POL,
    bam_published_bound,
    bam_published_spectrum,
    bam_published_tau0,
    published_coefficients,
    published_leading_eigenvalue,
    published_ratio,
    published_sign_ab,
)
from bifurcation_toolkit.example_models.model import bam_stability_boundary
from bifurcation_toolkit.normal_form.config import (
    GENERIC,
    generic_h,
    residual_expected_order,
    transcritical_h,
)
from bifurcation_toolkit.spectral.model import pairing_matrix


@pytest.fixture(scope="module")
def analyses() -> dict[str, AnalyzeBtPoint]:
    return {model_id: AnalyzeBtPoint.from_model_id(model_id) for model_id in MODEL_IDS}


class TestBtPoints:
    @pytest.mark.parametrize("model_id", MODEL_IDS)
    def test_point_is_a_double_zero(self, analyses, model_id) -> None:
        analysis = analyses[model_id]
        history = analysis.model.equilibrium_history(analysis.equilibrium)
        assert np.max(np.abs(eval_rhs(analysis.model, history, analysis.parameters))) <= 1e-12
        assert abs(np.linalg.det(analysis.characteristic_matrix().delta(0, 0.0))) <= 1e-10

    @pytest.mark.parametrize("model_id", [NEURAL_NETWORK, BAM])
    def test_leading_eigenvalue(self, analyses, model_id) -> None:
        assert abs(analyses[model_id].leading_eigenvalue()) <= 1e-6

    def test_neural_leading_eigenvalue_scale(self, analyses) -> None:
        published = published_leading_eigenvalue[NEURAL_NETWORK]
        assert abs(analyses[NEURAL_NETWORK].leading_eigenvalue()) <= 10.0 * published

    def test_closed_form_points(self, analyses) -> None:
        neural = analyses[NEURAL_NETWORK].parameters
        expected = (np.sqrt(39.0) - 10.0 * np.arctanh(np.sqrt(3.0 / 13.0))) / 20.0
        np.testing.assert_allclose(neural, [1.3, expected], atol=1e-12)
        np.testing.assert_allclose(analyses[BAM].parameters, [0.36, -0.22], atol=1e-12)

    def test_bam_stability_boundary(self) -> None:
        boundary = bam_stability_boundary(0.1, 0.3, 0.2)
        assert boundary.tau0 == pytest.approx(bam_published_tau0, abs=1e-3)
        assert boundary.attractivity_bound == pytest.approx(bam_published_bound, abs=1e-6)

    def test_bam_spectrum(self, analyses) -> None:
        frame = analyses[BAM].spectrum(default_region)
        roots = frame["re"].to_numpy() + 1j * frame["im"].to_numpy()
        for expected in bam_published_spectrum:
            assert np.abs(roots - expected).min() < 2e-3


class TestNormalForms:
    @pytest.mark.parametrize("model_id", MODEL_IDS)
    def test_pairing_and_chain(self, analyses, model_id) -> None:
        analysis = analyses[model_id]
        np.testing.assert_allclose(pairing_matrix(analysis.center_space()), np.eye(2), atol=1e-10)
        residuals = analysis.jordan_chain().residuals(analysis.characteristic_matrix())
        assert max(residuals.values()) <= 1e-8

    @pytest.mark.parametrize("model_id", MODEL_IDS)
    def test_bordered_slacks(self, analyses, model_id) -> None:
        nf = analyses[model_id].normal_form()
        assert nf.slacks
        assert max(nf.slacks.values()) <= 1e-8

    @pytest.mark.parametrize("model_id", MODEL_IDS)
    def test_sign_of_ab(self, analyses, model_id) -> None:
        nf = analyses[model_id].normal_form()
        assert np.sign(nf.a * nf.b) == published_sign_ab[model_id]

    @pytest.mark.parametrize("model_id", [NEURAL_NETWORK, VAN_DER_POL, BAM])
    def test_scale_invariant_ratio(self, analyses, model_id) -> None:
        nf = analyses[model_id].normal_form()
        assert nf.a / nf.b == pytest.approx(published_ratio[model_id], rel=5e-2)

    def test_predator_prey_ratio(self, analyses) -> None:
        nf = analyses[PREDATOR_PREY].normal_form()
        published = published_coefficients[PREDATOR_PREY]
        ratio = published["a"] / published["b"]
        assert np.sign(nf.a / nf.b) == np.sign(ratio)
        assert 0.1 < (nf.a / nf.b) / ratio < 10.0

    @pytest.mark.parametrize("model_id", [NEURAL_NETWORK, VAN_DER_POL, NEURAL_NETWORK_MIRROR])
    def test_homological_residual_order(self, analyses, model_id) -> None:
        order, residuals = analyses[model_id].residual_order()
        assert all(np.isfinite(residuals))
        assert order >= residual_expected_order[analyses[model_id].case]

    @pytest.mark.parametrize("model_id", MODEL_IDS)
    def test_every_system_is_satisfied(self, analyses, model_id) -> None:
        analysis = analyses[model_id]
        defects = analysis.system_defects()
        expected = generic_h if analysis.case == GENERIC else transcritical_h
        assert sorted(defects) == sorted(expected)
        assert max(defects.values()) <= 1e-8

    @pytest.mark.parametrize("model_id", MODEL_IDS)
    def test_gamma_theta_systems(self, analyses, model_id) -> None:
        nf = analyses[model_id].normal_form()
        values = nf.intermediates
        matrix = np.array(values["gamma_theta_matrix"])
        assert np.linalg.det(matrix) == pytest.approx(-2.0 * nf.a * nf.b, rel=1e-12)
        if nf.case == GENERIC:
            systems = [
                ("gamma5_theta0001_direct", (values["gamma5"], nf.theta["0001"]), ("zeta1", "zeta2")),
            ]
        else:
            systems = [
                ("gamma3_theta0010_direct", (values["gamma3"], nf.theta["0010"]), ("zeta1", "zeta2")),
                ("gamma4_theta0001_direct", (values["gamma4"], nf.theta["0001"]), ("zeta3", "zeta4")),
            ]
        for direct, refined, names in systems:
            x = np.array(values[direct])
            zeta = np.array([values[name] for name in names])
            scale = max(1.0, float(np.max(np.abs(zeta))))
            np.testing.assert_allclose(matrix @ x, zeta, rtol=0.0, atol=1e-10 * scale)
            # the closed form agrees with the assembled system
            np.testing.assert_allclose(refined, x, rtol=1e-6, atol=1e-6)

    def test_mirrored_neural_network(self, analyses) -> None:
        first = analyses[NEURAL_NETWORK].normal_form()
        second = analyses[NEURAL_NETWORK_MIRROR].normal_form()
        assert second.a == pytest.approx(-first.a, rel=1e-6)
        assert second.b == pytest.approx(-first.b, rel=1e-6)
        assert second.a / second.b == pytest.approx(published_ratio[NEURAL_NETWORK], rel=5e-2)
