from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from strata_morse.exceptions import SpectralAssemblyError
from strata_morse.spectral import (
    BaseSuspensionModel,
    SpectralModel,
    SpindleCircleModel,
    SuspensionTorus2Model,
    assemble_mode_operator,
    auto_threshold,
    build_model,
    heat_supertrace,
    mode_spectrum,
    pairing_defect,
    refine,
    spectrum,
    sweep,
    symbolic_agreement,
)
from strata_morse.spectral.base import fiber_differential
from tests.strategies import SEED


def spindle(**overrides) -> SpectralModel:
    fields = {"kind": "spindle_circle", "grid_points": 60, "mode_cutoff": 2}
    fields.update(overrides)
    return SpectralModel(**fields)


def torus_suspension(w, **overrides) -> SpectralModel:
    fields = {"kind": "suspension_torus2", "w": w, "grid_points": 60, "mode_cutoff": 1}
    fields.update(overrides)
    return SpectralModel(**fields)


class TestConfiguration:
    def test_defaults(self):
        model = SpectralModel(kind="spindle_circle")
        assert model.threshold == "auto"
        assert model.link_dim == 1
        assert model.model_dump()["epsilon_list"] == ["0", "10"]

    def test_spindle_takes_no_perversity(self):
        with pytest.raises(ValidationError):
            SpectralModel(kind="spindle_circle", w=[[1, 0]])

    def test_perversity_rows_have_two_coordinates(self):
        with pytest.raises(ValidationError):
            SpectralModel(kind="suspension_torus2", w=[[1, 0, 0]])

    @pytest.mark.parametrize(
        "field, value",
        [
            ("epsilon_list", [-1]),
            ("epsilon_list", []),
            ("threshold", 0),
            ("grid_points", 10),
            ("mode_cutoff", -1),
            ("color", "red"),
        ],
    )
    def test_invalid_fields(self, field, value):
        with pytest.raises(ValidationError):
            SpectralModel(kind="spindle_circle", **{field: value})

    def test_exact_parameters(self):
        model = SpectralModel(
            kind="spindle_circle", epsilon_list=["1/2", 2.5], threshold="1e-6"
        )
        assert [str(e) for e in model.epsilon_list] == ["1/2", "5/2"]
        assert float(model.threshold) == pytest.approx(1e-6)
        assert SpectralModel(kind="spindle_circle", threshold=1.5e-6).threshold == (
            Fraction(3, 2_000_000)
        )

    def test_build_model(self):
        assert isinstance(build_model(spindle()), SpindleCircleModel)
        assert isinstance(build_model(torus_suspension([[1, 0]])), SuspensionTorus2Model)
        with pytest.raises(TypeError):
            BaseSuspensionModel(spindle())


class TestDiscreteComplex:
    def test_fiber_differential_squares_to_zero(self):
        first = fiber_differential((1, 2), 0)
        second = fiber_differential((1, 2), 1)
        assert first.tolist() == [[1.0], [2.0]]
        assert second.tolist() == [[-2.0, 1.0]]
        assert np.allclose(second @ first, 0.0)

    def test_channels(self):
        model = build_model(torus_suspension([[1, 0]]))
        channels = model.channels((0, 0))
        assert [(c.fiber_degree, c.relative) for c in channels] == [
            (0, False),
            (1, False),
            (1, True),
            (2, True),
        ]
        assert all(not c.relative for c in model.channels((1, 0)))
        assert len(model.modes()) == 9

    @pytest.mark.parametrize("mode", [(0, 0), (1, 0), (1, -1)])
    @pytest.mark.parametrize("epsilon", [0.0, 5.0])
    def test_operator_is_a_symmetric_complex(self, mode, epsilon):
        operator = assemble_mode_operator(
            build_model(torus_suspension([[1, 1]])), mode, epsilon
        )
        assert operator.asymmetry() < 1e-10
        assert operator.complex_defect() < 1e-10
        matrix = operator.matrix()
        assert np.allclose(matrix, matrix.T)
        assert len(operator.degree_labels()) == matrix.shape[0]
        assert np.linalg.eigvalsh(matrix).min() > -1e-8

    def test_mode_outside_the_cutoff(self):
        with pytest.raises(SpectralAssemblyError):
            assemble_mode_operator(build_model(spindle()), (3,), 0.0)
        with pytest.raises(SpectralAssemblyError):
            assemble_mode_operator(build_model(spindle()), (0, 0), 0.0)

    def test_first_radial_eigenvalue_of_the_round_sphere(self):
        _, per_degree = mode_spectrum(spindle(grid_points=100), (0,), 0.0)
        functions = per_degree[0]
        assert functions[0] == pytest.approx(0.0, abs=1e-9)
        # first nonzero eigenvalue of the round 2-sphere
        assert functions[1] == pytest.approx(2.0, abs=0.05)

    @pytest.mark.parametrize("m", [1, 2])
    def test_fourier_modes_are_bounded_below(self, m):
        _, per_degree = mode_spectrum(spindle(), (m,), 0.0)
        assert min(values.min() for values in per_degree) >= 0.9 * m**2


class TestSpectrum:
    @pytest.mark.parametrize("epsilon", [0, 10])
    def test_spindle_counts(self, epsilon):
        report = spectrum(spindle(), epsilon)
        assert report.counts == [1, 0, 1]
        assert report.modes == 5
        assert report.asymmetry < 1e-10
        assert report.min_eigenvalue > -1e-8
        assert report.pairing_defect < 1e-6
        assert report.min_gap_ratio >= 10

    @pytest.mark.parametrize(
        "w, counts",
        [
            ([[1, 0]], [1, 1, 1, 1]),
            ([[1, 1]], [1, 1, 1, 1]),
            ([], [1, 0, 2, 1]),
            ([[1, 0], [0, 1]], [1, 2, 0, 1]),
        ],
    )
    def test_torus_suspension_counts_follow_the_perversity(self, w, counts):
        assert spectrum(torus_suspension(w), 0).counts == counts
        assert spectrum(torus_suspension(w), 10).counts == counts

    def test_fixed_threshold_and_keep(self):
        report = spectrum(spindle(keep=3), 2, threshold=1e-6)
        assert report.threshold == pytest.approx(1e-6)
        assert report.counts == [1, 0, 1]
        assert all(len(d.eigenvalues) <= 3 for d in report.degrees)
        assert report.degrees[1].gap_ratio == float("inf")

    def test_threads_do_not_change_the_result(self):
        single = spectrum(spindle(), 5)
        threaded = spectrum(spindle(), 5, threads=3)
        assert threaded.counts == single.counts
        assert threaded.degrees[0].eigenvalues == pytest.approx(
            single.degrees[0].eigenvalues
        )


class TestHelpers:
    def test_auto_threshold_finds_the_gap(self):
        cutoff = auto_threshold([1e-14, 3e-13, 0.5, 0.6, 2.0])
        assert 1e-12 < cutoff < 0.5
        assert auto_threshold([]) > 0

    def test_pairing_defect(self):
        paired = [(0.0, [np.array([0.0, 1.0, 4.0]), np.array([1.0, 4.0])])]
        assert pairing_defect(paired, 0.1) == 0.0
        shifted = [(0.0, [np.array([0.0, 1.0, 4.0]), np.array([1.0, 5.0])])]
        assert pairing_defect(shifted, 0.1) == pytest.approx(0.2)
        unpaired = [(0.0, [np.array([0.0, 1.0, 4.0]), np.array([1.0])])]
        assert pairing_defect(unpaired, 0.1) == float("inf")

    @seed(SEED)
    @settings(max_examples=50)
    @given(
        small=st.lists(st.floats(min_value=0, max_value=1e-10), min_size=1, max_size=5),
        large=st.lists(st.floats(min_value=0.1, max_value=100), min_size=1, max_size=10),
    )
    def test_auto_threshold_separates_round_off(self, small, large):
        cutoff = auto_threshold(small + large)
        assert max(small) < cutoff < min(large)


class TestSweep:
    def test_spindle_sweep_agrees_with_the_symbolic_engine(self):
        report = sweep(spindle(epsilon_list=[0, 2, 10]))
        assert report.stable
        assert report.stable_from == 0
        assert report.counts == [1, 0, 1]
        agreement = symbolic_agreement(spindle(), report)
        assert agreement.agree
        assert agreement.morse == [1, 0, 1]
        assert agreement.counts_zero_epsilon == [1, 0, 1]

    def test_torus_sweep(self):
        model = torus_suspension([[1, 0]], epsilon_list=[0, 5])
        report = sweep(model)
        assert [r.epsilon for r in report.reports] == [0.0, 5.0]
        assert symbolic_agreement(model, report).agree

    def test_needs_two_epsilons(self):
        with pytest.raises(ValueError):
            sweep(spindle(epsilon_list=[5]))
        with pytest.raises(ValueError):
            sweep(spindle(epsilon_list=[5, 5.0]))

    def test_disagreement_is_reported(self):
        report = sweep(spindle(epsilon_list=[0, 2]))
        # the zero perversity has P = 1 + 2b^2 + b^3, not the spindle's counts
        agreement = symbolic_agreement(torus_suspension([]), report)
        assert not agreement.agree
        assert "differ" in agreement.message

    def test_refinement(self):
        study = refine(spindle(), 2, [60, 120, 240])
        assert [row.grid_points for row in study.rows] == [60, 120, 240]
        assert study.counts_stable
        assert study.small_bounded
        assert study.excluded_converging
        assert study.verdict

    def test_heat_supertrace(self):
        results = heat_supertrace(spindle(), 2, [0.1, 1.0, 100.0])
        for result in results:
            assert result.poincare_at_minus_one == 2
            assert result.supertrace == pytest.approx(2.0, abs=1e-6)
            assert abs(result.remainder) < 1e-6
            assert all(s > -1e-6 for s in result.s_coefficients)
        # the heat kernel decays onto the harmonic forms
        assert results[-1].traces == pytest.approx([1.0, 0.0, 1.0], abs=1e-3)
