import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poletrace.errors import BranchAmbiguityError, InvalidCharacterError, ValidationError
from poletrace.models import (
    GrossencharParams,
    ModelKind,
    SpectralModel,
    branch_points,
    denominator,
    eigenvalue,
    eigenvalue_minparabolic_power,
    eigenvalue_minparabolic_root,
    grossenchar_from_unit,
    lambda_w,
    poles,
)

finite = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)
complexes = st.builds(complex, finite, finite)


def hilbert(t_norm: float) -> SpectralModel:
    return SpectralModel.hilbert_maass(GrossencharParams((t_norm, -t_norm)))


class TestGrossenchar:
    def test_zero_sum_enforced(self):
        with pytest.raises(InvalidCharacterError):
            GrossencharParams((1.0, -0.5))

    def test_norm_sq(self):
        chi = GrossencharParams((1.0, -1.0))
        assert chi.norm_sq == pytest.approx(1.0)
        assert not chi.is_trivial

    def test_unit_construction_trivial(self):
        chi = grossenchar_from_unit(0.5, 0)
        assert chi.is_trivial
        assert sum(chi.t) == 0.0

    def test_unit_construction_golden_ratio(self):
        log_eps = np.log((1.0 + np.sqrt(5.0)) / 2.0)
        chi = grossenchar_from_unit(log_eps, 1)
        assert chi.t[0] == pytest.approx(np.pi / log_eps)
        assert chi.t[0] == pytest.approx(6.5286, abs=1e-4)

    def test_unit_construction_linear_in_m(self):
        one = grossenchar_from_unit(0.7, 1)
        two = grossenchar_from_unit(0.7, 2)
        assert two.t[0] == pytest.approx(2 * one.t[0])

    def test_unit_construction_bad_args(self):
        with pytest.raises(InvalidCharacterError):
            grossenchar_from_unit(-1.0, 1)
        with pytest.raises(InvalidCharacterError):
            grossenchar_from_unit(1.0, 1, n=3)


class TestEigenvalue:
    def test_hilbert_product_form(self):
        model = hilbert(1.0)
        # product form, cross-checked against (s-1/2)^2 - |t|^2 - 1/4
        assert eigenvalue(model, 0.5) == pytest.approx(-1.25)
        for s in (0.3 + 2j, 1.7 - 0.4j):
            collapsed = (s - 0.5) ** 2 - model.c - 0.25
            assert eigenvalue(model, s) == pytest.approx(collapsed)

    def test_gl2q(self):
        assert eigenvalue(SpectralModel.gl2q(), 0.0) == 0.0

    def test_gl3_cuspidal(self):
        assert eigenvalue(SpectralModel.gl3_cuspidal(0.0), 0.5) == pytest.approx(-2.0)

    def test_min_parabolic_rejected(self):
        with pytest.raises(ValidationError):
            eigenvalue(SpectralModel.gl3_min_parabolic(), 0.5)

    @given(s=complexes, w=complexes)
    @settings(max_examples=200, deadline=None)
    def test_factorization_identity(self, s, w):
        for model in (SpectralModel.gl2q(), hilbert(1.3), SpectralModel.gl3_cuspidal(0.7)):
            lhs = eigenvalue(model, s) - lambda_w(model, w)
            rhs = model.a * ((s - 0.5) ** 2 - (w - 0.5) ** 2 - model.c)
            assert abs(lhs - rhs) <= 1e-10 * (1.0 + abs(lhs) + abs(rhs))

    def test_factorization_identity_bulk(self):
        rng = np.random.default_rng(7)
        s = rng.uniform(-3, 3, 10_000) + 1j * rng.uniform(-3, 3, 10_000)
        w = rng.uniform(-3, 3, 10_000) + 1j * rng.uniform(-3, 3, 10_000)
        for model in (hilbert(2.0), SpectralModel.gl3_cuspidal(1.0)):
            lam_s = np.array([eigenvalue(model, sv) for sv in s[:200]])
            lam_w = np.array([lambda_w(model, wv) for wv in w[:200]])
            rhs = model.a * ((s[:200] - 0.5) ** 2 - (w[:200] - 0.5) ** 2 - model.c)
            err = np.abs(lam_s - lam_w - rhs)
            assert np.all(err <= 1e-10 * (1.0 + np.abs(lam_s) + np.abs(lam_w)))
            assert np.allclose(denominator(model, s[:200], w[0]), lam_s - lambda_w(model, w[0]))


class TestMinParabolic:
    def test_power_zero_character(self):
        assert eigenvalue_minparabolic_power(0, 0, 0) == 0

    def test_power_example(self):
        assert eigenvalue_minparabolic_power(2, 0, -2) == 0

    def test_power_trace_enforced(self):
        with pytest.raises(InvalidCharacterError):
            eigenvalue_minparabolic_power(1, 1, 1)

    def test_root_zero(self):
        assert eigenvalue_minparabolic_root(0, 0, 0) == 0

    def test_root_example(self):
        assert eigenvalue_minparabolic_root(1, 1, 0) == pytest.approx(-2.0)

    def test_planar_normalization(self):
        from poletrace.models import eigenvalue_minparabolic_planar

        assert eigenvalue_minparabolic_planar(3.0, 2.0) == -5.0
        model = SpectralModel.gl3_min_parabolic(2.0)
        assert lambda_w(model, 1.5) == pytest.approx(1.5**2 - 2.0)
        assert model.nu == 2

    @given(s1=complexes, s2=complexes)
    @settings(max_examples=300, deadline=None)
    def test_parametrization_consistency(self, s1, s2):
        via_root = eigenvalue_minparabolic_root(s1, s1 + s2, 0.0)
        via_power = eigenvalue_minparabolic_power(s1, s2, -s1 - s2)
        assert abs(via_root - via_power) <= 1e-12 * (1.0 + abs(via_root))

    @given(s_f=complexes, s=complexes)
    @settings(max_examples=300, deadline=None)
    def test_cuspidal_reduction(self, s_f, s):
        reduced = eigenvalue_minparabolic_power(s_f + s, -s_f + s, -2.0 * s)
        target = 2.0 * (s_f * (s_f - 1.0) + 3.0 * s * (s - 1.0))
        assert abs(reduced - target) <= 1e-12 * (1.0 + abs(target))


class TestPoles:
    def test_gl2q_reference(self):
        pair = poles(SpectralModel.gl2q(), 0.75)
        assert pair.s_plus == pytest.approx(0.75)
        assert pair.s_plus + pair.s_minus == pytest.approx(1.0)

    def test_hilbert_pole_solves_eigenvalue_equation(self):
        model = hilbert(1.0)
        w = 1.0 + 2.0j
        pair = poles(model, w)
        assert pair.s_plus == pytest.approx(0.5 + np.sqrt(-2.75 + 2j))
        assert eigenvalue(model, pair.s_plus) == pytest.approx(lambda_w(model, w), rel=1e-10)
        assert eigenvalue(model, pair.s_minus) == pytest.approx(lambda_w(model, w), rel=1e-10)

    def test_gl3_cuspidal_pole(self):
        model = SpectralModel.gl3_cuspidal(0.0)
        pair = poles(model, 1.0)
        assert pair.s_plus == pytest.approx(0.5 + np.sqrt(1.0 / 3.0))
        assert eigenvalue(model, pair.s_plus) == pytest.approx(lambda_w(model, 1.0), rel=1e-10)

    def test_branch_cut_rejected(self):
        # w on the critical line above the branch point: radicand negative real
        with pytest.raises(BranchAmbiguityError):
            poles(hilbert(1.0), 0.5 + 2.0j)

    def test_right_half_plane_pole_side(self):
        rng = np.random.default_rng(3)
        model = hilbert(1.5)
        for _ in range(50):
            w = complex(rng.uniform(0.51, 3.0), rng.uniform(-3.0, 3.0))
            assert poles(model, w).s_plus.real > 0.5


class TestBranchPoints:
    def test_gl2q_degenerate(self):
        assert branch_points(SpectralModel.gl2q()) == (0.5 + 0j, 0.5 - 0j)

    def test_gl3_cuspidal(self):
        hi, lo = branch_points(SpectralModel.gl3_cuspidal(0.0))
        assert hi == pytest.approx(0.5 + 1j / (2.0 * np.sqrt(3.0)))
        assert lo == pytest.approx(0.5 - 1j / (2.0 * np.sqrt(3.0)))

    def test_golden_ratio_character(self):
        log_eps = np.log((1.0 + np.sqrt(5.0)) / 2.0)
        model = SpectralModel.hilbert_maass(grossenchar_from_unit(log_eps, 1))
        hi, _ = branch_points(model)
        assert hi.imag == pytest.approx(np.pi / log_eps)


class TestModelDescriptor:
    @pytest.mark.parametrize(
        "model",
        [
            SpectralModel.gl2q(),
            SpectralModel.hilbert_maass(GrossencharParams((2.0, -2.0))),
            SpectralModel.gl3_cuspidal(1.0),
            SpectralModel.gl3_cuspidal(-0.25j),
            SpectralModel.gl3_min_parabolic(2.0),
        ],
    )
    def test_roundtrip(self, model):
        restored = SpectralModel.from_dict(model.as_dict())
        assert restored.kind == model.kind
        if model.kind is not ModelKind.GL3_MIN_PARABOLIC:
            assert restored.a == model.a
            assert restored.c == pytest.approx(model.c)
            assert restored.nu == model.nu

    def test_inconsistent_descriptor_rejected(self):
        with pytest.raises(ValidationError):
            SpectralModel.from_dict({"kind": "GL2Q", "c": 5.0})

    def test_exceptional_t_f_range(self):
        SpectralModel.gl3_cuspidal(-0.5j)  # boundary allowed
        with pytest.raises(ValidationError):
            SpectralModel.gl3_cuspidal(-0.6j)
        with pytest.raises(ValidationError):
            SpectralModel.gl3_cuspidal(0.3 + 0.2j)

    def test_gl3_exceptional_offset_still_nonnegative(self):
        model = SpectralModel.gl3_cuspidal(-0.4j)
        assert 0.0 <= model.c < 1.0 / 12.0

    def test_gl3_real_offset_floor(self):
        assert SpectralModel.gl3_cuspidal(0.0).c == pytest.approx(1.0 / 12.0)
        assert SpectralModel.gl3_cuspidal(2.0).c >= 1.0 / 12.0
