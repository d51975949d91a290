import numpy as np
import pytest

from poletrace.continuation import (
    branching_difference,
    continue_integral,
    continue_pole,
    correction_coefficient,
    pole_endpoint,
    verify_no_branching_planar,
)
from poletrace.eisenstein import UpperHalfPoint
from poletrace.errors import (
    InvalidPathPairError,
    MultipleCrossingsError,
    PoleOnContourError,
    StartInLeftHalfPlaneError,
)
from poletrace.models import GrossencharParams, SpectralModel, poles, radicand
from poletrace.numerators import Numerator
from poletrace.paths import WPath
from poletrace.quadrature import adaptive_line_quadrature


def hilbert(t_norm: float) -> SpectralModel:
    return SpectralModel.hilbert_maass(GrossencharParams((t_norm, -t_norm)))


def crossing_path(height: float, w_end: complex, start: complex = 1.2 + 0j) -> WPath:
    points = [start, complex(start.real, height), complex(w_end.real, height), w_end]
    deduped = [points[0]] + [b for a, b in zip(points, points[1:]) if b != a]
    return WPath(tuple(deduped))


class TestContinuePole:
    def test_outside_crossing_flips(self):
        model = hilbert(1.0)
        trace = continue_pole(model, crossing_path(2.0, 0.25 + 2.5j))
        assert trace.final_sign == -1
        assert abs(trace.cut_crossings) == 1

    def test_inside_crossing_keeps_branch(self):
        model = hilbert(1.0)
        trace = continue_pole(model, crossing_path(0.5, 0.25 + 2.5j))
        assert trace.final_sign == +1
        assert trace.cut_crossings == 0

    def test_no_crossing_stays_reference(self):
        model = hilbert(1.0)
        path = WPath((1.5 + 0j, 1.5 + 1j, 0.8 + 1j))
        trace = continue_pole(model, path)
        assert trace.final_sign == +1
        assert pole_endpoint(trace) == pytest.approx(poles(model, 0.8 + 1j).s_plus)

    def test_endpoint_matches_signed_principal_root(self):
        model = hilbert(1.0)
        w_end = 0.25 + 2.5j
        flip = continue_pole(model, crossing_path(2.0, w_end))
        keep = continue_pole(model, crossing_path(0.5, w_end))
        root = np.sqrt(radicand(model, w_end))
        assert pole_endpoint(flip) == pytest.approx(0.5 - root, rel=1e-12)
        assert pole_endpoint(keep) == pytest.approx(0.5 + root, rel=1e-12)

    def test_left_start_rejected(self):
        with pytest.raises(StartInLeftHalfPlaneError):
            continue_pole(hilbert(1.0), WPath((0.3 + 0j, 0.2 + 1j)))


def four_step_endpoint(numerator, model, w_end, T=40.0, tol=1e-12):
    """Independent re-implementation of the regularize/cross/unregularize steps.

    Regularize right of the line, carry the formula across (the continued
    pole is 1/2 - sqrt(q) and the singular closed form continues as a
    rational function of it), then undo the regularization with the pole
    subtraction evaluated at the continued pole.
    """
    from poletrace.models import denominator
    from poletrace.quadrature import singular_line_tail

    s_cont = 0.5 - np.sqrt(radicand(model, w_end))
    n_star = complex(numerator(s_cont))

    def subtracted(s):
        s = np.asarray(s, dtype=complex)
        return (np.asarray(numerator(s), dtype=complex) - n_star) / denominator(model, s, w_end)

    body, _ = adaptive_line_quadrature(subtracted, T, tol=tol)
    principal = body - n_star * singular_line_tail(model, w_end, T)
    continued_singular = 2j * np.pi / (model.a * (1.0 - 2.0 * s_cont))
    return principal + n_star * continued_singular


class TestContinueIntegral:
    def test_gl2q_correction_formula(self):
        # trivial character: the continued pole is w itself and the endpoint
        # carries N(w') 4 pi i / (1 - 2 w')
        model = SpectralModel.gl2q()
        numerator = Numerator.synthetic_gaussian()
        w_end = 0.2 + 1.1j
        result = continue_integral(numerator, model, crossing_path(0.8, w_end), T=40.0)
        assert len(result.corrections) == 1
        term = result.corrections[0]
        assert term.s_star == pytest.approx(w_end, rel=1e-12)
        expected = complex(numerator(w_end)) * 4j * np.pi / (1.0 - 2.0 * w_end)
        assert term.term_value == pytest.approx(expected, rel=1e-10)

    def test_inside_crossing_adds_nothing(self):
        model = hilbert(1.0)
        numerator = Numerator.synthetic_gaussian()
        result = continue_integral(numerator, model, crossing_path(0.5, 0.25 + 2.5j), T=40.0)
        assert result.corrections == []

    def test_four_step_oracle_at_wprime(self):
        model = hilbert(1.0)
        numerator = Numerator.synthetic_gaussian()
        w_prime = 0.2 + 2.0j
        result = continue_integral(numerator, model, crossing_path(2.0, w_prime), T=40.0)
        oracle = four_step_endpoint(numerator, model, w_prime)
        assert result.endpoint_value == pytest.approx(oracle, rel=1e-9)

    def test_four_step_oracle_after_descent(self):
        # continue through w' = 0.2 + 2i and back down to w'' = 0.2
        model = hilbert(1.0)
        numerator = Numerator.synthetic_gaussian()
        w_second = 0.2 + 0j
        path = WPath((1.2 + 0j, 1.2 + 2j, 0.2 + 2j, w_second))
        result = continue_integral(numerator, model, path, T=40.0)
        oracle = four_step_endpoint(numerator, model, w_second)
        assert result.endpoint_value == pytest.approx(oracle, rel=1e-9)

    def test_deformed_contour_oracle(self):
        # independent truth check: the continuation along an outside path
        # equals the integral over a contour dragged by the poles, with the
        # continued pole kept to its right and the other to its left;
        # no residue calculus or closed forms are involved on the oracle side
        from poletrace.models import denominator
        from poletrace.quadrature import adaptive_quadrature

        model = hilbert(1.0)
        numerator = Numerator.synthetic_gaussian()
        w_end = 0.25 + 2.5j
        result = continue_integral(numerator, model, crossing_path(2.0, w_end), T=60.0)

        root = np.sqrt(radicand(model, w_end))
        upper = (0.5 - root).imag     # continued pole, upper left
        lower = (0.5 + root).imag     # other pole, lower right
        contour = [
            0.5 - 60j,
            0.5 + 1j * (lower - 0.6), 1.4 + 1j * (lower - 0.6),
            1.4 + 1j * (lower + 0.6), 0.5 + 1j * (lower + 0.6),
            0.5 + 1j * (upper - 0.6), -0.6 + 1j * (upper - 0.6),
            -0.6 + 1j * (upper + 0.6), 0.5 + 1j * (upper + 0.6),
            0.5 + 60j,
        ]
        oracle = 0.0 + 0.0j
        for z0, z1 in zip(contour[:-1], contour[1:]):
            dz = z1 - z0
            seg, _ = adaptive_quadrature(
                lambda t, z0=z0, dz=dz: np.asarray(numerator(z0 + np.asarray(t) * dz))
                / denominator(model, z0 + np.asarray(t) * dz, w_end) * dz,
                0.0, 1.0, tol=1e-13,
            )
            oracle += seg
        assert result.endpoint_value == pytest.approx(oracle, rel=1e-9)

    def test_multi_crossing_rejected(self):
        model = hilbert(1.0)
        path = WPath((1.2 + 0j, 0.2 + 2j, 1.2 + 3j, 0.2 + 4j))
        with pytest.raises(MultipleCrossingsError):
            continue_integral(Numerator.synthetic_gaussian(), model, path)

    def test_endpoint_margin_enforced(self):
        model = hilbert(1.0)
        path = WPath((1.2 + 0j, 0.52 + 2j))
        with pytest.raises(PoleOnContourError):
            continue_integral(Numerator.synthetic_gaussian(), model, path)


class TestBranchingDifference:
    def test_hilbert_example(self):
        model = hilbert(1.0)
        numerator = Numerator.synthetic_gaussian()
        w_end = 0.25 + 2.5j
        path1 = crossing_path(2.0, w_end)
        path2 = crossing_path(0.3, w_end)
        diff, term = branching_difference(numerator, model, w_end, path1, path2, T=40.0)
        s_star = 0.5 - np.sqrt((w_end - 0.5) ** 2 + 1.0)
        expected = complex(numerator(s_star)) * 4j * np.pi / (1.0 - 2.0 * s_star)
        assert diff == pytest.approx(expected, rel=1e-6)
        assert term.term_value == pytest.approx(expected, rel=1e-12)

    def test_gl3_a_explicit_form(self):
        model = SpectralModel.gl3_cuspidal(0.0)
        numerator = Numerator.synthetic_gaussian()
        root_c = np.sqrt(model.c)
        w_end = complex(0.25, 1.2 * root_c)
        path1 = crossing_path(1.5 * root_c, w_end)
        path2 = crossing_path(0.5 * root_c, w_end)
        diff, term = branching_difference(numerator, model, w_end, path1, path2, T=40.0)
        s_star = 0.5 - np.sqrt(radicand(model, w_end))
        expected = complex(numerator(s_star)) * 8j * np.pi / (36.0 * (1.0 - 2.0 * s_star) ** 3)
        assert diff == pytest.approx(expected, rel=1e-6)

    def test_both_inside_pair_rejected_but_values_agree(self):
        model = hilbert(1.0)
        numerator = Numerator.synthetic_gaussian()
        w_end = 0.25 + 2.5j
        inside_a = crossing_path(0.3, w_end)
        inside_b = crossing_path(0.7, w_end)
        with pytest.raises(InvalidPathPairError):
            branching_difference(numerator, model, w_end, inside_a, inside_b)
        ra = continue_integral(numerator, model, inside_a, T=40.0)
        rb = continue_integral(numerator, model, inside_b, T=40.0)
        assert ra.endpoint_value == pytest.approx(rb.endpoint_value, rel=1e-8)

    def test_trivial_character_rejected(self):
        with pytest.raises(InvalidPathPairError):
            branching_difference(
                Numerator.synthetic_gaussian(), SpectralModel.gl2q(), 0.2 + 1j,
                crossing_path(2.0, 0.2 + 1j), crossing_path(0.5, 0.2 + 1j),
            )

    def test_wrong_endpoint_rejected(self):
        model = hilbert(1.0)
        with pytest.raises(InvalidPathPairError):
            branching_difference(
                Numerator.synthetic_gaussian(), model, 0.25 + 2.5j,
                crossing_path(2.0, 0.25 + 2.5j), crossing_path(0.5, 0.3 + 2.5j),
            )


class TestContinuationProperties:
    def test_path_independence_within_branch_class(self):
        model = hilbert(1.2)
        numerator = Numerator.synthetic_gaussian()
        w_end = 0.25 + 2.2j
        outside_a = continue_integral(numerator, model, crossing_path(1.6, w_end), T=40.0)
        outside_b = continue_integral(numerator, model, crossing_path(2.4, w_end), T=40.0)
        assert outside_a.endpoint_value == pytest.approx(outside_b.endpoint_value, rel=1e-8)

    def test_crossing_height_criterion(self):
        model = hilbert(1.5)
        numerator = Numerator.synthetic_gaussian()
        root_c = np.sqrt(model.c)
        w_end = complex(0.25, 1.8 * root_c)
        for factor in (0.80, 0.90, 0.98, 1.02, 1.10, 1.20):
            result = continue_integral(
                numerator, model, crossing_path(factor * root_c, w_end), T=30.0, tol=1e-9
            )
            assert bool(result.corrections) == (factor > 1.0)

    def test_gl2q_always_picks_up_correction(self):
        model = SpectralModel.gl2q()
        numerator = Numerator.synthetic_gaussian()
        for height in (0.2, 0.9, 1.7):
            w_end = complex(0.2, height + 0.3)
            result = continue_integral(
                numerator, model, crossing_path(height, w_end), T=30.0, tol=1e-9
            )
            assert len(result.corrections) == 1

    def test_coefficient_vs_singular_closed_forms(self):
        # the simple-pole coefficient is the jump of the singular value
        # across the crossing: continued form minus fresh evaluation
        from poletrace.quadrature import singular_line_integral

        model = hilbert(1.0)
        w_end = 0.25 + 2.5j
        s_star = 0.5 - np.sqrt(radicand(model, w_end))
        continued_form = 2j * np.pi / (model.a * (1.0 - 2.0 * s_star))
        fresh = singular_line_integral(model, s_star)
        assert correction_coefficient(model, s_star) == pytest.approx(
            continued_form - fresh, rel=1e-10
        )

    def test_coefficient_double_pole_magnitude(self):
        # the double-pole coefficient matches the singular-form jump in
        # magnitude; its sign follows the stated 8 pi i/(1-2s*)^3 form
        from poletrace.quadrature import singular_line_integral

        model = SpectralModel.gl3_cuspidal(1.0)
        w_end = complex(0.25, 1.3 * np.sqrt(model.c))
        s_star = 0.5 - np.sqrt(radicand(model, w_end))
        continued_form = 4j * np.pi / (model.a**2 * (2.0 * s_star - 1.0) ** 3)
        fresh = singular_line_integral(model, s_star)
        coefficient = correction_coefficient(model, s_star)
        assert abs(coefficient) == pytest.approx(abs(continued_form - fresh), rel=1e-10)
        assert coefficient == pytest.approx(-(continued_form - fresh), rel=1e-10)


class TestPlanarNoBranching:
    def test_gaussian(self):
        report = verify_no_branching_planar(
            lambda x, y: np.exp(-(x**2 + y**2)), -1.0 + 0.5j, 1.0 + 0.5j, tol=1e-6
        )
        assert report.passed
        # the singular value is the same formula pi/w^2 on both sides; for a
        # mirrored pair the two evaluations are complex conjugates
        assert report.singular_left == pytest.approx(np.conj(report.singular_right))

    def test_zero_numerator(self):
        report = verify_no_branching_planar(
            lambda x, y: np.zeros_like(x), -0.7 + 0.2j, 0.7 + 0.2j, tol=1e-12
        )
        assert report.difference == 0.0

    def test_weighted_gaussian(self):
        f = lambda x, y: (x**2 + y**2) * np.exp(-(x**2 + y**2))
        report = verify_no_branching_planar(f, -0.8 + 0.3j, 0.8 + 0.3j, tol=1e-6)
        assert report.passed

    def test_non_mirrored_pair_rejected(self):
        from poletrace.errors import ValidationError

        with pytest.raises(ValidationError):
            verify_no_branching_planar(
                lambda x, y: np.exp(-(x**2 + y**2)), -1.0 + 0.4j, 1.0 + 0.5j
            )


class TestEisensteinNumeratorContinuation:
    def test_two_heights_agree_and_match_formula(self):
        base = UpperHalfPoint(0.0, 1.0)
        numerator = Numerator.eisenstein_product_gl2(base, base, n_terms=25)
        model = SpectralModel.gl2q()
        w_end = 0.2 + 0.9j
        r1 = continue_integral(numerator, model, crossing_path(0.7, w_end), T=25.0, tol=1e-10)
        r2 = continue_integral(numerator, model, crossing_path(1.5, w_end), T=25.0, tol=1e-10)
        assert r1.endpoint_value == pytest.approx(r2.endpoint_value, rel=1e-8)
        expected = complex(numerator(w_end)) * 4j * np.pi / (1.0 - 2.0 * w_end)
        assert r1.corrections[0].term_value == pytest.approx(expected, rel=1e-8)
