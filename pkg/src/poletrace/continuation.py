"""Pathwise continuation of the spectral line integrals.

The pole s(w) = 1/2 + sqrt((w - 1/2)^2 + c) is continued along a w-path by
tracking the square root of the radicand curve.  A single crossing of the
critical line flips the branch exactly when the radicand winds around the
origin, i.e. when the crossing height exceeds sqrt(c).  A flipped branch at
an endpoint left of the critical line contributes the moderate-growth
correction term

    nu = 1:   4 pi i * N(s*) / (a   (1 - 2 s*))
    nu = 2:   8 pi i * N(s*) / (a^2 (1 - 2 s*)^3)

with s* the continued pole, on top of the direct line integral.  Crossing
between the branch points leaves the branch, and hence the value, unchanged:
the difference of the two continuations is exactly the correction term.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    InvalidPathPairError,
    MultipleCrossingsError,
    PoleOnContourError,
    StartInLeftHalfPlaneError,
    ValidationError,
)
from .models import SpectralModel, radicand
from .paths import COLLISION_TOL, BranchTrace, CurveSamples, WPath, sample_path, track_sqrt
from .planar import planar_direct_integral, planar_regularized_integral, planar_singular_integral
from .quadrature import check_line_symmetry, direct_line_integral

#: minimum distance of an endpoint from the critical line
ENDPOINT_MARGIN = 0.05
#: default sampling step along w-paths
PATH_STEP = 0.01


@dataclass(frozen=True)
class CorrectionTerm:
    """The moderate-growth term picked up by a branch-flipping continuation."""

    s_star: complex
    nu: int
    coefficient: complex
    numerator_value: complex

    @property
    def term_value(self) -> complex:
        return self.coefficient * self.numerator_value

    def as_dict(self) -> dict:
        return {
            "s_star": [self.s_star.real, self.s_star.imag],
            "nu": self.nu,
            "coefficient": [self.coefficient.real, self.coefficient.imag],
            "numerator_value": [self.numerator_value.real, self.numerator_value.imag],
            "term_value": [self.term_value.real, self.term_value.imag],
        }


@dataclass
class ContinuationResult:
    """Endpoint value of a pathwise continuation plus its bookkeeping."""

    endpoint_value: complex
    corrections: list[CorrectionTerm]
    trace: BranchTrace
    est_error: float = 0.0

    def as_dict(self) -> dict:
        return {
            "endpoint": [self.endpoint_value.real, self.endpoint_value.imag],
            "corrections": [c.as_dict() for c in self.corrections],
            "crossings": self.trace.cut_crossings,
        }


def correction_coefficient(model: SpectralModel, s_star: complex) -> complex:
    """Closed-form coefficient multiplying N(s*) in the correction term."""
    s_star = complex(s_star)
    if model.nu == 1:
        return 4j * np.pi / (model.a * (1.0 - 2.0 * s_star))
    return 8j * np.pi / (model.a**2 * (1.0 - 2.0 * s_star) ** 3)


def continue_pole(
    model: SpectralModel,
    path: WPath,
    step: float = PATH_STEP,
    collision_tol: float = COLLISION_TOL,
) -> BranchTrace:
    """Track the integrand pole s(w) along a w-path.

    The trace's sqrt samples are of the radicand (w - 1/2)^2 + c, so the pole
    trajectory is 1/2 plus the tracked root; the initial branch is the one
    with the pole right of the critical line.
    """
    if path.start.real <= 0.5:
        raise StartInLeftHalfPlaneError(
            f"continuation must start right of the critical line, got {path.start}"
        )
    w_samps = sample_path(path, step)
    q = np.asarray([radicand(model, w) for w in w_samps.samples], dtype=complex)
    q_samples = CurveSamples(q, step_control=max(step, float(np.max(np.abs(np.diff(q))))))
    return track_sqrt(q_samples, initial_branch=+1, collision_tol=collision_tol,
                      w_samples=w_samps)


def pole_endpoint(trace: BranchTrace) -> complex:
    """Continued pole at the end of the trace: 1/2 + tracked root."""
    return 0.5 + complex(trace.sqrt_samples.samples[-1])


def _require_single_crossing(path: WPath) -> int:
    crossings = path.critical_line_crossings()
    if len(crossings) > 1:
        raise MultipleCrossingsError(
            f"path crosses the critical line {len(crossings)} times; only single "
            "crossings are supported"
        )
    return len(crossings)


def continue_integral(
    numerator: Callable,
    model: SpectralModel,
    path: WPath,
    T: float = 40.0,
    tol: float = 1e-11,
    step: float = PATH_STEP,
    endpoint_margin: float = ENDPOINT_MARGIN,
) -> ContinuationResult:
    """Continue the spectral line integral along a w-path.

    The endpoint value is the direct quadrature at the path end plus, when
    the tracked pole crossed the branch cut into the left half plane, the
    closed-form correction term at the continued pole.
    """
    _require_single_crossing(path)
    w_end = path.end
    if abs(w_end.real - 0.5) <= endpoint_margin:
        raise PoleOnContourError(
            f"endpoint {w_end} within {endpoint_margin} of the critical line"
        )
    check_line_symmetry(numerator, T)

    trace = continue_pole(model, path, step=step)
    direct, err = direct_line_integral(numerator, model, w_end, T=T, tol=tol)

    corrections: list[CorrectionTerm] = []
    endpoint_value = direct
    if trace.final_sign == -1 and w_end.real < 0.5:
        s_star = pole_endpoint(trace)
        term = CorrectionTerm(
            s_star=s_star,
            nu=model.nu,
            coefficient=correction_coefficient(model, s_star),
            numerator_value=complex(numerator(s_star)),
        )
        corrections.append(term)
        endpoint_value = direct + term.term_value

    return ContinuationResult(
        endpoint_value=endpoint_value, corrections=corrections, trace=trace, est_error=err
    )


def branching_difference(
    numerator: Callable,
    model: SpectralModel,
    w_end: complex,
    path1: WPath,
    path2: WPath,
    T: float = 40.0,
    tol: float = 1e-11,
    step: float = PATH_STEP,
) -> tuple[complex, CorrectionTerm]:
    """Difference of the continuations along an outside and an inside path.

    ``path1`` must cross the critical line above the branch points in
    magnitude, ``path2`` below, and both must terminate at ``w_end`` in the
    left half plane.  Returns the numerically computed difference and,
    independently, the closed-form correction term at the continued pole
    s* = 1/2 - sqrt((w_end - 1/2)^2 + c); the two agree for a correct
    continuation pipeline.
    """
    w_end = complex(w_end)
    root_c = np.sqrt(model.c) if model.c > 0 else 0.0
    if not root_c > 0:
        raise InvalidPathPairError(
            "branching difference needs sqrt(c) > 0 (nontrivial branch points)"
        )
    for path, expect_outside in ((path1, True), (path2, False)):
        if path.end != w_end:
            raise InvalidPathPairError(f"path {path.label!r} does not end at w_end = {w_end}")
        crossings = path.critical_line_crossings()
        if len(crossings) != 1:
            raise InvalidPathPairError(
                f"path {path.label!r} must cross the critical line exactly once"
            )
        height = abs(crossings[0].imag)
        if expect_outside and height <= root_c:
            raise InvalidPathPairError(
                f"path {path.label!r} crosses at height {height:g} <= sqrt(c) = {root_c:g}"
            )
        if not expect_outside and height >= root_c:
            raise InvalidPathPairError(
                f"path {path.label!r} crosses at height {height:g} >= sqrt(c) = {root_c:g}"
            )
    if w_end.real >= 0.5:
        raise InvalidPathPairError(f"w_end = {w_end} must lie left of the critical line")

    r1 = continue_integral(numerator, model, path1, T=T, tol=tol, step=step)
    r2 = continue_integral(numerator, model, path2, T=T, tol=tol, step=step)
    difference = r1.endpoint_value - r2.endpoint_value

    s_star = 0.5 - np.sqrt(radicand(model, w_end))
    term = CorrectionTerm(
        s_star=s_star,
        nu=model.nu,
        coefficient=correction_coefficient(model, s_star),
        numerator_value=complex(numerator(s_star)),
    )
    return difference, term


@dataclass
class NoBranchingReport:
    """Planar continuation across the imaginary axis versus direct quadrature."""

    continued: complex
    direct: complex
    singular_right: complex
    singular_left: complex
    est_error: float
    tol: float

    @property
    def difference(self) -> complex:
        return self.continued - self.direct

    @property
    def passed(self) -> bool:
        return abs(self.difference) <= self.tol * max(1.0, abs(self.direct))

    def as_dict(self) -> dict:
        return {
            "continued": [self.continued.real, self.continued.imag],
            "direct": [self.direct.real, self.direct.imag],
            "difference": [self.difference.real, self.difference.imag],
            "tol": self.tol,
            "passed": self.passed,
        }


def verify_no_branching_planar(
    numerator2d: Callable,
    w_left: complex,
    w_right: complex,
    T: float | None = None,
    tol: float = 1e-6,
) -> NoBranchingReport:
    """Check that the planar continuation picks up no extra term.

    Regularizes at ``w_right``, carries the formula across the imaginary
    axis to the mirrored ``w_left`` (the singular value is again pi / w^2,
    so the extra terms cancel), and compares with direct quadrature there.
    """
    w_left, w_right = complex(w_left), complex(w_right)
    if w_right.real <= 0:
        raise ValidationError(f"w_right must have positive real part, got {w_right}")
    if abs(w_left.real + w_right.real) > 1e-12 * (1 + abs(w_right)) or abs(
        w_left.imag - w_right.imag
    ) > 1e-12 * (1 + abs(w_right)):
        raise ValidationError(
            f"w_left = {w_left} is not the mirror of w_right = {w_right} across the axis"
        )

    reg_left = planar_regularized_integral(numerator2d, w_left, T=T, tol=min(tol, 1e-8))
    direct_left, err = planar_direct_integral(numerator2d, w_left, T=T, tol=min(tol, 1e-8))
    return NoBranchingReport(
        continued=reg_left.total,
        direct=direct_left,
        singular_right=planar_singular_integral(w_right),
        singular_left=planar_singular_integral(w_left),
        est_error=err + reg_left.est_error,
        tol=tol,
    )
