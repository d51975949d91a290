"""Planar quadrature for the most-continuous spectral component.

Integrals over the plane of N(eta) / (|eta|^2 + w^2)^2 are computed in polar
coordinates: the angle by uniformly refined periodic trapezoid sums (which
converge geometrically for smooth integrands) and the radius by the adaptive
Gauss-Kronrod scheme.  The singular integral of 1 / (|eta|^2 + w^2)^2 has the
closed form pi / w^2, which regularization trades against the circle value
of the numerator at radius |w|.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import PoleOnContourError, QuadratureFailureError, ValidationError
from .quadrature import RegularizedResult, adaptive_quadrature

#: disk radius default, in units of max(1, |w|)
DISK_RADIUS_FACTOR = 50.0


def planar_singular_integral(w: complex) -> complex:
    """Closed form pi / w^2 of the planar singular integral.

    Defined for w off the imaginary axis; on it the pole circle meets the
    integration plane.
    """
    w = complex(w)
    if abs(w.real) <= 1e-12 * (1.0 + abs(w)):
        raise PoleOnContourError(f"w = {w} is purely imaginary: pole circle on the plane")
    return np.pi / w**2


def _circle_values(numerator2d: Callable, radii: np.ndarray, n_angle: int) -> np.ndarray:
    """Trapezoid sums of the numerator over circles of the given radii."""
    theta = np.linspace(0.0, 2.0 * np.pi, n_angle, endpoint=False)
    r = radii[:, None]
    vals = np.asarray(numerator2d(r * np.cos(theta)[None, :], r * np.sin(theta)[None, :]),
                      dtype=complex)
    return vals.mean(axis=1) * 2.0 * np.pi


def circle_average(
    numerator2d: Callable, radius: float, tol: float = 1e-11, max_angle: int = 1 << 14
) -> complex:
    """Line integral of the numerator over the circle of the given radius.

    The angular mean (this value divided by 2 pi r) is what the planar
    regularization subtracts.  Refinement doubles the uniform angular grid
    until two successive levels agree.
    """
    if radius <= 0:
        raise ValidationError(f"radius must be positive, got {radius}")
    r = np.array([float(radius)])
    n = 16
    prev = _circle_values(numerator2d, r, n)[0]
    while n <= max_angle:
        n *= 2
        cur = _circle_values(numerator2d, r, n)[0]
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return radius * cur
        prev = cur
    raise QuadratureFailureError(
        f"angular refinement did not converge at {max_angle} points", est_error=abs(cur - prev)
    )


def _angular_profile(numerator2d: Callable, tol: float) -> Callable:
    """Radial profile r -> mean of the numerator over the circle of radius r.

    The angular grid is chosen once per call batch by doubling until the
    coarsest radius converges, then shared across the batch.
    """

    def profile(radii: np.ndarray) -> np.ndarray:
        radii = np.asarray(radii, dtype=float)
        n = 32
        prev = _circle_values(numerator2d, radii, n)
        while n <= (1 << 12):
            n *= 2
            cur = _circle_values(numerator2d, radii, n)
            if np.max(np.abs(cur - prev)) <= tol * max(1.0, float(np.max(np.abs(cur)))):
                return cur / (2.0 * np.pi)
            prev = cur
        return cur / (2.0 * np.pi)

    return profile


def planar_direct_integral(
    numerator2d: Callable,
    w: complex,
    T: float | None = None,
    tol: float = 1e-9,
) -> tuple[complex, float]:
    """Quadrature of N(eta) / (|eta|^2 + w^2)^2 over the disk |eta| <= T."""
    w = complex(w)
    if abs(w.real) <= 1e-12 * (1.0 + abs(w)):
        raise PoleOnContourError(f"w = {w} is purely imaginary: pole circle on the plane")
    if T is None:
        T = DISK_RADIUS_FACTOR * max(1.0, abs(w))
    mean = _angular_profile(numerator2d, tol)

    def f(r):
        r = np.asarray(r, dtype=float)
        return 2.0 * np.pi * r * mean(r) / (r**2 + w**2) ** 2

    aw = abs(w)
    seeds = sorted({aw * f0 for f0 in (0.25, 0.5, 1.0, 2.0, 4.0)} | {1.0, T / 4})
    return adaptive_quadrature(f, 0.0, T, tol=tol, initial_points=seeds)


def planar_regularized_integral(
    numerator2d: Callable,
    w: complex,
    T: float | None = None,
    tol: float = 1e-9,
    subtract: str = "average",
) -> RegularizedResult:
    """Circle-subtracted planar integral with closed-form singular part.

    Subtracts the angular average of the numerator on the circle |eta| = |w|
    (or the raw circle integral when ``subtract="integral"``), integrates the
    difference against the double-pole kernel, and adds the subtracted value
    times pi / w^2.  The constant part of the tail beyond the disk is
    completed analytically.
    """
    w = complex(w)
    if abs(w.real) <= 1e-12 * (1.0 + abs(w)):
        raise PoleOnContourError(f"w = {w} is purely imaginary: pole circle on the plane")
    if subtract not in ("average", "integral"):
        raise ValidationError(f"unknown subtraction normalization {subtract!r}")
    if T is None:
        T = DISK_RADIUS_FACTOR * max(1.0, abs(w))

    circ = circle_average(numerator2d, abs(w), tol=tol)
    j_w = circ / (2.0 * np.pi * abs(w)) if subtract == "average" else circ

    mean = _angular_profile(numerator2d, tol)

    def f(r):
        r = np.asarray(r, dtype=float)
        return 2.0 * np.pi * r * (mean(r) - j_w) / (r**2 + w**2) ** 2

    aw = abs(w)
    seeds = sorted({aw * f0 for f0 in (0.25, 0.5, 1.0, 2.0, 4.0)} | {1.0, T / 4})
    body, err = adaptive_quadrature(f, 0.0, T, tol=tol, initial_points=seeds)
    principal = body - j_w * np.pi / (T**2 + w**2)
    singular = j_w * planar_singular_integral(w)

    edge = float(np.max(np.abs(_circle_values(numerator2d, np.array([T]), 256)))) / (2 * np.pi)
    tail_bound = float(edge * np.pi / abs(T**2 + w**2))

    return RegularizedResult(
        principal=principal, singular=singular, est_error=err, tail_bound=tail_bound
    )


def radial_singular_quadrature(
    w: complex, R: float | None = None, tol: float = 1e-10
) -> tuple[complex, float]:
    """Radial quadrature oracle 2 pi int_0^inf r dr / (r^2 + w^2)^2.

    Integrates up to R and completes with the elementary tail
    pi / (R^2 + w^2).
    """
    w = complex(w)
    if abs(w.real) <= 1e-12 * (1.0 + abs(w)):
        raise PoleOnContourError(f"w = {w} is purely imaginary: pole circle on the plane")
    if R is None:
        R = 400.0 * max(1.0, abs(w))

    def f(r):
        r = np.asarray(r, dtype=float)
        return 2.0 * np.pi * r / (r**2 + w**2) ** 2

    aw = abs(w)
    seeds = sorted({aw * f0 for f0 in (0.5, 1.0, 2.0)} | {R / 8})
    value, err = adaptive_quadrature(f, 0.0, R, tol=tol, initial_points=seeds)
    return value + np.pi / (R**2 + w**2), err
