"""Piecewise-linear complex paths and branch-tracked square roots.

A continuation parameter travels along a :class:`WPath`; the quantity under
the square root (the radicand) then traces a curve in the plane, and the
branch of the root is fixed by continuity along that curve.  The branch cut
is the negative real axis, so branch bookkeeping reduces to counting signed
crossings of that ray by the sampled radicand polyline.

For horizontal crossings of the critical line the radicand runs along a
right-facing parabola; :func:`radicand_curve` produces the samples together
with the parabola coefficients, and :func:`crosses_origin` implements the
closed-form criterion for whether that parabola encloses the origin.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    BoundaryCrossingError,
    BranchAmbiguityError,
    BranchPointCollisionError,
    DegenerateParametrizationError,
    InvalidPathError,
)

#: default tolerance for "the radicand hits the origin"
COLLISION_TOL = 1e-8
#: bisection depth limit for continuity refinement
REFINE_DEPTH = 40


@dataclass(frozen=True)
class WPath:
    """Piecewise-linear path of a complex parameter.

    Interpolation between consecutive points is linear in a real parameter
    on [0, 1].  At least two points are required and consecutive points must
    be distinct.
    """

    points: tuple[complex, ...]
    label: str = ""

    def __post_init__(self):
        pts = tuple(complex(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise InvalidPathError(f"path needs at least 2 points, got {len(pts)}")
        for a, b in zip(pts[:-1], pts[1:]):
            if a == b:
                raise InvalidPathError(f"consecutive path points coincide at {a}")

    @property
    def start(self) -> complex:
        return self.points[0]

    @property
    def end(self) -> complex:
        return self.points[-1]

    def arc_length(self) -> float:
        return float(sum(abs(b - a) for a, b in zip(self.points[:-1], self.points[1:])))

    def critical_line_crossings(self, re_line: float = 0.5) -> list[complex]:
        """Points where the path crosses the vertical line Re = re_line.

        Used only for precondition validation; branch decisions come from the
        tracked radicand, never from path geometry.
        """
        crossings = []
        for a, b in zip(self.points[:-1], self.points[1:]):
            xa, xb = a.real - re_line, b.real - re_line
            if xa == 0.0 and xb == 0.0:
                continue
            if (xa > 0) != (xb > 0) or xa == 0.0 or xb == 0.0:
                # count a touch only when the sign actually changes
                if (xa > 0) == (xb > 0):
                    continue
                t = xa / (xa - xb)
                crossings.append(a + t * (b - a))
        return crossings


@dataclass
class CurveSamples:
    """Ordered complex samples of a curve with a step-size guarantee.

    ``step_control`` bounds the modulus of the difference between
    consecutive samples.
    """

    samples: np.ndarray
    step_control: float

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=complex)
        if self.samples.ndim != 1 or len(self.samples) < 1:
            raise InvalidPathError("curve samples must be a 1-d sequence")

    def __len__(self) -> int:
        return len(self.samples)

    def max_step(self) -> float:
        if len(self.samples) < 2:
            return 0.0
        return float(np.max(np.abs(np.diff(self.samples))))

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["k", "re", "im"])
            for k, z in enumerate(self.samples):
                writer.writerow([k, f"{z.real:.17g}", f"{z.imag:.17g}"])


@dataclass
class BranchTrace:
    """Continuously tracked square root along a sampled radicand curve.

    ``cut_crossings`` is the signed number of times the radicand polyline
    crosses the negative real axis (positive for crossings from the upper
    half plane to the lower).  ``final_sign`` is +1 when the tracked root
    returns to the branch it started on, -1 otherwise.
    """

    w_samples: Optional[CurveSamples]
    radicand_samples: CurveSamples
    sqrt_samples: CurveSamples
    cut_crossings: int
    final_sign: int


def sample_path(path: WPath, step: float) -> CurveSamples:
    """Sample a piecewise-linear path with spacing at most ``step``."""
    if step <= 0:
        raise InvalidPathError(f"step must be positive, got {step}")
    pieces = [np.array([path.points[0]], dtype=complex)]
    for a, b in zip(path.points[:-1], path.points[1:]):
        n = max(1, int(np.ceil(abs(b - a) / step - 1e-12)))
        t = np.linspace(0.0, 1.0, n + 1)[1:]
        pieces.append(a + t * (b - a))
    return CurveSamples(np.concatenate(pieces), step_control=float(step))


def _segment_min_distance_to_origin(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distance from the origin to each segment [a_k, b_k]."""
    d = b - a
    denom = np.abs(d) ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(denom > 0, -np.real(a * np.conj(d)) / np.where(denom > 0, denom, 1.0), 0.0)
    t = np.clip(t, 0.0, 1.0)
    return np.abs(a + t * d)


def _signed_cut_crossings(z: np.ndarray) -> int:
    """Signed crossings of the negative real axis by the polyline ``z``.

    Samples with Im == 0 count as the upper half plane, which keeps a
    tangential touch from registering as a double crossing.
    """
    x, y = z.real, z.imag
    upper = y >= 0.0
    change = upper[:-1] != upper[1:]
    if not np.any(change):
        return 0
    ia = np.nonzero(change)[0]
    ya, yb = y[ia], y[ia + 1]
    t = ya / (ya - yb)
    xc = x[ia] + t * (x[ia + 1] - x[ia])
    on_ray = xc < 0.0
    sign = np.where(upper[ia], 1, -1)
    return int(np.sum(sign[on_ray]))


def track_sqrt(
    radicand: CurveSamples,
    initial_branch: int,
    collision_tol: float = COLLISION_TOL,
    w_samples: Optional[CurveSamples] = None,
) -> BranchTrace:
    """Track a continuous square root along a sampled radicand curve.

    The starting value is ``initial_branch`` times the principal root of the
    first sample; every subsequent sample takes whichever root is closer to
    its predecessor.  A chord flips the branch exactly when it crosses the
    negative real axis, in which case the candidate roots satisfy
    |p1 - p0| > |p1 + p0| with a clear margin.  Chords whose ratio sits near
    1 pass close to the origin and are bisected (linear interpolation of the
    radicand) up to :data:`REFINE_DEPTH` levels; persistent ambiguity means
    the curve runs into the branch point and a collision is reported.
    """
    if initial_branch not in (+1, -1):
        raise BranchAmbiguityError(f"initial_branch must be +1 or -1, got {initial_branch}")
    z = np.asarray(radicand.samples, dtype=complex)
    if np.min(np.abs(z)) <= collision_tol:
        raise BranchPointCollisionError(
            f"radicand sample within {collision_tol:g} of the branch point"
        )
    z0 = z[0]
    if z0.imag == 0.0 and z0.real < 0.0:
        raise BranchAmbiguityError("initial radicand sample lies on the branch cut")

    for depth in range(REFINE_DEPTH + 1):
        dmin = _segment_min_distance_to_origin(z[:-1], z[1:])
        if np.min(dmin) <= collision_tol:
            raise BranchPointCollisionError(
                f"radicand curve passes within {collision_tol:g} of the branch point"
            )
        p = np.sqrt(z)
        diff = np.abs(p[1:] - p[:-1])
        summ = np.abs(p[1:] + p[:-1])
        ambiguous = (diff > 0.8 * summ) & (diff < 1.25 * summ)
        if not np.any(ambiguous):
            break
        if depth == REFINE_DEPTH:
            raise BranchPointCollisionError(
                "continuity refinement hit depth limit; path too close to the branch point"
            )
        # bisect ambiguous segments only
        idx = np.nonzero(ambiguous)[0]
        mids = 0.5 * (z[idx] + z[idx + 1])
        z = np.insert(z, idx + 1, mids)
        if w_samples is not None:
            wz = np.asarray(w_samples.samples, dtype=complex)
            wmids = 0.5 * (wz[idx] + wz[idx + 1])
            w_samples = CurveSamples(np.insert(wz, idx + 1, wmids), w_samples.step_control)

    flip = diff > summ  # True where the chord crosses the cut
    eps = initial_branch * np.concatenate(([1], np.cumprod(np.where(flip, -1, 1))))
    roots = eps * p

    crossings = _signed_cut_crossings(z)
    final_sign = +1 if crossings % 2 == 0 else -1

    step = float(np.max(np.abs(np.diff(z)))) if len(z) > 1 else 0.0
    return BranchTrace(
        w_samples=w_samples,
        radicand_samples=CurveSamples(z, step_control=max(step, radicand.step_control)),
        sqrt_samples=CurveSamples(roots, step_control=float(np.max(np.abs(np.diff(roots))))),
        cut_crossings=crossings,
        final_sign=final_sign,
    )


@dataclass(frozen=True)
class ParabolaCoeffs:
    """Coefficients of the analytic radicand parabola x = a2*y^2 + c0."""

    a2: float
    c0: float

    def as_dict(self) -> dict:
        return {"a2": self.a2, "c0": self.c0}


def _sample_quadratic_curve(height: float, offset: float, sigma_range, step: float):
    """Samples of (sigma + i*height)^2 + offset for sigma in sigma_range."""
    lo, hi = float(sigma_range[0]), float(sigma_range[1])
    if not hi > lo:
        raise InvalidPathError(f"empty sigma range ({lo}, {hi})")
    speed = 2.0 * np.hypot(max(abs(lo), abs(hi)), abs(height))
    n = max(8, int(np.ceil(speed * (hi - lo) / step)))
    sigma = np.linspace(lo, hi, n + 1)
    z = (sigma + 1j * height) ** 2 + offset
    return CurveSamples(z, step_control=float(max(step, np.max(np.abs(np.diff(z))))))


def radicand_curve(
    t_norm: float,
    alpha: float,
    sigma_range: Sequence[float] = (-3.0, 3.0),
    step: float = 0.01,
) -> tuple[CurveSamples, ParabolaCoeffs]:
    """Radicand curve for a horizontal crossing at height alpha * t_norm.

    The curve is (sigma^2 + (1 - alpha^2) t^2) + (2 sigma alpha t) i, a
    right-facing parabola x = (y^2 + 4 alpha^2 (1 - alpha^2) t^4) / (4 alpha^2 t^2).
    """
    if t_norm <= 0:
        raise DegenerateParametrizationError(f"t_norm must be positive, got {t_norm}")
    if alpha == 0:
        raise DegenerateParametrizationError("alpha = 0 collapses the curve onto the real axis")
    samples = _sample_quadratic_curve(alpha * t_norm, t_norm**2, sigma_range, step)
    a2 = 1.0 / (4.0 * alpha**2 * t_norm**2)
    c0 = (1.0 - alpha**2) * t_norm**2
    return samples, ParabolaCoeffs(a2=a2, c0=c0)


def radicand_curve_trivial(
    t_o: float,
    sigma_range: Sequence[float] = (-3.0, 3.0),
    step: float = 0.01,
) -> tuple[CurveSamples, ParabolaCoeffs]:
    """Trivial-character variant: (sigma^2 - t_o^2) + (2 sigma t_o) i.

    Satisfies x = (y - 2 t_o^2)(y + 2 t_o^2) / (4 t_o^2), a right-facing
    parabola around the origin for any nonzero crossing height t_o.
    """
    if t_o == 0:
        raise DegenerateParametrizationError("t_o = 0 collapses the curve onto the real axis")
    samples = _sample_quadratic_curve(t_o, 0.0, sigma_range, step)
    return samples, ParabolaCoeffs(a2=1.0 / (4.0 * t_o**2), c0=-(t_o**2))


def crosses_origin(t_norm: float, alpha: float, boundary_tol: float = 1e-9) -> bool:
    """Whether the radicand parabola travels around the origin.

    True exactly when |alpha| > 1, i.e. when the crossing height exceeds the
    branch-point height t_norm.
    """
    if t_norm <= 0:
        raise DegenerateParametrizationError(f"t_norm must be positive, got {t_norm}")
    if alpha == 0:
        raise DegenerateParametrizationError("alpha = 0 collapses the curve onto the real axis")
    if abs(abs(alpha) - 1.0) <= boundary_tol:
        raise BoundaryCrossingError(
            f"|alpha| = 1 within tolerance {boundary_tol:g}: curve passes through the origin"
        )
    return abs(alpha) > 1.0
