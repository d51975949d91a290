"""Eigenvalue families, their poles, and branch points.

Each model kind carries an eigenvalue map lambda(s) satisfying the
factorization

    lambda(s) - lambda(w) = a * ((s - 1/2)^2 - (w - 1/2)^2 - c)

with leading coefficient ``a``, radicand offset ``c``, and pole order ``nu``.
The integrand 1/(lambda(s) - lambda(w))^nu on the critical line then has
poles at s = 1/2 +- sqrt((w - 1/2)^2 + c), and the branch points in w sit at
1/2 +- i sqrt(c).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BranchAmbiguityError, InvalidCharacterError, ValidationError


class ModelKind(str, enum.Enum):
    GL2Q = "GL2Q"
    HILBERT_MAASS = "HilbertMaass"
    GL3_CUSPIDAL = "GL3Cuspidal"
    GL3_MIN_PARABOLIC = "GL3MinParabolic"


@dataclass(frozen=True)
class GrossencharParams:
    """Real parameters (t_1, ..., t_n) of an unramified grossencharacter.

    The components must sum to zero; the squared norm is the mean of the
    squared components.  All components zero means the trivial character.
    """

    t: tuple[float, ...]

    def __post_init__(self):
        t = tuple(float(x) for x in self.t)
        object.__setattr__(self, "t", t)
        if len(t) < 1:
            raise InvalidCharacterError("need at least one character parameter")
        total = sum(t)
        if abs(total) > 1e-14 * max(1.0, sum(abs(x) for x in t)):
            raise InvalidCharacterError(f"character parameters must sum to 0, got {total!r}")

    @property
    def n(self) -> int:
        return len(self.t)

    @property
    def norm_sq(self) -> float:
        return float(sum(x * x for x in self.t) / len(self.t))

    @property
    def is_trivial(self) -> bool:
        return all(x == 0.0 for x in self.t)


def grossenchar_from_unit(log_eps: float, m: int, n: int = 2) -> GrossencharParams:
    """Character parameters for a real quadratic field from its fundamental unit.

    Unit invariance forces t = (pi m / log_eps, -pi m / log_eps); m = 0 gives
    the trivial character.
    """
    if n != 2:
        raise InvalidCharacterError(f"unit construction implemented for n = 2 only, got n = {n}")
    if log_eps <= 0:
        raise InvalidCharacterError(f"log_eps must be positive, got {log_eps}")
    t1 = np.pi * m / log_eps
    return GrossencharParams((t1, -t1))


@dataclass(frozen=True)
class SpectralModel:
    """An eigenvalue family lambda(s) with factorization data (a, c, nu)."""

    kind: ModelKind
    chi: Optional[GrossencharParams] = None
    t_f: complex = 0.0
    rho_norm_sq: float = 2.0

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind(self.kind))
        object.__setattr__(self, "t_f", complex(self.t_f))
        if self.kind is ModelKind.HILBERT_MAASS and self.chi is None:
            raise ValidationError("HilbertMaass model requires grossencharacter parameters")
        if self.kind is ModelKind.GL3_CUSPIDAL:
            t_f = self.t_f
            real_ok = t_f.imag == 0.0
            imag_ok = t_f.real == 0.0 and -0.5 <= t_f.imag <= 0.0
            if not (real_ok or imag_ok):
                raise ValidationError(
                    f"t_f must be real or in -i[0, 1/2], got {t_f}"
                )

    # -- factory helpers -------------------------------------------------

    @classmethod
    def gl2q(cls) -> "SpectralModel":
        return cls(ModelKind.GL2Q)

    @classmethod
    def hilbert_maass(cls, chi: GrossencharParams) -> "SpectralModel":
        return cls(ModelKind.HILBERT_MAASS, chi=chi)

    @classmethod
    def gl3_cuspidal(cls, t_f: complex) -> "SpectralModel":
        return cls(ModelKind.GL3_CUSPIDAL, t_f=t_f)

    @classmethod
    def gl3_min_parabolic(cls, rho_norm_sq: float = 2.0) -> "SpectralModel":
        return cls(ModelKind.GL3_MIN_PARABOLIC, rho_norm_sq=rho_norm_sq)

    # -- factorization data ----------------------------------------------

    @property
    def a(self) -> float:
        """Leading coefficient of lambda(s) - lambda(w) in (s - 1/2)^2."""
        if self.kind is ModelKind.GL3_CUSPIDAL:
            return 6.0
        if self.kind is ModelKind.GL3_MIN_PARABOLIC:
            raise ValidationError("minimal-parabolic kind has no line factorization")
        return 1.0

    @property
    def c(self) -> float:
        """Radicand offset: poles sit at 1/2 +- sqrt((w - 1/2)^2 + c)."""
        if self.kind is ModelKind.GL2Q:
            return 0.0
        if self.kind is ModelKind.HILBERT_MAASS:
            return self.chi.norm_sq
        if self.kind is ModelKind.GL3_CUSPIDAL:
            c = (self.t_f**2 + 0.25) / 3.0
            return float(c.real)
        raise ValidationError("minimal-parabolic kind has no radicand offset")

    @property
    def nu(self) -> int:
        """Pole order of the spectral integrand."""
        return 2 if self.kind in (ModelKind.GL3_CUSPIDAL, ModelKind.GL3_MIN_PARABOLIC) else 1

    # -- serialization ----------------------------------------------------

    def as_dict(self) -> dict:
        d: dict = {"kind": self.kind.value}
        if self.kind is ModelKind.HILBERT_MAASS:
            d["t"] = list(self.chi.t)
        if self.kind is ModelKind.GL3_CUSPIDAL:
            d["t_f"] = [self.t_f.real, self.t_f.imag]
        if self.kind is ModelKind.GL3_MIN_PARABOLIC:
            d["rho_norm_sq"] = self.rho_norm_sq
            d["nu"] = self.nu
        else:
            d["a"] = self.a
            d["c"] = self.c
            d["nu"] = self.nu
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SpectralModel":
        try:
            kind = ModelKind(d["kind"])
        except (KeyError, ValueError) as exc:
            raise ValidationError(f"bad model descriptor: {exc}") from exc
        if kind is ModelKind.GL2Q:
            model = cls.gl2q()
        elif kind is ModelKind.HILBERT_MAASS:
            model = cls.hilbert_maass(GrossencharParams(tuple(d["t"])))
        elif kind is ModelKind.GL3_CUSPIDAL:
            t_f = d.get("t_f", 0.0)
            if isinstance(t_f, (list, tuple)):
                t_f = complex(t_f[0], t_f[1])
            model = cls.gl3_cuspidal(t_f)
        else:
            model = cls.gl3_min_parabolic(float(d.get("rho_norm_sq", 2.0)))
        for key, have in (("a", "a"), ("c", "c"), ("nu", "nu")):
            if key in d and kind is not ModelKind.GL3_MIN_PARABOLIC:
                got = getattr(model, have)
                if abs(got - d[key]) > 1e-12 * max(1.0, abs(got)):
                    raise ValidationError(
                        f"descriptor field {key}={d[key]} inconsistent with kind (expected {got})"
                    )
        return model


@dataclass(frozen=True)
class PolePair:
    """The two poles of the spectral integrand; they always sum to 1."""

    s_plus: complex
    s_minus: complex


def eigenvalue(model: SpectralModel, s: complex) -> complex:
    """Laplace eigenvalue lambda(s) for the given model.

    The Hilbert-Maass branch computes the literal product-sum over the
    character parameters rather than the collapsed quadratic form.
    """
    s = complex(s)
    if model.kind is ModelKind.GL2Q:
        return s * (s - 1.0)
    if model.kind is ModelKind.HILBERT_MAASS:
        terms = [(s + 1j * t) * (s + 1j * t - 1.0) for t in model.chi.t]
        return sum(terms) / model.chi.n
    if model.kind is ModelKind.GL3_CUSPIDAL:
        s_f = 0.5 + 1j * model.t_f
        return 2.0 * (s_f * (s_f - 1.0) + 3.0 * s * (s - 1.0))
    raise ValidationError(
        "minimal-parabolic eigenvalues are -(|eta|^2 + |rho|^2); "
        "use eigenvalue_minparabolic_planar"
    )


def lambda_w(model: SpectralModel, w: complex) -> complex:
    """Spectral parameter lambda(w): w(w-1) in rank one, 6w(w-1) for GL3 cuspidal data."""
    w = complex(w)
    if model.kind is ModelKind.GL3_CUSPIDAL:
        return 6.0 * w * (w - 1.0)
    if model.kind is ModelKind.GL3_MIN_PARABOLIC:
        return w * w - model.rho_norm_sq
    return w * (w - 1.0)


def denominator(model: SpectralModel, s, w: complex):
    """lambda(s) - lambda(w), via the factorized form for numerical stability.

    Accepts an array of s values.
    """
    q = (complex(w) - 0.5) ** 2 + model.c
    return model.a * ((np.asarray(s, dtype=complex) - 0.5) ** 2 - q)


def eigenvalue_minparabolic_power(s1: complex, s2: complex, s3: complex) -> complex:
    """Casimir eigenvalue from diagonal-power character exponents (s1, s2, s3).

    Requires s1 + s2 + s3 = 0 and evaluates 2(s1^2 + s1 s2 + s2^2 - 2 s1 - s2).
    """
    s1, s2, s3 = complex(s1), complex(s2), complex(s3)
    trace = s1 + s2 + s3
    scale = max(1.0, abs(s1) + abs(s2) + abs(s3))
    if abs(trace) > 1e-12 * scale:
        raise InvalidCharacterError(f"character exponents must sum to 0, got {trace}")
    return 2.0 * (s1 * s1 + s1 * s2 + s2 * s2 - 2.0 * s1 - s2)


def eigenvalue_minparabolic_root(
    s_alpha: complex, s_beta: complex, s_alphabeta: complex
) -> complex:
    """Casimir eigenvalue from positive-root coefficients of the character."""
    sa, sb, sab = complex(s_alpha), complex(s_beta), complex(s_alphabeta)
    return 2.0 * (
        sa * sa + sb * sb - sa * sb + sa * sab + sb * sab - sa - sb - 2.0 * sab
    )


def eigenvalue_minparabolic_planar(eta_norm_sq: float, rho_norm_sq: float) -> float:
    """Planar normalization -(|eta|^2 + |rho|^2) of the minimal-parabolic eigenvalue."""
    return -(eta_norm_sq + rho_norm_sq)


def radicand(model: SpectralModel, w: complex) -> complex:
    """(w - 1/2)^2 + c, the quantity under the square root in the pole formula."""
    return (complex(w) - 0.5) ** 2 + model.c


def poles(model: SpectralModel, w: complex) -> PolePair:
    """Reference-branch poles 1/2 +- sqrt((w - 1/2)^2 + c) of the integrand.

    The principal root puts s_plus right of the critical line; for
    Re(w) > 1/2 this is the pole the regularization subtracts at.  A
    radicand on the branch cut has no unambiguous reference branch and the
    caller must continue along an explicit path instead.
    """
    q = radicand(model, w)
    if q.real <= 0.0 and abs(q.imag) <= 1e-14 * (1.0 + abs(q)):
        raise BranchAmbiguityError(
            f"radicand {q} on the branch cut; use a pathwise continuation"
        )
    root = np.sqrt(complex(q))
    return PolePair(s_plus=0.5 + root, s_minus=0.5 - root)


def branch_points(model: SpectralModel) -> tuple[complex, complex]:
    """The pair 1/2 +- i sqrt(c) where the two integrand poles collide."""
    if model.kind is ModelKind.GL3_MIN_PARABOLIC:
        raise ValidationError("minimal-parabolic kind has no line branch points")
    root = np.sqrt(complex(model.c))
    return (0.5 + 1j * root, 0.5 - 1j * root)
