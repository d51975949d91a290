"""Symmetric integrand numerators for the line integrals.

All numerators satisfy N(s) = N(1 - s).  The synthetic Gaussian is entire
with Gaussian decay on the critical line; the Eisenstein product uses the
completed normalization (so each factor satisfies the functional equation
exactly and the product decays exponentially on the line); a constant is
admissible for double poles or whenever the integral is truncated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .eisenstein import UpperHalfPoint, eisenstein_gl2_completed
from .errors import ValidationError


@dataclass(frozen=True)
class Numerator:
    """A symmetric numerator N(s); call it on scalars or arrays of s."""

    kind: str
    scale: complex = 1.0
    value: complex = 1.0
    width: float = 1.0
    z0: Optional[UpperHalfPoint] = None
    z: Optional[UpperHalfPoint] = None
    n_terms: int = 30

    _KINDS = ("constant", "gaussian", "eisenstein_product")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValidationError(f"unknown numerator kind {self.kind!r}")
        if self.kind == "gaussian" and not self.width > 0:
            raise ValidationError(f"gaussian width must be positive, got {self.width}")
        if self.kind == "eisenstein_product" and (self.z0 is None or self.z is None):
            raise ValidationError("eisenstein_product numerator needs both base points")

    @classmethod
    def constant(cls, value: complex = 1.0, scale: complex = 1.0) -> "Numerator":
        return cls(kind="constant", value=complex(value), scale=complex(scale))

    @classmethod
    def synthetic_gaussian(cls, width: float = 1.0, scale: complex = 1.0) -> "Numerator":
        return cls(kind="gaussian", width=float(width), scale=complex(scale))

    @classmethod
    def eisenstein_product_gl2(
        cls,
        z0: UpperHalfPoint,
        z: UpperHalfPoint,
        n_terms: int = 30,
        scale: complex = 1.0,
    ) -> "Numerator":
        return cls(kind="eisenstein_product", z0=z0, z=z, n_terms=n_terms, scale=complex(scale))

    def __call__(self, s):
        scalar = np.isscalar(s) or getattr(s, "ndim", 1) == 0
        sv = np.atleast_1d(np.asarray(s, dtype=complex))
        if self.kind == "constant":
            out = np.full(sv.shape, self.value, dtype=complex)
        elif self.kind == "gaussian":
            out = np.exp(((sv - 0.5) / self.width) ** 2)
        else:
            out = np.array([
                eisenstein_gl2_completed(1.0 - x, self.z0, self.n_terms)
                * eisenstein_gl2_completed(x, self.z, self.n_terms)
                for x in sv
            ])
        out = self.scale * out
        return complex(out[0]) if scalar else out

    def decays_on_line(self) -> bool:
        """Whether the numerator decays on the critical line (constants do not)."""
        return self.kind != "constant"

    def as_dict(self) -> dict:
        d: dict = {"kind": self.kind, "scale": [self.scale.real, self.scale.imag]}
        if self.kind == "constant":
            d["value"] = [self.value.real, self.value.imag]
        elif self.kind == "gaussian":
            d["width"] = self.width
        else:
            d["z0"] = [self.z0.x, self.z0.y]
            d["z"] = [self.z.x, self.z.y]
            d["n_terms"] = self.n_terms
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Numerator":
        def _cplx(v):
            return complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v)

        try:
            kind = d["kind"]
            scale = _cplx(d.get("scale", 1.0))
            if kind == "constant":
                return cls.constant(_cplx(d.get("value", 1.0)), scale)
            if kind == "gaussian":
                return cls.synthetic_gaussian(float(d.get("width", 1.0)), scale)
            if kind == "eisenstein_product":
                z0 = UpperHalfPoint(*d["z0"])
                z = UpperHalfPoint(*d["z"])
                return cls.eisenstein_product_gl2(z0, z, int(d.get("n_terms", 30)), scale)
        except (KeyError, TypeError, IndexError) as exc:
            raise ValidationError(f"bad numerator descriptor: {exc}") from exc
        raise ValidationError(f"unknown numerator kind {kind!r}")
