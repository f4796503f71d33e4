"""Coefficient field plumbing: exact rationals or floats, and q-series helpers.

Parameters are carried as their square roots ``a = q**(1/2)`` and
``b = t**(1/2)`` so that every half-integer power of q and t that shows up in
the deformed power sums and operator coefficients stays exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

DEFAULT_QSQRT = Fraction(7, 10)
DEFAULT_TSQRT = Fraction(1, 2)
DEFAULT_TRUNCATION = 40


class ParameterError(ValueError):
    """Raised for degenerate or out-of-range parameters."""


def parse_rational(text: str) -> Fraction:
    """Parse ``"7/10"``, ``"0.7"`` or ``"1"`` as an exact rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"not a rational number: {text!r}") from exc


def is_exact(x) -> bool:
    return isinstance(x, Rational)


@dataclass(frozen=True)
class ParamSet:
    """The pair (q, t) given through a = q^(1/2), b = t^(1/2).

    Exact mode when both roots are rationals, float mode otherwise; the mode
    is fixed at construction and the two are never mixed.
    """

    a: object
    b: object

    def __post_init__(self):
        ea, eb = is_exact(self.a), is_exact(self.b)
        if ea != eb:
            raise ParameterError("mixed exact/float parameters are not allowed")
        if ea:
            object.__setattr__(self, "a", Fraction(self.a))
            object.__setattr__(self, "b", Fraction(self.b))
        if self.a == 0 or self.b == 0:
            raise ParameterError("q and t must be nonzero")

    @classmethod
    def default(cls) -> "ParamSet":
        return cls(DEFAULT_QSQRT, DEFAULT_TSQRT)

    @classmethod
    def from_qt(cls, q: float, t: float) -> "ParamSet":
        """Float-mode parameters from q and t themselves (positive)."""
        if q <= 0 or t <= 0:
            raise ParameterError("float-mode q, t must be positive")
        return cls(math.sqrt(q), math.sqrt(t))

    @property
    def exact(self) -> bool:
        return isinstance(self.a, Fraction)

    @property
    def q(self):
        return self.a * self.a

    @property
    def t(self):
        return self.b * self.b

    def half_power(self, base: str, r: int):
        """q^(r/2) or t^(r/2)."""
        if base == "q":
            return self.a**r
        if base == "t":
            return self.b**r
        raise ValueError(f"base must be 'q' or 't', got {base!r}")

    def inverted(self) -> "ParamSet":
        """(q, t) -> (1/q, 1/t)."""
        return ParamSet(1 / self.a, 1 / self.b)

    def swapped(self) -> "ParamSet":
        """(q, t) -> (t, q)."""
        return ParamSet(self.b, self.a)

    def to_float(self) -> "ParamSet":
        return ParamSet(float(self.a), float(self.b))

    @property
    def M(self) -> float:
        """max(sqrt(q/t), sqrt(t/q)), the radii-separation threshold."""
        r = abs(float(self.a) / float(self.b))
        return max(r, 1 / r)

    def in_default_regime(self) -> bool:
        return 0 < self.q < 1 and 0 < self.t < 1

    def validate(self) -> None:
        if not self.in_default_regime():
            raise ParameterError(f"need 0 < q, t < 1, got q={self.q}, t={self.t}")

    def as_dict(self) -> dict:
        if self.exact:
            return {"mode": "exact", "qsqrt": str(self.a), "tsqrt": str(self.b),
                    "q": str(self.q), "t": str(self.t)}
        return {"mode": "float", "qsqrt": float(self.a), "tsqrt": float(self.b),
                "q": float(self.q), "t": float(self.t)}


def qpochhammer(z, q, K: int = DEFAULT_TRUNCATION):
    """Truncated q-Pochhammer symbol prod_{k<K} (1 - z q^k).

    Works elementwise on numpy arrays as well as on scalars (exact or float).
    """
    if K < 1:
        raise ValueError("truncation K must be >= 1")
    out = 1 - z
    qk = q
    for _ in range(1, K):
        out = out * (1 - z * qk)
        qk = qk * q
    return out


def qpochhammer_tail_bound(z, q, K: int = DEFAULT_TRUNCATION) -> float:
    """Relative error bound of the K-term truncation, |z| q^K / (1 - q),
    valid once that number is below ~1/2."""
    q = abs(float(q))
    return float(np.max(np.abs(z))) * q**K / (1 - q)
