"""Generating functions: the one-variable profiles f_i of a translation hypersurface.

The family is closed on purpose. Every member has exact closed-form
derivatives of orders 0..3, which keeps the curvature formulas exact and
leaves finite differences free to act as independent oracles.

All evaluation methods accept a float or a numpy array and return the same
shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import DomainSingularity, InvalidProfile

MAX_DERIVATIVE_ORDER = 3
MAX_POLYNOMIAL_DEGREE = 8
LOGCOS_GUARD = 1e-9


def _finite(name, *values):
    for v in values:
        if not math.isfinite(v):
            raise InvalidProfile(f"{name}: parameters must be finite, got {v!r}")


def _shape_like(t, value):
    if np.ndim(t) == 0:
        return float(value)
    return value


def _check_order(order):
    if not 0 <= order <= MAX_DERIVATIVE_ORDER:
        raise ValueError(f"derivative order must be in 0..{MAX_DERIVATIVE_ORDER}, got {order}")


@dataclass(frozen=True)
class GeneratingFunction:
    """Base class. Subclasses define ``kind`` and ``_derivative``."""

    kind: ClassVar[str] = ""

    def derivative(self, t, order=0):
        _check_order(order)
        t_arr = np.asarray(t, dtype=float)
        return _shape_like(t, self._derivative(t_arr, order))

    def __call__(self, t):
        return self.derivative(t, 0)

    def derivatives(self, t):
        """Return ``(f, f', f'', f''')`` at ``t``."""
        return tuple(self.derivative(t, k) for k in range(MAX_DERIVATIVE_ORDER + 1))

    @property
    def is_linear(self) -> bool:
        return False

    def linear_part(self):
        """``(slope, intercept)`` when the profile is affine in its variable, else None."""
        return None

    def quadratic_coefficient(self):
        """Leading coefficient when the profile is exactly a degree-2 polynomial."""
        return None

    def singularity_distance(self, t):
        """Distance from ``t`` to the nearest point where the profile is undefined."""
        return _shape_like(t, np.full(np.shape(t), np.inf))

    def singularities_in(self, lo, hi):
        """Sorted singular points inside ``[lo, hi]``."""
        return []

    def params(self) -> dict:
        raise NotImplementedError

    def _derivative(self, t, order):
        raise NotImplementedError


@dataclass(frozen=True)
class Linear(GeneratingFunction):
    """f(t) = c t + d"""

    c: float = 0.0
    d: float = 0.0
    kind: ClassVar[str] = "linear"

    def __post_init__(self):
        _finite("linear", self.c, self.d)

    def _derivative(self, t, order):
        if order == 0:
            return self.c * t + self.d
        if order == 1:
            return np.full(t.shape, float(self.c))
        return np.zeros(t.shape)

    @property
    def is_linear(self):
        return True

    def linear_part(self):
        return (float(self.c), float(self.d))

    def params(self):
        return {"c": self.c, "d": self.d}


@dataclass(frozen=True)
class Quadratic(GeneratingFunction):
    """f(t) = c t^2 + d t + e with c != 0."""

    c: float
    d: float = 0.0
    e: float = 0.0
    kind: ClassVar[str] = "quadratic"

    def __post_init__(self):
        _finite("quadratic", self.c, self.d, self.e)
        if self.c == 0:
            raise InvalidProfile("quadratic: leading coefficient c must be nonzero (use Linear)")

    def _derivative(self, t, order):
        if order == 0:
            return (self.c * t + self.d) * t + self.e
        if order == 1:
            return 2.0 * self.c * t + self.d
        if order == 2:
            return np.full(t.shape, 2.0 * self.c)
        return np.zeros(t.shape)

    def quadratic_coefficient(self):
        return float(self.c)

    def params(self):
        return {"c": self.c, "d": self.d, "e": self.e}


@dataclass(frozen=True)
class Polynomial(GeneratingFunction):
    """f(t) = sum_k coeffs[k] t^k, degree at most 8."""

    coeffs: tuple
    kind: ClassVar[str] = "polynomial"

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        if not coeffs:
            raise InvalidProfile("polynomial: at least one coefficient required")
        if len(coeffs) > MAX_POLYNOMIAL_DEGREE + 1:
            raise InvalidProfile(
                f"polynomial: degree at most {MAX_POLYNOMIAL_DEGREE}, got {len(coeffs) - 1}"
            )
        _finite("polynomial", *coeffs)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        nonzero = [k for k, c in enumerate(self.coeffs) if c != 0.0]
        return nonzero[-1] if nonzero else 0

    def _derivative(self, t, order):
        coeffs = np.array(self.coeffs)
        if order:
            coeffs = P.polyder(coeffs, order) if len(coeffs) > order else np.zeros(1)
        return P.polyval(t, coeffs) + np.zeros(t.shape)

    @property
    def is_linear(self):
        return self.degree <= 1

    def linear_part(self):
        if not self.is_linear:
            return None
        c0 = self.coeffs[0]
        c1 = self.coeffs[1] if len(self.coeffs) > 1 else 0.0
        return (c1, c0)

    def quadratic_coefficient(self):
        return self.coeffs[2] if self.degree == 2 else None

    def params(self):
        return {"coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class ExpPair(GeneratingFunction):
    """f(t) = c exp(a t) + d exp(-a t) + s with a > 0."""

    c: float
    d: float
    a: float
    s: float = 0.0
    kind: ClassVar[str] = "exp_pair"

    def __post_init__(self):
        _finite("exp_pair", self.c, self.d, self.a, self.s)
        if not self.a > 0:
            raise InvalidProfile(f"exp_pair: rate a must be positive, got {self.a}")

    def _derivative(self, t, order):
        up = self.c * np.exp(self.a * t)
        down = self.d * np.exp(-self.a * t)
        scale = self.a**order
        if order % 2:
            value = scale * (up - down)
        else:
            value = scale * (up + down)
        if order == 0:
            value = value + self.s
        return value

    @property
    def is_linear(self):
        # Only the constant member of the family has a vanishing second derivative.
        return self.c == 0.0 and self.d == 0.0

    def linear_part(self):
        return (0.0, float(self.s)) if self.is_linear else None

    def params(self):
        return {"c": self.c, "d": self.d, "a": self.a, "s": self.s}


@dataclass(frozen=True)
class TrigPair(GeneratingFunction):
    """f(t) = c cos(a t) + d sin(a t) + s with a > 0."""

    c: float
    d: float
    a: float
    s: float = 0.0
    kind: ClassVar[str] = "trig_pair"

    def __post_init__(self):
        _finite("trig_pair", self.c, self.d, self.a, self.s)
        if not self.a > 0:
            raise InvalidProfile(f"trig_pair: frequency a must be positive, got {self.a}")

    def _derivative(self, t, order):
        cos = np.cos(self.a * t)
        sin = np.sin(self.a * t)
        scale = self.a**order
        # d^k/dt^k cycles through (cos, sin) -> (-sin, cos) -> (-cos, -sin) -> (sin, -cos)
        if order == 0:
            return self.c * cos + self.d * sin + self.s
        if order == 1:
            return scale * (self.d * cos - self.c * sin)
        if order == 2:
            return -scale * (self.c * cos + self.d * sin)
        return scale * (self.c * sin - self.d * cos)

    @property
    def is_linear(self):
        return self.c == 0.0 and self.d == 0.0

    def linear_part(self):
        return (0.0, float(self.s)) if self.is_linear else None

    def params(self):
        return {"c": self.c, "d": self.d, "a": self.a, "s": self.s}


@dataclass(frozen=True)
class LogCos(GeneratingFunction):
    """f(t) = log|cos(c t)| / c, the Scherk profile.

    Undefined where cos(c t) = 0; evaluation raises DomainSingularity when
    |cos(c t)| < 1e-9.
    """

    c: float
    kind: ClassVar[str] = "log_cos"

    def __post_init__(self):
        _finite("log_cos", self.c)
        if self.c == 0:
            raise InvalidProfile("log_cos: c must be nonzero")

    def _derivative(self, t, order):
        ct = self.c * t
        cos = np.cos(ct)
        if np.any(np.abs(cos) < LOGCOS_GUARD):
            raise DomainSingularity(f"log_cos(c={self.c}) evaluated where cos(c t) vanishes")
        if order == 0:
            return np.log(np.abs(cos)) / self.c
        tan = np.tan(ct)
        if order == 1:
            return -tan
        sec2 = 1.0 / (cos * cos)
        if order == 2:
            return -self.c * sec2
        return -2.0 * self.c * self.c * sec2 * tan

    def singularity_distance(self, t):
        # zeros of cos(c t) sit at t = (pi/2 + k pi) / c
        u = self.c * np.asarray(t, dtype=float) - math.pi / 2
        r = u - math.pi * np.round(u / math.pi)
        return _shape_like(t, np.abs(r) / abs(self.c))

    def singularities_in(self, lo, hi):
        period = math.pi / abs(self.c)
        first = math.pi / (2 * abs(self.c))
        k_lo = math.ceil((lo - first) / period)
        k_hi = math.floor((hi - first) / period)
        return [first + k * period for k in range(k_lo, k_hi + 1)]

    def params(self):
        return {"c": self.c}


PROFILE_KINDS = {
    cls.kind: cls for cls in (Linear, Quadratic, Polynomial, ExpPair, TrigPair, LogCos)
}
