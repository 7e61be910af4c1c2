"""Gauss-Kronecker curvature of affine translation hypersurfaces in R^{n+1}."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .calculus import gradient_batch, hessian_at, second_derivatives_batch
from .errors import AmbientMismatch
from .linalg import lu_det
from .model import Ambient, HypersurfaceSpec, pullback_coords


def _require_euclidean(spec):
    if spec.ambient is not Ambient.EUCLIDEAN:
        raise AmbientMismatch("Gauss-Kronecker curvature needs a Euclidean ambient space")


def _power(w, n):
    # W >= 1, so the log is always defined
    return np.exp(np.log(w) * (n + 2) / 2.0)


@dataclass(frozen=True)
class GaussKroneckerValue:
    """K at one point.

    ``det_hess`` is prod f_i'' (the numerator before the det(A)^2 factor),
    ``w`` is 1 + |grad z|^2 and ``k_generic`` is the same curvature obtained
    from the LU determinant of the assembled Hessian.
    """

    k: float
    w: float
    det_hess: float
    k_generic: float


def gauss_kronecker(spec: HypersurfaceSpec, x) -> GaussKroneckerValue:
    _require_euclidean(spec)
    n = spec.n
    pair = hessian_at(spec, x)
    prod = float(np.prod(np.diag(pair.hess_y)))
    w = 1.0 + float(pair.grad_x @ pair.grad_x)
    denom = float(_power(w, n))
    k = spec.map.det**2 * prod / denom
    k_generic = lu_det(pair.hess_x) / denom
    return GaussKroneckerValue(k=k, w=w, det_hess=prod, k_generic=k_generic)


def gauss_kronecker_batch(spec: HypersurfaceSpec, xs) -> np.ndarray:
    """K on many points via det(A)^2 prod f_i'' / W^((n+2)/2)."""
    _require_euclidean(spec)
    grad = gradient_batch(spec, xs)
    w = 1.0 + np.sum(grad * grad, axis=1)
    prod = np.prod(second_derivatives_batch(spec, xs), axis=1)
    return spec.map.det**2 * prod / _power(w, spec.n)


@dataclass(frozen=True)
class Cylinder:
    """A linear profile ``index`` (0-based) and the ruling direction it generates.

    The ruling is (a^{1p}, ..., a^{np}, slope): column p of A^{-1} lifted by the
    slope of the linear profile.
    """

    index: int
    ruling: tuple


def detect_cylinder(spec: HypersurfaceSpec):
    """Smallest index of a linear profile, with its ruling, or None."""
    for p, prof in enumerate(spec.profiles):
        if prof.is_linear:
            slope, _ = prof.linear_part()
            column = spec.map.inverse[:, p]
            return Cylinder(index=p, ruling=tuple(float(v) for v in column) + (slope,))
    return None


def check_constant_gk(spec: HypersurfaceSpec, grid=None, tolerances=None):
    """Scan K over ``grid`` and give the verdict for the constant-curvature classification."""
    from .verification import Theorem, theorem_verdict

    return theorem_verdict(spec, Theorem.T1_1, grid, tolerances=tolerances)


def ruling_line(spec: HypersurfaceSpec, cylinder: Cylinder, x, t):
    """Point of the graph reached by moving ``t`` along the ruling from base point ``x``."""
    base = np.append(np.asarray(x, dtype=float), 0.0)
    y = pullback_coords(spec.map, x)
    base[-1] = sum(p(y[i]) for i, p in enumerate(spec.profiles))
    return base + t * np.asarray(cylinder.ruling)
