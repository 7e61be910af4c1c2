"""Closed-form members of each classified family.

* cylinders: one linear profile, so K vanishes in both ambients;
* constant relative curvature K0: quadratics with prod c_i = K0 / (2^n det(A)^2);
* constant isotropic mean curvature H0: quadratics (c_i / 2) / |row_i|^2 y_i^2 + ...
  with sum c_i = n H0;
* Laplacian eigenfunctions, Delta z = lambda z: exponential (lambda > 0) or
  trigonometric (lambda < 0) pairs with rate sqrt(|lambda| / |row_i|^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    CoefficientSumMismatch,
    IndexOutOfRange,
    ZeroCoefficient,
    ZeroLambda,
    ZeroTargetCurvature,
)
from .isotropic import laplacian_batch
from .model import AffineMap, Ambient, HypersurfaceSpec, height_batch
from .profiles import ExpPair, Linear, Quadratic, TrigPair

SUM_TOL = 1e-12


def _vector(values, n, name, default=0.0):
    if values is None:
        return np.full(n, float(default))
    arr = np.asarray(values, dtype=float).ravel()
    if arr.shape[0] != n:
        raise ValueError(f"{name} needs {n} entries, got {arr.shape[0]}")
    return arr


def crc_last_coefficient(amap: AffineMap, k0, c_partial) -> float:
    """c_n that makes prod c_i = K0 / (2^n det(A)^2)."""
    n = amap.n
    return k0 / (2**n * amap.det**2 * math.prod(c_partial))


def construct_crc(amap: AffineMap, k0, c_partial, d=None, e=None, ambient=Ambient.ISOTROPIC):
    """Quadratic profiles c_i y_i^2 + d_i y_i + e_i with relative curvature k0 everywhere.

    ``c_partial`` fixes c_1..c_{n-1}; c_n is solved for.
    """
    n = amap.n
    if k0 == 0:
        raise ZeroTargetCurvature("K0 = 0 is the cylinder case; use construct_cylinder")
    c_partial = _vector(c_partial, n - 1, "c_partial")
    if np.any(c_partial == 0):
        raise ZeroCoefficient("every leading coefficient c_1..c_{n-1} must be nonzero")
    d = _vector(d, n, "d")
    e = _vector(e, n, "e")
    c = np.append(c_partial, crc_last_coefficient(amap, k0, c_partial))
    profiles = [Quadratic(c[i], d[i], e[i]) for i in range(n)]
    return HypersurfaceSpec(amap, profiles, ambient)


def construct_cimc(amap: AffineMap, h0, c, d=None, e=None, ambient=Ambient.ISOTROPIC):
    """Profiles with isotropic mean curvature h0 everywhere.

    Zero entries of ``c`` give Linear profiles; the rest are quadratics with
    leading coefficient (c_i / 2) / sum_j a_ij^2.
    """
    n = amap.n
    c = _vector(c, n, "c")
    d = _vector(d, n, "d")
    e = _vector(e, n, "e")
    target = n * h0
    if abs(math.fsum(c) - target) > SUM_TOL * max(1.0, abs(target)):
        raise CoefficientSumMismatch(f"sum(c) = {math.fsum(c)!r} but n*H0 = {target!r}")
    norms = amap.row_norms_sq
    profiles = []
    for i in range(n):
        if c[i] == 0:
            profiles.append(Linear(d[i], e[i]))
        else:
            profiles.append(Quadratic((c[i] / 2) / norms[i], d[i], e[i]))
    return HypersurfaceSpec(amap, profiles, ambient)


@dataclass(frozen=True)
class EigenSolutionParams:
    """Data of the eigenfunction family: Delta z = lam z, with shifts -mu_i / lam."""

    lam: float
    c: tuple
    d: tuple
    mu: tuple

    def __post_init__(self):
        for name in ("c", "d", "mu"):
            object.__setattr__(self, name, tuple(float(v) for v in getattr(self, name)))
        if not len(self.c) == len(self.d) == len(self.mu):
            raise ValueError("c, d and mu must have the same length")
        if self.lam == 0:
            raise ZeroLambda("lambda = 0 is the isotropic minimal case; use construct_cimc")
        if abs(math.fsum(self.mu)) > SUM_TOL:
            raise CoefficientSumMismatch(f"mu must sum to zero, got {math.fsum(self.mu)!r}")

    @property
    def n(self):
        return len(self.c)


def eigen_rates(amap: AffineMap, lam) -> np.ndarray:
    """sqrt(|lam| / sum_j a_ij^2) per profile."""
    return np.sqrt(abs(lam) / amap.row_norms_sq)


def construct_eigen(amap: AffineMap, params: EigenSolutionParams, ambient=Ambient.ISOTROPIC):
    if params.lam == 0:
        raise ZeroLambda("lambda must be nonzero")
    if params.n != amap.n:
        raise ValueError(f"parameters are for n = {params.n}, map has n = {amap.n}")
    rates = eigen_rates(amap, params.lam)
    kind = ExpPair if params.lam > 0 else TrigPair
    profiles = [
        kind(params.c[i], params.d[i], float(rates[i]), -params.mu[i] / params.lam)
        for i in range(amap.n)
    ]
    return HypersurfaceSpec(amap, profiles, ambient)


def construct_cylinder(
    amap: AffineMap, linear_index, slope, intercept, other_profiles, ambient=Ambient.EUCLIDEAN
):
    """Insert Linear(slope, intercept) at ``linear_index`` among ``other_profiles``."""
    n = amap.n
    if not 0 <= linear_index < n:
        raise IndexOutOfRange(f"linear_index must be in 0..{n - 1}, got {linear_index}")
    others = list(other_profiles)
    if len(others) != n - 1:
        raise ValueError(f"need {n - 1} other profiles, got {len(others)}")
    others.insert(linear_index, Linear(slope, intercept))
    return HypersurfaceSpec(amap, others, ambient)


def eigen_residuals(spec: HypersurfaceSpec, lam, xs) -> np.ndarray:
    """|Delta z - lam z| with the exact Laplacian."""
    return np.abs(laplacian_batch(spec, xs) - lam * height_batch(spec, xs))


def ode_residuals(amap: AffineMap, spec: HypersurfaceSpec, lam, mu, t) -> np.ndarray:
    """Per-profile |sum_j a_ij^2 f_i''(t) - lam f_i(t) - mu_i|, shape (len(t), n)."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    norms = amap.row_norms_sq
    out = np.empty((t.shape[0], spec.n))
    for i, prof in enumerate(spec.profiles):
        out[:, i] = np.abs(norms[i] * prof.derivative(t, 2) - lam * prof.derivative(t, 0) - mu[i])
    return out


def verify_eigen_condition(spec: HypersurfaceSpec, lam, grid=None, tolerances=None):
    """Residual report for Delta z = lam z over ``grid``.

    The report summarises the exact residual; ``details`` carries the largest
    residual from the finite-difference Laplacian and max |z| for scaling.
    """
    from .reports import Quantity, default_tolerances, summarize
    from .verification import default_grid, sample_grid
    from .calculus import fd_laplacian_batch

    tol = tolerances or default_tolerances()
    grid = grid or default_grid(spec.n)
    xs, skipped = sample_grid(spec, grid)
    z = height_batch(spec, xs)
    exact = eigen_residuals(spec, lam, xs)
    fd = np.abs(fd_laplacian_batch(spec, xs) - lam * z)
    report = summarize(Quantity.EIGEN_RESIDUAL, exact, skipped, tol.constancy, points=xs)
    return report.with_verdict(
        report.verdict,
        max_residual=float(np.max(exact)),
        fd_max_residual=float(np.max(fd)),
        max_abs_height=float(np.max(np.abs(z))),
        lam=float(lam),
    )
