"""Curvatures of graph hypersurfaces in isotropic space I^{n+1}.

The induced metric of a graph is the flat metric of the base, so all
quantities here are built from the Euclidean Hessian of z alone: principal
curvatures are its eigenvalues, the relative curvature is its determinant and
the isotropic mean curvature is a scaled trace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .calculus import hessian_at, second_derivatives_batch
from .errors import AmbientMismatch, DimensionMismatch
from .linalg import elementary_symmetric, jacobi_eigh, lu_det
from .model import Ambient, HypersurfaceSpec, as_coords, pullback_coords

KAPPA_G_FLOOR = 1e-12


def _require_isotropic(spec):
    if spec.ambient is not Ambient.ISOTROPIC:
        raise AmbientMismatch("isotropic curvatures need an isotropic ambient space")


def isotropic_norm(v) -> float:
    """Length in I^{n+1}: the last (isotropic) coordinate does not count."""
    v = np.asarray(v, dtype=float)
    return float(np.linalg.norm(v[:-1]))


def isotropic_distance(p, q) -> float:
    return isotropic_norm(np.asarray(q, dtype=float) - np.asarray(p, dtype=float))


def relative_curvature(spec: HypersurfaceSpec, x) -> float:
    """det(A)^2 prod f_i''(y_i)."""
    _require_isotropic(spec)
    y = pullback_coords(spec.map, x)
    prod = math.prod(p.derivative(t, 2) for p, t in zip(spec.profiles, y))
    return spec.map.det**2 * prod


def relative_curvature_generic(spec: HypersurfaceSpec, x) -> float:
    """det Hess(z), straight from the assembled Hessian."""
    _require_isotropic(spec)
    return lu_det(hessian_at(spec, x).hess_x)


def isotropic_mean(spec: HypersurfaceSpec, x) -> float:
    """(1/n) sum_{i,j} a_ij^2 f_i''(y_i)."""
    _require_isotropic(spec)
    y = pullback_coords(spec.map, x)
    d2 = np.array([p.derivative(t, 2) for p, t in zip(spec.profiles, y)])
    return float(spec.map.row_norms_sq @ d2) / spec.n


def laplacian_batch(spec: HypersurfaceSpec, xs) -> np.ndarray:
    """Exact Laplacian of the height, sum_{i,j} a_ij^2 f_i''."""
    return second_derivatives_batch(spec, xs) @ spec.map.row_norms_sq


def relative_curvature_batch(spec: HypersurfaceSpec, xs) -> np.ndarray:
    _require_isotropic(spec)
    return spec.map.det**2 * np.prod(second_derivatives_batch(spec, xs), axis=1)


def isotropic_mean_batch(spec: HypersurfaceSpec, xs) -> np.ndarray:
    _require_isotropic(spec)
    return laplacian_batch(spec, xs) / spec.n


def curvature_functions(kappas):
    """K_i = e_i(kappa) / C(n, i) for i = 1..n."""
    e = elementary_symmetric(kappas)
    n = len(kappas)
    return np.array([e[i] / math.comb(n, i) for i in range(1, n + 1)])


@dataclass(frozen=True, eq=False)
class PrincipalSpectrum:
    kappas: np.ndarray
    k_funcs: np.ndarray
    vectors: np.ndarray

    @property
    def mean(self):
        return float(self.k_funcs[0])

    @property
    def relative(self):
        return float(self.k_funcs[-1])


def principal_spectrum(spec: HypersurfaceSpec, x) -> PrincipalSpectrum:
    """Eigenvalues of Hess(z) (descending), eigenvectors and K_1..K_n."""
    hess = hessian_at(spec, x).hess_x
    kappas, vectors = jacobi_eigh(hess)
    return PrincipalSpectrum(kappas=kappas, k_funcs=curvature_functions(kappas), vectors=vectors)


# -- curves on the hypersurface ---------------------------------------------


@dataclass(frozen=True)
class Line:
    """x(s) = origin + s * direction."""

    origin: tuple
    direction: tuple

    def __post_init__(self):
        if len(self.origin) != len(self.direction):
            raise DimensionMismatch("line origin and direction differ in length")
        object.__setattr__(self, "origin", tuple(float(v) for v in self.origin))
        object.__setattr__(self, "direction", tuple(float(v) for v in self.direction))

    @property
    def n(self):
        return len(self.origin)

    def position(self, s):
        return np.array(self.origin) + s * np.array(self.direction)

    def velocity(self, s):
        return np.array(self.direction)

    def acceleration(self, s):
        return np.zeros(self.n)


@dataclass(frozen=True)
class CoordinateCircle:
    """Circle of ``radius`` about ``center`` in the (axes[0], axes[1]) coordinate plane."""

    center: tuple
    radius: float
    axes: tuple = (0, 1)

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(v) for v in self.center))
        i, j = self.axes
        if i == j or not (0 <= i < len(self.center) and 0 <= j < len(self.center)):
            raise ValueError(f"circle axes must be two distinct coordinates, got {self.axes}")
        if not self.radius > 0:
            raise ValueError("circle radius must be positive")

    @property
    def n(self):
        return len(self.center)

    def _lift(self, u, v):
        out = np.zeros(self.n)
        out[self.axes[0]] = u
        out[self.axes[1]] = v
        return out

    def position(self, s):
        r = self.radius
        return np.array(self.center) + self._lift(r * math.cos(s), r * math.sin(s))

    def velocity(self, s):
        r = self.radius
        return self._lift(-r * math.sin(s), r * math.cos(s))

    def acceleration(self, s):
        r = self.radius
        return self._lift(-r * math.cos(s), -r * math.sin(s))


@dataclass(frozen=True, eq=False)
class CurveCurvature:
    """Decomposition of r'' for a curve r(s) = x(s) + z(x(s)) e_{n+1}.

    ``kappa_g_by_convention`` marks the case where the tangential part has
    zero isotropic length and kappa_g is set to 1.
    """

    tan_part: np.ndarray
    nor_part: float
    kappa_g: float
    kappa_n: float
    kappa_g_by_convention: bool


def curve_curvatures(spec: HypersurfaceSpec, curve, s) -> CurveCurvature:
    if curve.n != spec.n:
        raise DimensionMismatch(f"curve lives in R^{curve.n}, spec has n = {spec.n}")
    x = as_coords(curve.position(s), spec.n)
    dx = curve.velocity(s)
    ddx = curve.acceleration(s)
    pair = hessian_at(spec, x)
    tan_part = np.append(ddx, float(ddx @ pair.grad_x))
    kappa_n = float(dx @ pair.hess_x @ dx)
    norm = isotropic_norm(tan_part)
    by_convention = norm < KAPPA_G_FLOOR
    return CurveCurvature(
        tan_part=tan_part,
        nor_part=kappa_n,
        kappa_g=1.0 if by_convention else norm,
        kappa_n=kappa_n,
        kappa_g_by_convention=by_convention,
    )


def check_constant(spec: HypersurfaceSpec, quantity, grid=None, tolerances=None):
    """Constancy report for the relative or isotropic mean curvature over ``grid``.

    The verdict is the one for the matching classification (constant relative
    curvature, or constant isotropic mean curvature).
    """
    from .reports import Quantity
    from .verification import Theorem, theorem_verdict

    quantity = Quantity(quantity)
    theorem = {
        Quantity.RELATIVE_CURVATURE: Theorem.T4_1,
        Quantity.ISOTROPIC_MEAN: Theorem.T4_2,
    }.get(quantity)
    if theorem is None:
        raise ValueError(f"check_constant handles relative or mean curvature, not {quantity.value}")
    return theorem_verdict(spec, theorem, grid, tolerances=tolerances)
