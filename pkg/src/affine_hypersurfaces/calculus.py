"""Gradients and Hessians of the height function, exact and by finite differences.

The exact path works in affine coordinates, where the Hessian is diagonal,
and transports it to base coordinates through Hess_x = A^T Hess_y A. The
finite-difference oracles touch nothing but :func:`eval_height`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainSingularity
from .linalg import lu_det
from .model import (
    HypersurfaceSpec,
    affine_coords,
    as_coords,
    eval_height,
    height_batch,
    profile_values,
    pullback_coords,
    singularity_distances,
)

GRADIENT_STEP = 1e-5
HESSIAN_STEP = 1e-4
STENCIL_GUARD = 1e-6
POLE_SCALE = 0.1

# central second-derivative weights, sixth order accurate, offsets -3..3
_SIXTH_ORDER_D2 = np.array([1 / 90, -3 / 20, 3 / 2, -49 / 18, 3 / 2, -3 / 20, 1 / 90])


@dataclass(frozen=True, eq=False)
class HessianPair:
    hess_y: np.ndarray
    hess_x: np.ndarray
    grad_x: np.ndarray
    grad_y: np.ndarray


def congruence(amap_entries, diag) -> np.ndarray:
    """A^T diag(d) A, symmetrised so the result is exactly symmetric."""
    a = np.asarray(amap_entries)
    m = a.T @ (np.asarray(diag)[:, None] * a)
    return 0.5 * (m + m.T)


def hessian_at(spec: HypersurfaceSpec, x) -> HessianPair:
    y = pullback_coords(spec.map, x)
    d1 = np.array([p.derivative(t, 1) for p, t in zip(spec.profiles, y)])
    d2 = np.array([p.derivative(t, 2) for p, t in zip(spec.profiles, y)])
    a = spec.map.entries
    return HessianPair(
        hess_y=np.diag(d2),
        hess_x=congruence(a, d2),
        grad_x=a.T @ d1,
        grad_y=d1,
    )


def second_derivative_product(spec: HypersurfaceSpec, x) -> float:
    """prod_i f_i''(y_i)."""
    y = pullback_coords(spec.map, x)
    return float(np.prod([p.derivative(t, 2) for p, t in zip(spec.profiles, y)]))


def det_hessian_identity(spec: HypersurfaceSpec, x):
    """Both sides of det Hess_x = det(A)^2 prod f_i''.

    The left side is an LU determinant of the assembled Hessian; the right
    side uses only the diagonal structure in affine coordinates.
    """
    pair = hessian_at(spec, x)
    lhs = lu_det(pair.hess_x)
    rhs = spec.map.det**2 * float(np.prod(np.diag(pair.hess_y)))
    return lhs, rhs


def gradient_batch(spec: HypersurfaceSpec, xs):
    ys = affine_coords(spec, xs)
    return profile_values(spec, ys, 1) @ spec.map.entries


def second_derivatives_batch(spec: HypersurfaceSpec, xs):
    return profile_values(spec, affine_coords(spec, xs), 2)


# -- finite-difference oracles ----------------------------------------------


def singular_length_scale(spec: HypersurfaceSpec, x) -> float:
    """Base-space distance from ``x`` to the nearest singular hyperplane a_i . x = t*."""
    ys = affine_coords(spec, np.asarray(x, dtype=float))
    norms = np.sqrt(spec.map.row_norms_sq)
    dist = np.inf
    for i, prof in enumerate(spec.profiles):
        dist = min(dist, float(prof.singularity_distance(ys[0, i])) / norms[i])
    return dist


def _steps(spec, x, h):
    # h (1 + |x_i|), shrunk near a pole in proportion to the distance to it
    if not h > 0:
        raise ValueError(f"step must be positive, got {h}")
    shrink = min(1.0, singular_length_scale(spec, x) / POLE_SCALE)
    return h * shrink * (1.0 + np.abs(x))


def _guard(spec, points):
    ys = affine_coords(spec, np.asarray(points))
    if np.any(singularity_distances(spec, ys) < STENCIL_GUARD):
        raise DomainSingularity("finite-difference stencil runs into a profile singularity")


def fd_gradient(spec: HypersurfaceSpec, x, h=GRADIENT_STEP) -> np.ndarray:
    """Central differences of the height, step h (1 + |x_i|) along each axis."""
    x = as_coords(x, spec.n)
    steps = _steps(spec, x, h)
    eye = np.eye(spec.n)
    _guard(spec, [x + s * eye[i] for i, s in enumerate(steps)] + [x - s * eye[i] for i, s in enumerate(steps)])
    grad = np.empty(spec.n)
    for i, s in enumerate(steps):
        e = s * eye[i]
        grad[i] = (eval_height(spec, x + e) - eval_height(spec, x - e)) / (2 * s)
    return grad


def fd_hessian(spec: HypersurfaceSpec, x, h=HESSIAN_STEP) -> np.ndarray:
    """Four-point mixed stencil on the height for every (i, j)."""
    x = as_coords(x, spec.n)
    n = spec.n
    steps = _steps(spec, x, h)
    eye = np.eye(n)
    stencil = []
    for i in range(n):
        for j in range(n):
            ei, ej = steps[i] * eye[i], steps[j] * eye[j]
            stencil += [x + ei + ej, x + ei - ej, x - ei + ej, x - ei - ej]
    _guard(spec, stencil)
    z = [eval_height(spec, p) for p in stencil]
    hess = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            k = 4 * (i * n + j)
            hess[i, j] = (z[k] - z[k + 1] - z[k + 2] + z[k + 3]) / (4 * steps[i] * steps[j])
    return hess


def fd_laplacian(spec: HypersurfaceSpec, x, h=HESSIAN_STEP) -> float:
    """Sum of one-dimensional second differences (z(x+h e_i) - 2 z(x) + z(x-h e_i)) / h^2."""
    x = as_coords(x, spec.n)
    steps = _steps(spec, x, h)
    eye = np.eye(spec.n)
    _guard(spec, [x] + [x + s * eye[i] for i, s in enumerate(steps)] + [x - s * eye[i] for i, s in enumerate(steps)])
    z0 = eval_height(spec, x)
    total = 0.0
    for i, s in enumerate(steps):
        e = s * eye[i]
        total += (eval_height(spec, x + e) - 2 * z0 + eval_height(spec, x - e)) / (s * s)
    return total


def fd_laplacian_batch(spec: HypersurfaceSpec, xs, h=1e-2) -> np.ndarray:
    """Laplacian of the height on many points with a sixth-order seven-point stencil.

    The plain three-point stencil bottoms out near 1e-8 relative in double
    precision; the wide stencil reaches ~1e-11 at h = 1e-2, which eigenfunction
    residual checks need.
    """
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    # same pole-aware shrink as the pointwise oracles, one factor per point
    ys = affine_coords(spec, xs)
    norms = np.sqrt(spec.map.row_norms_sq)
    dist = np.full(xs.shape[0], np.inf)
    for i, prof in enumerate(spec.profiles):
        dist = np.minimum(dist, prof.singularity_distance(ys[:, i]) / norms[i])
    shrink = np.minimum(1.0, dist / POLE_SCALE)
    steps = h * shrink[:, None] * (1.0 + np.abs(xs))
    total = np.zeros(xs.shape[0])
    for i in range(spec.n):
        acc = np.zeros(xs.shape[0])
        for offset, w in zip(range(-3, 4), _SIXTH_ORDER_D2):
            shifted = xs.copy()
            shifted[:, i] += offset * steps[:, i]
            _guard(spec, shifted)
            acc += w * height_batch(spec, shifted)
        total += acc / (steps[:, i] ** 2)
    return total
