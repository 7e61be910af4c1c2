"""Core domain types: affine maps, hypersurface specifications, evaluation points."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, DimensionTooLarge, DimensionTooSmall
from .linalg import gauss_jordan_inverse
from .profiles import GeneratingFunction

MIN_DIM = 2
MAX_DIM = 8
SINGULAR_TOL = 1e-12
ORTHOGONAL_TOL = 1e-10


class Ambient(str, enum.Enum):
    EUCLIDEAN = "euclidean"
    ISOTROPIC = "isotropic"


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class AffineMap:
    """The invertible matrix A of the affine parameter coordinates y = A x.

    Build instances with :func:`make_affine_map`; the inverse, determinant
    and orthogonality flag are computed once there.
    """

    entries: np.ndarray
    inverse: np.ndarray
    det: float
    is_orthogonal: bool

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def row_norms_sq(self) -> np.ndarray:
        """sum_j a_ij^2 for each row i."""
        return np.sum(self.entries * self.entries, axis=1)

    def __eq__(self, other):
        if not isinstance(other, AffineMap):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.entries.tobytes())

    def __repr__(self):
        return f"AffineMap({self.entries.tolist()!r})"


def make_affine_map(entries) -> AffineMap:
    a = np.array(entries, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"affine map must be square, got shape {a.shape}")
    n = a.shape[0]
    if n < MIN_DIM:
        raise DimensionTooSmall(f"dimension must be at least {MIN_DIM}, got {n}")
    if n > MAX_DIM:
        raise DimensionTooLarge(f"dimension at most {MAX_DIM} is supported, got {n}")
    if not np.all(np.isfinite(a)):
        raise ValueError("affine map entries must be finite")
    inverse, det = gauss_jordan_inverse(a, singular_tol=SINGULAR_TOL)
    orthogonal = bool(np.max(np.abs(a @ a.T - np.eye(n))) < ORTHOGONAL_TOL)
    return AffineMap(_frozen(a), _frozen(inverse), det, orthogonal)


def identity_map(n) -> AffineMap:
    return make_affine_map(np.eye(n))


@dataclass(frozen=True)
class EvalPoint:
    coords: tuple

    def __post_init__(self):
        coords = tuple(float(c) for c in np.ravel(self.coords))
        if not all(math.isfinite(c) for c in coords):
            raise ValueError(f"evaluation point must be finite, got {coords}")
        object.__setattr__(self, "coords", coords)

    @property
    def n(self):
        return len(self.coords)

    def as_array(self):
        return np.array(self.coords)


def as_coords(x, n=None) -> np.ndarray:
    """Coerce an EvalPoint or array-like to a 1-D float vector, checking its length."""
    arr = x.as_array() if isinstance(x, EvalPoint) else np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise DimensionMismatch(f"expected a vector, got shape {arr.shape}")
    if n is not None and arr.shape[0] != n:
        raise DimensionMismatch(f"expected {n} coordinates, got {arr.shape[0]}")
    return arr


def pullback_coords(amap: AffineMap, x) -> np.ndarray:
    """y_i = sum_j a_ij x_j."""
    return amap.entries @ as_coords(x, amap.n)


def inverse_map(amap: AffineMap, y) -> np.ndarray:
    return amap.inverse @ as_coords(y, amap.n)


@dataclass(frozen=True)
class HypersurfaceSpec:
    """Graph z(x) = sum_i f_i(y_i), y = A x, in the chosen ambient space."""

    map: AffineMap
    profiles: tuple
    ambient: Ambient = Ambient.EUCLIDEAN
    n: int = field(init=False)

    def __post_init__(self):
        profiles = tuple(self.profiles)
        if len(profiles) != self.map.n:
            raise DimensionMismatch(
                f"{self.map.n}x{self.map.n} map needs {self.map.n} profiles, got {len(profiles)}"
            )
        for p in profiles:
            if not isinstance(p, GeneratingFunction):
                raise TypeError(f"profiles must be GeneratingFunction instances, got {p!r}")
        object.__setattr__(self, "profiles", profiles)
        object.__setattr__(self, "ambient", Ambient(self.ambient))
        object.__setattr__(self, "n", self.map.n)

    @property
    def is_standard(self) -> bool:
        """True when A is orthogonal, i.e. an ordinary translation hypersurface."""
        return self.map.is_orthogonal

    def with_ambient(self, ambient) -> "HypersurfaceSpec":
        return HypersurfaceSpec(self.map, self.profiles, Ambient(ambient))


def points_array(spec: HypersurfaceSpec, xs) -> np.ndarray:
    """Coerce a batch of base points to shape (m, n)."""
    xs = np.asarray(xs, dtype=float)
    if xs.ndim == 1:
        xs = xs[None, :]
    if xs.ndim != 2 or xs.shape[1] != spec.n:
        raise DimensionMismatch(f"expected points of shape (m, {spec.n}), got {xs.shape}")
    return xs


def affine_coords(spec: HypersurfaceSpec, xs) -> np.ndarray:
    """Batch pullback: rows of ``xs`` mapped to affine parameter coordinates."""
    return points_array(spec, xs) @ spec.map.entries.T


def profile_values(spec: HypersurfaceSpec, ys, order) -> np.ndarray:
    """Array of f_i^(order)(y_i), same shape as ``ys`` (m, n)."""
    out = np.empty_like(ys)
    for i, prof in enumerate(spec.profiles):
        out[:, i] = prof.derivative(ys[:, i], order)
    return out


def singularity_distances(spec: HypersurfaceSpec, ys) -> np.ndarray:
    """Per-point distance, in the profile variables, to the nearest profile singularity."""
    dist = np.full(ys.shape[0], np.inf)
    for i, prof in enumerate(spec.profiles):
        dist = np.minimum(dist, prof.singularity_distance(ys[:, i]))
    return dist


def height_batch(spec: HypersurfaceSpec, xs) -> np.ndarray:
    ys = affine_coords(spec, xs)
    return np.sum(profile_values(spec, ys, 0), axis=1)


def eval_height(spec: HypersurfaceSpec, x) -> float:
    """z(x) = sum_i f_i(y_i) with y = A x."""
    y = pullback_coords(spec.map, x)
    return float(math.fsum(prof(y[i]) for i, prof in enumerate(spec.profiles)))
