"""Grids, tolerances and curvature reports shared by the scanning code."""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass, field, fields, replace

import numpy as np

from .errors import DimensionMismatch, EmptyGrid
from .model import HypersurfaceSpec, affine_coords, singularity_distances

MAX_GRID_POINTS = 10**7
TOLERANCE_SCALE_ENV = "AHK_TOLERANCE_SCALE"


@dataclass(frozen=True)
class Tolerances:
    """Every numerical threshold used by verification, in one place."""

    constancy: float = 1e-8
    det_identity: float = 1e-9
    gradient_rel: float = 1e-6
    hessian_rel: float = 1e-4
    laplacian_rel: float = 1e-4
    generic_rel: float = 1e-10
    crc_rel: float = 1e-9
    coefficient: float = 1e-12
    cimc: float = 1e-10
    eigen_residual: float = 1e-9
    ode_residual: float = 1e-10
    theorem_rate: float = 1e-9
    spectrum_rel: float = 1e-10
    symmetric_poly: float = 1e-12
    reassembly: float = 1e-10
    cylinder_abs: float = 1e-14
    normal_curvature: float = 1e-12

    def scaled(self, factor: float) -> "Tolerances":
        return replace(self, **{f.name: getattr(self, f.name) * factor for f in fields(self)})


def default_tolerances() -> Tolerances:
    """Tolerances multiplied by ``$AHK_TOLERANCE_SCALE`` (default 1)."""
    raw = os.environ.get(TOLERANCE_SCALE_ENV, "").strip()
    if not raw:
        return Tolerances()
    factor = float(raw)
    if not factor > 0:
        raise ValueError(f"{TOLERANCE_SCALE_ENV} must be positive, got {raw!r}")
    return Tolerances().scaled(factor)


class Quantity(str, enum.Enum):
    GAUSS_KRONECKER = "gauss_kronecker"
    RELATIVE_CURVATURE = "relative_curvature"
    ISOTROPIC_MEAN = "isotropic_mean"
    PRINCIPAL = "principal"
    CURVATURE_FUNCTION = "curvature_function"
    EIGEN_RESIDUAL = "eigen_residual"


class Verdict(str, enum.Enum):
    CONFIRMS = "ConfirmsTheorem"
    VIOLATES = "ViolatesTheorem"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class GridSpec:
    """Tensor grid on the box [lo, hi] with ``points_per_axis`` samples per axis.

    Points whose affine coordinates lie within ``exclusion_radius`` (measured
    in the profile variable) of a profile singularity are skipped.
    """

    lo: tuple
    hi: tuple
    points_per_axis: int = 21
    exclusion_radius: float = 0.0

    def __post_init__(self):
        lo = tuple(float(v) for v in self.lo)
        hi = tuple(float(v) for v in self.hi)
        if len(lo) != len(hi):
            raise DimensionMismatch("grid bounds lo and hi have different lengths")
        if not all(a < b for a, b in zip(lo, hi)):
            raise ValueError(f"grid needs lo < hi on every axis, got {lo} .. {hi}")
        if self.points_per_axis < 2:
            raise ValueError("points_per_axis must be at least 2")
        if self.exclusion_radius < 0:
            raise ValueError("exclusion_radius must be non-negative")
        if self.points_per_axis ** len(lo) > MAX_GRID_POINTS:
            raise ValueError(f"grid would have more than {MAX_GRID_POINTS} points")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def cube(cls, n, lo=-1.0, hi=1.0, points_per_axis=21, exclusion_radius=0.0):
        return cls((lo,) * n, (hi,) * n, points_per_axis, exclusion_radius)

    @property
    def n(self):
        return len(self.lo)

    @property
    def total(self):
        return self.points_per_axis**self.n

    def axes(self):
        return [np.linspace(a, b, self.points_per_axis) for a, b in zip(self.lo, self.hi)]

    def all_points(self) -> np.ndarray:
        """All grid points, shape (total, n), last axis varying fastest."""
        mesh = np.meshgrid(*self.axes(), indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)

    def sample(self, spec: HypersurfaceSpec):
        """Return ``(points, keep_mask)`` for the spec, applying the exclusion radius."""
        if self.n != spec.n:
            raise DimensionMismatch(f"grid is {self.n}-dimensional, spec has n = {spec.n}")
        pts = self.all_points()
        if self.exclusion_radius > 0:
            keep = singularity_distances(spec, affine_coords(spec, pts)) >= self.exclusion_radius
        else:
            keep = np.ones(pts.shape[0], dtype=bool)
        return pts, keep


@dataclass(frozen=True, eq=False)
class CurvatureReport:
    quantity: str
    samples: int
    min: float
    max: float
    mean: float
    stddev: float
    is_constant: bool
    constant_value: float | None
    skipped: int
    verdict: Verdict = Verdict.NOT_APPLICABLE
    details: dict = field(default_factory=dict)
    points: np.ndarray | None = field(default=None, repr=False)
    values: np.ndarray | None = field(default=None, repr=False)

    def with_verdict(self, verdict, **details):
        return replace(self, verdict=Verdict(verdict), details={**self.details, **details})

    def to_dict(self):
        return {
            "quantity": self.quantity,
            "samples": self.samples,
            "min": self.min,
            "max": self.max,
            "mean": self.mean,
            "stddev": self.stddev,
            "is_constant": self.is_constant,
            "constant_value": self.constant_value,
            "skipped": self.skipped,
            "verdict": self.verdict.value,
        }


def summarize(quantity, values, skipped=0, tol=None, points=None) -> CurvatureReport:
    """Order-independent statistics of ``values`` (compensated summation)."""
    tol = default_tolerances().constancy if tol is None else tol
    values = np.asarray(values, dtype=float).ravel()
    if values.size == 0:
        raise EmptyGrid("no grid points left to evaluate")
    vmin = float(np.min(values))
    vmax = float(np.max(values))
    count = values.size
    mean = math.fsum(values.tolist()) / count
    var = math.fsum(((values - mean) ** 2).tolist()) / count
    is_constant = (vmax - vmin) <= tol * (1.0 + abs(mean))
    return CurvatureReport(
        quantity=quantity.value if isinstance(quantity, Quantity) else str(quantity),
        samples=int(count),
        min=vmin,
        max=vmax,
        mean=mean,
        stddev=math.sqrt(var),
        is_constant=bool(is_constant),
        constant_value=mean if is_constant else None,
        skipped=int(skipped),
        points=points,
        values=values,
    )
