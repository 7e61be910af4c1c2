"""Affine translation hypersurfaces in Euclidean and isotropic space.

Graphs z(x) = f_1(y_1) + ... + f_n(y_n) over affine parameter coordinates
y = A x, with closed-form profiles, exact curvature evaluation, closed-form
constructors for the classified families and finite-difference oracles.
"""

from .constructors import (
    EigenSolutionParams,
    construct_cimc,
    construct_crc,
    construct_cylinder,
    construct_eigen,
    verify_eigen_condition,
)
from .calculus import (
    HessianPair,
    det_hessian_identity,
    fd_gradient,
    fd_hessian,
    fd_laplacian,
    hessian_at,
)
from .errors import *  # noqa: F401,F403
from .euclidean import check_constant_gk, detect_cylinder, gauss_kronecker
from .isotropic import (
    CoordinateCircle,
    Line,
    check_constant,
    curve_curvatures,
    isotropic_mean,
    isotropic_norm,
    principal_spectrum,
    relative_curvature,
)
from .model import (
    AffineMap,
    Ambient,
    EvalPoint,
    HypersurfaceSpec,
    eval_height,
    identity_map,
    inverse_map,
    make_affine_map,
    pullback_coords,
)
from .profiles import ExpPair, Linear, LogCos, Polynomial, Quadratic, TrigPair
from .reports import CurvatureReport, GridSpec, Quantity, Tolerances, Verdict
from .verification import Theorem, fuzz_suite, scan, theorem_verdict

__version__ = "0.1.0"
