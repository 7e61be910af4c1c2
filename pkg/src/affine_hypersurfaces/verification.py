"""Grid scans, theorem verdicts and the randomized self-check.

A verdict first checks whether the theorem's hypothesis holds on the grid
(for instance: is the curvature constant?). If it does not, the verdict is
NotApplicable. If it does, the theorem's conclusion is checked against the
structure of the spec, and a mismatch is reported as ViolatesTheorem. The
theorems admit no counterexamples, so ViolatesTheorem always means a bug.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .calculus import det_hessian_identity, fd_gradient, fd_hessian, fd_laplacian, hessian_at
from .constructors import (
    EigenSolutionParams,
    construct_cimc,
    construct_crc,
    construct_eigen,
    eigen_rates,
    verify_eigen_condition,
)
from .errors import AmbientMismatch, EmptyGrid, HypersurfaceError
from .euclidean import detect_cylinder, gauss_kronecker_batch
from .isotropic import (
    curvature_functions,
    isotropic_mean,
    isotropic_mean_batch,
    principal_spectrum,
    relative_curvature,
    relative_curvature_batch,
)
from .linalg import jacobi_eigh
from .model import (
    Ambient,
    HypersurfaceSpec,
    affine_coords,
    make_affine_map,
    singularity_distances,
)
from .profiles import ExpPair, LogCos, Polynomial, Quadratic, TrigPair
from .reports import (
    GridSpec,
    Quantity,
    Tolerances,
    Verdict,
    default_tolerances,
    summarize,
)


class Theorem(str, enum.Enum):
    T1_1 = "1.1"
    T4_1 = "4.1"
    T4_2 = "4.2"
    T4_3 = "4.3"


DEFAULT_POINTS_PER_AXIS = 21


def default_grid(n, exclusion_radius=0.0) -> GridSpec:
    return GridSpec.cube(n, -1.0, 1.0, DEFAULT_POINTS_PER_AXIS, exclusion_radius)


def sample_grid(spec: HypersurfaceSpec, grid: GridSpec):
    """Kept grid points and the number skipped by the exclusion radius."""
    pts, keep = grid.sample(spec)
    if not np.any(keep):
        raise EmptyGrid("every grid point was excluded")
    return pts[keep], int(np.count_nonzero(~keep))


def _pointwise(fn):
    def batch(spec, xs):
        return np.array([fn(spec, x) for x in xs])

    return batch


def _principal_batch(index):
    return _pointwise(lambda spec, x: jacobi_eigh(hessian_at(spec, x).hess_x)[0][index - 1])


def _curvature_function_batch(index):
    def k_i(spec, x):
        return curvature_functions(jacobi_eigh(hessian_at(spec, x).hess_x)[0])[index - 1]

    return _pointwise(k_i)


_AMBIENT_OF = {
    Quantity.GAUSS_KRONECKER: Ambient.EUCLIDEAN,
    Quantity.RELATIVE_CURVATURE: Ambient.ISOTROPIC,
    Quantity.ISOTROPIC_MEAN: Ambient.ISOTROPIC,
}


def evaluator(quantity, n, index=1):
    """Batch evaluator ``f(spec, xs) -> values`` for a scalar quantity."""
    quantity = Quantity(quantity)
    if quantity in (Quantity.PRINCIPAL, Quantity.CURVATURE_FUNCTION) and not 1 <= index <= n:
        raise ValueError(f"index must be in 1..{n}, got {index}")
    return {
        Quantity.GAUSS_KRONECKER: gauss_kronecker_batch,
        Quantity.RELATIVE_CURVATURE: relative_curvature_batch,
        Quantity.ISOTROPIC_MEAN: isotropic_mean_batch,
        Quantity.PRINCIPAL: _principal_batch(index),
        Quantity.CURVATURE_FUNCTION: _curvature_function_batch(index),
    }[quantity]


def scan(spec, quantity, grid=None, index=1, workers=1, tolerances=None):
    """Evaluate ``quantity`` on every kept grid point and summarise.

    With ``workers > 1`` the points are split into contiguous chunks evaluated
    in a thread pool and re-joined in order, so the report is identical to a
    sequential scan.
    """
    quantity = Quantity(quantity)
    required = _AMBIENT_OF.get(quantity)
    if required is not None and spec.ambient is not required:
        raise AmbientMismatch(f"{quantity.value} needs a {required.value} ambient space")
    tol = tolerances or default_tolerances()
    grid = grid or default_grid(spec.n)
    xs, skipped = sample_grid(spec, grid)
    fn = evaluator(quantity, spec.n, index)
    if workers > 1 and xs.shape[0] > workers:
        chunks = np.array_split(xs, workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = np.concatenate(list(pool.map(lambda c: fn(spec, c), chunks)))
    else:
        values = fn(spec, xs)
    name = quantity.value
    if quantity in (Quantity.PRINCIPAL, Quantity.CURVATURE_FUNCTION):
        name = f"{name}_{index}"
    return summarize(name, values, skipped, tol.constancy, points=xs)


# -- theorem verdicts ----------------------------------------------------------


def _close(a, b, rel):
    return abs(a - b) <= rel * (1.0 + abs(b))


def _verdict_t1_1(spec, grid, tol):
    report = scan(spec, Quantity.GAUSS_KRONECKER, grid, tolerances=tol)
    cyl = detect_cylinder(spec)
    details = {"theorem": Theorem.T1_1.value, "cylinder_index": None if cyl is None else cyl.index}
    if not report.is_constant:
        return report.with_verdict(Verdict.NOT_APPLICABLE, **details)
    if abs(report.mean) <= tol.constancy and cyl is not None:
        return report.with_verdict(Verdict.CONFIRMS, **details)
    return report.with_verdict(Verdict.VIOLATES, **details)


def _verdict_t4_1(spec, grid, tol):
    report = scan(spec, Quantity.RELATIVE_CURVATURE, grid, tolerances=tol)
    details = {"theorem": Theorem.T4_1.value}
    if not report.is_constant:
        return report.with_verdict(Verdict.NOT_APPLICABLE, **details)
    k0 = report.mean
    if abs(k0) <= tol.constancy:
        cyl = detect_cylinder(spec)
        details["cylinder_index"] = None if cyl is None else cyl.index
        ok = cyl is not None
        return report.with_verdict(Verdict.CONFIRMS if ok else Verdict.VIOLATES, **details)
    coeffs = [p.quadratic_coefficient() for p in spec.profiles]
    if any(c is None for c in coeffs):
        return report.with_verdict(Verdict.VIOLATES, **details)
    product = math.prod(coeffs)
    expected = k0 / (2**spec.n * spec.map.det**2)
    details.update(coefficient_product=product, expected_product=expected)
    ok = _close(product, expected, tol.crc_rel)
    return report.with_verdict(Verdict.CONFIRMS if ok else Verdict.VIOLATES, **details)


def cimc_coefficients(spec):
    """The c_i with f_i = (c_i / 2) / |row_i|^2 y_i^2 + ..., or None for other profiles."""
    norms = spec.map.row_norms_sq
    out = []
    for i, prof in enumerate(spec.profiles):
        if prof.is_linear:
            out.append(0.0)
            continue
        q = prof.quadratic_coefficient()
        out.append(None if q is None else 2.0 * q * float(norms[i]))
    return out


def _verdict_t4_2(spec, grid, tol):
    report = scan(spec, Quantity.ISOTROPIC_MEAN, grid, tolerances=tol)
    details = {"theorem": Theorem.T4_2.value}
    if not report.is_constant:
        return report.with_verdict(Verdict.NOT_APPLICABLE, **details)
    h0 = report.mean
    coeffs = cimc_coefficients(spec)
    if any(c is None for c in coeffs):
        return report.with_verdict(Verdict.VIOLATES, **details)
    total = math.fsum(coeffs)
    details.update(
        coefficients=coeffs,
        coefficient_sum=total,
        isotropic_minimal=abs(h0) <= tol.cimc,
    )
    ok = _close(total, spec.n * h0, tol.theorem_rate)
    return report.with_verdict(Verdict.CONFIRMS if ok else Verdict.VIOLATES, **details)


def _verdict_t4_3(spec, grid, tol, lam):
    if lam is None:
        raise ValueError("the eigenfunction check needs an eigenvalue lambda")
    report = verify_eigen_condition(spec, lam, grid, tolerances=tol)
    d = report.details
    details = {"theorem": Theorem.T4_3.value}
    holds = d["max_residual"] <= tol.eigen_residual * (1.0 + d["max_abs_height"])
    if lam == 0 or not holds:
        return report.with_verdict(Verdict.NOT_APPLICABLE, **details)
    if abs(lam) * d["max_abs_height"] <= tol.eigen_residual:
        # z vanishes on the grid, so Delta z = 0 too: isotropic minimal, hypothesis unmet
        return report.with_verdict(Verdict.NOT_APPLICABLE, **details)
    rates = eigen_rates(spec.map, lam)
    kind = ExpPair if lam > 0 else TrigPair
    ok = True
    for prof, rate in zip(spec.profiles, rates):
        if prof.is_linear:
            ok &= prof.linear_part()[0] == 0.0
        else:
            ok &= isinstance(prof, kind) and _close(prof.a, float(rate), tol.theorem_rate)
    details["expected_rates"] = [float(r) for r in rates]
    return report.with_verdict(Verdict.CONFIRMS if ok else Verdict.VIOLATES, **details)


def theorem_verdict(spec, theorem, grid=None, lam=None, tolerances=None):
    """Check one classification theorem on ``spec`` over ``grid``."""
    theorem = Theorem(theorem)
    tol = tolerances or default_tolerances()
    grid = grid or default_grid(spec.n)
    if theorem is Theorem.T1_1:
        return _verdict_t1_1(spec, grid, tol)
    if spec.ambient is not Ambient.ISOTROPIC:
        raise AmbientMismatch(f"theorem {theorem.value} concerns isotropic space")
    if theorem is Theorem.T4_1:
        return _verdict_t4_1(spec, grid, tol)
    if theorem is Theorem.T4_2:
        return _verdict_t4_2(spec, grid, tol)
    return _verdict_t4_3(spec, grid, tol, lam)


# -- random corpus -------------------------------------------------------------


def random_affine_map(rng, n, lo=-2.0, hi=2.0, min_abs_det=0.1, non_orthogonal=True):
    """Uniform entries in [lo, hi], rejecting |det| < min_abs_det (and orthogonal draws)."""
    while True:
        a = rng.uniform(lo, hi, size=(n, n))
        if abs(np.linalg.det(a)) < min_abs_det:
            continue
        amap = make_affine_map(a)
        if non_orthogonal and amap.is_orthogonal:
            continue
        return amap


def _nonzero(rng, lo, hi):
    return float(rng.choice([-1.0, 1.0]) * rng.uniform(lo, hi))


NONLINEAR_KINDS = ("quadratic", "polynomial", "exp_pair", "trig_pair", "log_cos")


def random_profile(rng, kinds=NONLINEAR_KINDS):
    """A random non-linear profile with moderate coefficients."""
    kind = kinds[int(rng.integers(len(kinds)))]
    if kind == "quadratic":
        return Quadratic(_nonzero(rng, 0.2, 1.5), rng.uniform(-1, 1), rng.uniform(-1, 1))
    if kind == "polynomial":
        degree = int(rng.integers(2, 5))
        coeffs = list(rng.uniform(-1, 1, size=degree)) + [_nonzero(rng, 0.2, 1.0)]
        return Polynomial(tuple(coeffs))
    if kind == "exp_pair":
        return ExpPair(_nonzero(rng, 0.2, 1.0), rng.uniform(-1, 1), rng.uniform(0.3, 1.0), rng.uniform(-1, 1))
    if kind == "trig_pair":
        return TrigPair(_nonzero(rng, 0.2, 1.0), rng.uniform(-1, 1), rng.uniform(0.5, 1.5), rng.uniform(-1, 1))
    if kind == "log_cos":
        return LogCos(_nonzero(rng, 0.2, 0.6))
    raise ValueError(f"unknown profile kind {kind!r}")


def random_spec(rng, n, ambient=Ambient.EUCLIDEAN, kinds=NONLINEAR_KINDS) -> HypersurfaceSpec:
    amap = random_affine_map(rng, n)
    return HypersurfaceSpec(amap, [random_profile(rng, kinds) for _ in range(n)], ambient)


def random_points(rng, spec, count, box=1.0, min_distance=0.01):
    """``count`` uniform points in [-box, box]^n at least ``min_distance`` from singularities."""
    out = []
    while len(out) < count:
        x = rng.uniform(-box, box, size=spec.n)
        ys = affine_coords(spec, x)
        if singularity_distances(spec, ys)[0] >= min_distance:
            out.append(x)
    return np.array(out)


def hessian_scale(hess):
    return 1.0 + float(np.max(np.abs(hess)))


def relative_error(approx, exact):
    """max |approx - exact| / (1 + max |exact|), entrywise."""
    approx = np.asarray(approx, dtype=float)
    exact = np.asarray(exact, dtype=float)
    return float(np.max(np.abs(approx - exact)) / (1.0 + np.max(np.abs(exact))))


# -- fuzzing -------------------------------------------------------------------


@dataclass(frozen=True)
class FuzzSummary:
    seed: int
    trials: int
    checks: int
    failures: tuple = field(default_factory=tuple)

    @property
    def ok(self):
        return not self.failures


def point_checks(spec, x, tol: Tolerances):
    """Per-point identities; returns a list of failure messages."""
    failures = []
    lhs, rhs = det_hessian_identity(spec, x)
    if abs(lhs - rhs) > tol.det_identity * (1.0 + abs(lhs)):
        failures.append(f"det identity: {lhs!r} vs {rhs!r}")
    pair = hessian_at(spec, x)
    if relative_error(fd_gradient(spec, x), pair.grad_x) > tol.gradient_rel:
        failures.append("gradient vs finite differences")
    if relative_error(fd_hessian(spec, x), pair.hess_x) > tol.hessian_rel:
        failures.append("hessian vs finite differences")
    lap = float(np.trace(pair.hess_x))
    if abs(fd_laplacian(spec, x) - lap) > tol.laplacian_rel * (1.0 + abs(lap)):
        failures.append("laplacian vs finite differences")
    iso = spec.with_ambient(Ambient.ISOTROPIC)
    spectrum = principal_spectrum(iso, x)
    h = isotropic_mean(iso, x)
    k = relative_curvature(iso, x)
    if abs(spectrum.mean - h) > tol.spectrum_rel * max(1.0, abs(h), hessian_scale(pair.hess_x)):
        failures.append("K_1 vs isotropic mean")
    k_scale = max(1.0, abs(k), hessian_scale(pair.hess_x) ** spec.n)
    if abs(spectrum.relative - k) > tol.spectrum_rel * k_scale:
        failures.append("K_n vs relative curvature")
    return failures


def fuzz_suite(seed, trials, tolerances=None, points_per_trial=3, grid_points=7) -> FuzzSummary:
    """Random specs checked against every identity and theorem verdict.

    Deterministic in ``seed``. Failures are collected, not raised.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    tol = tolerances or default_tolerances()
    rng = np.random.default_rng(seed)
    failures = []
    checks = 0

    def record(trial, label, problems):
        nonlocal checks
        checks += 1
        failures.extend(f"trial {trial}: {label}: {p}" for p in problems)

    for trial in range(trials):
        n = int(rng.integers(2, 5))
        spec = random_spec(rng, n)
        grid = GridSpec.cube(n, points_per_axis=grid_points, exclusion_radius=0.01)
        for x in random_points(rng, spec, points_per_trial):
            try:
                record(trial, "point", point_checks(spec, x, tol))
            except HypersurfaceError as exc:
                record(trial, "point", [repr(exc)])

        iso = spec.with_ambient(Ambient.ISOTROPIC)
        verdicts = [
            ("T1.1", lambda: theorem_verdict(spec, Theorem.T1_1, grid, tolerances=tol), None),
            ("T4.1", lambda: theorem_verdict(iso, Theorem.T4_1, grid, tolerances=tol), None),
            ("T4.2", lambda: theorem_verdict(iso, Theorem.T4_2, grid, tolerances=tol), None),
        ]
        amap = spec.map
        k0 = _nonzero(rng, 0.5, 4.0)
        c_partial = [_nonzero(rng, 0.3, 2.0) for _ in range(n - 1)]
        crc = construct_crc(amap, k0, c_partial)
        c = list(rng.uniform(-2, 2, size=n))
        h0 = math.fsum(c) / n
        cimc = construct_cimc(amap, h0, c)
        lam = _nonzero(rng, 0.5, 3.0)
        mu = list(rng.uniform(-1, 1, size=n - 1))
        mu.append(-math.fsum(mu))
        eigen = construct_eigen(
            amap, EigenSolutionParams(lam, rng.uniform(-1, 1, n), rng.uniform(-1, 1, n), mu)
        )
        verdicts += [
            ("T4.1 constructed", lambda: theorem_verdict(crc, Theorem.T4_1, grid, tolerances=tol), Verdict.CONFIRMS),
            ("T4.2 constructed", lambda: theorem_verdict(cimc, Theorem.T4_2, grid, tolerances=tol), Verdict.CONFIRMS),
            ("T4.3 constructed", lambda: theorem_verdict(eigen, Theorem.T4_3, grid, lam, tolerances=tol), Verdict.CONFIRMS),
        ]
        for label, run, expected in verdicts:
            try:
                verdict = run().verdict
            except HypersurfaceError as exc:
                record(trial, label, [repr(exc)])
                continue
            problems = []
            if verdict is Verdict.VIOLATES:
                problems.append("ViolatesTheorem")
            elif expected is not None and verdict is not expected:
                problems.append(f"expected {expected.value}, got {verdict.value}")
            record(trial, label, problems)

    return FuzzSummary(seed=seed, trials=trials, checks=checks, failures=tuple(failures))
