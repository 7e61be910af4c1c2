"""Small dense linear algebra kernels (n <= 8).

Hand-rolled on purpose: the determinants, inverses and eigenvalues feeding the
curvature formulas come from these routines, while the tests check them
against numpy.linalg as an independent reference.
"""

import numpy as np

from .errors import ConvergenceError, SingularMatrix

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 30


def _square(m):
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def lu_det(m):
    """Determinant by Gaussian elimination with partial pivoting."""
    a = _square(m)
    n = a.shape[0]
    det = 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if a[p, k] == 0.0:
            return 0.0
        if p != k:
            a[[k, p]] = a[[p, k]]
            det = -det
        det *= a[k, k]
        if k + 1 < n:
            factors = a[k + 1 :, k] / a[k, k]
            a[k + 1 :, k:] -= np.outer(factors, a[k, k:])
    return float(det)


def gauss_jordan_inverse(m, singular_tol=1e-12):
    """Inverse and determinant of ``m`` by Gauss-Jordan elimination with partial pivoting.

    Raises SingularMatrix when ``|det| <= singular_tol``.
    """
    a = _square(m)
    n = a.shape[0]
    aug = np.hstack([a, np.eye(n)])
    det = 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(aug[k:, k])))
        pivot = aug[p, k]
        if pivot == 0.0:
            raise SingularMatrix("matrix is singular")
        if p != k:
            aug[[k, p]] = aug[[p, k]]
            det = -det
        det *= pivot
        aug[k] /= pivot
        others = np.arange(n) != k
        aug[others] -= np.outer(aug[others, k], aug[k])
    if abs(det) <= singular_tol:
        raise SingularMatrix(f"|det| = {abs(det):.3g} is below {singular_tol:g}")
    return aug[:, n:], float(det)


def _off_diagonal_norm(a):
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off * off)))


def jacobi_eigh(m, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(eigenvalues, Q)`` with eigenvalues sorted descending (stable for
    ties) and the columns of Q the matching orthonormal eigenvectors, so that
    ``Q @ diag(eigenvalues) @ Q.T`` reproduces ``m``. Sweeps stop once the
    off-diagonal Frobenius norm drops below ``tol * (1 + ||m||_F)``.
    """
    a = _square(m)
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    q = np.eye(n)
    threshold = tol * (1.0 + np.linalg.norm(a))

    for _ in range(max_sweeps):
        if _off_diagonal_norm(a) < threshold:
            break
        for p in range(n - 1):
            for r in range(p + 1, n):
                apr = a[p, r]
                if apr == 0.0:
                    continue
                diff = a[r, r] - a[p, p]
                if abs(diff) > 1e150 * abs(apr):
                    # theta huge: t ~ 1 / (2 theta) without forming theta
                    t = apr / diff
                else:
                    theta = diff / (2.0 * apr)
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # A <- J^T A J with J the (p, r) plane rotation [[c, s], [-s, c]]
                ap = a[:, p].copy()
                ar = a[:, r].copy()
                a[:, p] = c * ap - s * ar
                a[:, r] = s * ap + c * ar
                ap = a[p, :].copy()
                ar = a[r, :].copy()
                a[p, :] = c * ap - s * ar
                a[r, :] = s * ap + c * ar
                a[p, r] = a[r, p] = 0.0
                qp = q[:, p].copy()
                qr = q[:, r].copy()
                q[:, p] = c * qp - s * qr
                q[:, r] = s * qp + c * qr
    else:
        if _off_diagonal_norm(a) >= threshold:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")

    values = np.diag(a).copy()
    order = np.argsort(-values, kind="stable")
    return values[order], q[:, order]


def elementary_symmetric(values):
    """Coefficients e_0..e_n of prod_j (t + x_j), i.e. the elementary symmetric polynomials."""
    e = [1.0]
    for x in values:
        e = [1.0] + [e[k] + x * e[k - 1] for k in range(1, len(e))] + [x * e[-1]]
    return e
