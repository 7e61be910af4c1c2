import numpy as np
import pytest

from affine_hypersurfaces import (
    AmbientMismatch,
    Ambient,
    GridSpec,
    HypersurfaceSpec,
    Linear,
    LogCos,
    Quadratic,
    Verdict,
    check_constant_gk,
    detect_cylinder,
    eval_height,
    gauss_kronecker,
    identity_map,
    make_affine_map,
)
from affine_hypersurfaces.euclidean import gauss_kronecker_batch, ruling_line


def half_squares():
    return HypersurfaceSpec(identity_map(2), [Quadratic(0.5), Quadratic(0.5)])


def test_gauss_kronecker_examples():
    at_origin = gauss_kronecker(half_squares(), (0.0, 0.0))
    assert at_origin.k == 1.0 and at_origin.w == 1.0
    off = gauss_kronecker(half_squares(), (1.0, 0.0))
    assert off.k == pytest.approx(0.25, rel=1e-15)
    assert off.k_generic == pytest.approx(0.25, rel=1e-15)
    assert off.w == 2.0


def test_gauss_kronecker_vanishes_on_cylinders(rng):
    spec = HypersurfaceSpec(make_affine_map([[1, 2, 0], [0, 1, 1], [1, 0, 3]]),
                            [Quadratic(1.0), Linear(2.0, 1.0), LogCos(0.4)])
    xs = rng.uniform(-1, 1, (50, 3))
    assert np.all(gauss_kronecker_batch(spec, xs) == 0.0)


def test_batch_matches_pointwise(rng, shear):
    spec = HypersurfaceSpec(shear, [Quadratic(1.0, 0.3), LogCos(0.5)])
    xs = rng.uniform(-1, 1, (30, 2))
    batch = gauss_kronecker_batch(spec, xs)
    single = [gauss_kronecker(spec, x) for x in xs]
    np.testing.assert_allclose(batch, [v.k for v in single], rtol=1e-13)
    np.testing.assert_allclose(batch, [v.k_generic for v in single], rtol=1e-10)


def test_requires_euclidean_ambient():
    with pytest.raises(AmbientMismatch):
        gauss_kronecker(half_squares().with_ambient(Ambient.ISOTROPIC), (0.0, 0.0))


def test_detect_cylinder():
    amap = make_affine_map([[2.0, 1.0], [1.0, 3.0]])
    cyl = detect_cylinder(HypersurfaceSpec(amap, [Linear(0.7, 1.0), Quadratic(1.0)]))
    inv = amap.inverse
    assert cyl.index == 0
    assert cyl.ruling == pytest.approx((inv[0, 0], inv[1, 0], 0.7))
    assert detect_cylinder(HypersurfaceSpec(amap, [Quadratic(1.0), Quadratic(2.0)])) is None
    assert detect_cylinder(HypersurfaceSpec(amap, [Linear(1.0), Linear(2.0)])).index == 0


def test_rulings_lie_on_the_surface(rng):
    amap = make_affine_map([[2.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 1.0]])
    spec = HypersurfaceSpec(amap, [Quadratic(1.0), LogCos(0.3), Linear(-1.5, 0.2)])
    cyl = detect_cylinder(spec)
    assert cyl.index == 2
    x = np.array([0.1, -0.2, 0.3])
    for t in rng.uniform(-1, 1, 5):
        p = ruling_line(spec, cyl, x, t)
        assert p[-1] == pytest.approx(eval_height(spec, p[:-1]), abs=1e-12)


def test_check_constant_gk_examples(shear):
    cyl = HypersurfaceSpec(shear, [Linear(1.0), Quadratic(1.0)])
    report = check_constant_gk(cyl)
    assert report.is_constant and report.mean == 0.0
    assert report.verdict is Verdict.CONFIRMS

    report = check_constant_gk(HypersurfaceSpec(shear, [Quadratic(1.0), Quadratic(1.0)]))
    assert not report.is_constant and report.min < report.max
    assert report.verdict is Verdict.NOT_APPLICABLE

    plane = check_constant_gk(HypersurfaceSpec(shear, [Linear(1.0), Linear(2.0)]))
    assert plane.is_constant and plane.mean == 0.0 and plane.max == 0.0


def test_check_constant_gk_grid(shear):
    grid = GridSpec((-0.5, -0.5), (0.5, 0.5), 5)
    report = check_constant_gk(HypersurfaceSpec(shear, [Linear(1.0), Quadratic(1.0)]), grid)
    assert report.samples == 25
